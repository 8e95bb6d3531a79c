#pragma once
#include <cmath>
#include <complex>
#include <numbers>

#include "bulkedge/cyclotomic.hpp"

namespace bulkedge {

using cplx = std::complex<double>;

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<int> {
    static int conj(int v) { return v; }
    static bool is_zero(int v) { return v == 0; }
    static cplx to_complex(int v) { return cplx(v, 0.0); }
};

template <>
struct ScalarTraits<double> {
    static double conj(double v) { return v; }
    static bool is_zero(double v) { return v == 0.0; }
    static cplx to_complex(double v) { return cplx(v, 0.0); }
};

template <>
struct ScalarTraits<cplx> {
    static cplx conj(const cplx& v) { return std::conj(v); }
    static bool is_zero(const cplx& v) { return v == cplx(0.0, 0.0); }
    static cplx to_complex(const cplx& v) { return v; }
    static cplx root(int N, long long k) {
        if (N <= 1) return cplx(1.0, 0.0);
        long long r = ((k % N) + N) % N;
        if (r == 0) return cplx(1.0, 0.0);
        if (2 * r == N) return cplx(-1.0, 0.0);
        if (4 * r == N) return cplx(0.0, 1.0);
        if (4 * r == 3 * N) return cplx(0.0, -1.0);
        double a = 2.0 * std::numbers::pi * double(r) / double(N);
        return cplx(std::cos(a), std::sin(a));
    }
};

template <>
struct ScalarTraits<Cyclotomic> {
    static Cyclotomic conj(const Cyclotomic& v) { return v.conj(); }
    static bool is_zero(const Cyclotomic& v) { return v.is_zero(); }
    static cplx to_complex(const Cyclotomic& v) { return v.to_complex(); }
    static Cyclotomic root(int N, long long k) { return Cyclotomic::root(N, k); }
};

}  // namespace bulkedge
