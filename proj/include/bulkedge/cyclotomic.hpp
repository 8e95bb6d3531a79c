#pragma once
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace bulkedge {

// Exact element of Z[zeta_N], stored in the power basis 1, zeta, ..., zeta^{phi(N)-1}
// reduced modulo the N-th cyclotomic polynomial. N = 1 holds plain integers.
class Cyclotomic {
public:
    Cyclotomic() = default;
    Cyclotomic(long long v) : c_{v} {}

    static Cyclotomic root(int N, long long k);

    int order() const { return N_; }
    const std::vector<long long>& coeffs() const { return c_; }

    bool is_zero() const;
    Cyclotomic conj() const;
    std::complex<double> to_complex() const;

    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);
    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    Cyclotomic operator-() const;
    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

private:
    Cyclotomic(int N, std::vector<long long> c) : N_(N), c_(std::move(c)) {}
    Cyclotomic embed(int M) const;
    static Cyclotomic from_poly(int N, std::vector<long long> poly);

    int N_ = 1;
    std::vector<long long> c_{0};
};

std::ostream& operator<<(std::ostream& os, const Cyclotomic& z);

// Integer coefficients of the N-th cyclotomic polynomial, lowest degree first.
const std::vector<long long>& cyclotomic_polynomial(int N);

}  // namespace bulkedge
