#include "bulkedge/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace bulkedge {

namespace {

long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Cyclotomic: integer overflow");
    return r;
}

long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Cyclotomic: integer overflow");
    return r;
}

// Exact division of integer polynomials by a monic divisor (lowest degree first).
std::vector<long long> poly_div_exact(std::vector<long long> num, const std::vector<long long>& den) {
    int dn = int(num.size()) - 1, dd = int(den.size()) - 1;
    std::vector<long long> q(std::max(dn - dd + 1, 1), 0);
    for (int k = dn - dd; k >= 0; --k) {
        long long lead = num[k + dd];
        q[k] = lead;
        for (int j = 0; j <= dd; ++j) num[k + j] -= lead * den[j];
    }
    return q;
}

}  // namespace

const std::vector<long long>& cyclotomic_polynomial(int N) {
    static std::mutex mu;
    static std::map<int, std::vector<long long>> cache;
    if (N < 1) throw std::invalid_argument("cyclotomic_polynomial: N must be positive");
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(N);
        if (it != cache.end()) return it->second;
    }
    std::vector<long long> p(N + 1, 0);
    p[0] = -1;
    p[N] = 1;
    for (int d = 1; d < N; ++d)
        if (N % d == 0) p = poly_div_exact(p, cyclotomic_polynomial(d));
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(N, std::move(p)).first->second;
}

Cyclotomic Cyclotomic::from_poly(int N, std::vector<long long> poly) {
    const auto& phi = cyclotomic_polynomial(N);
    int deg = int(phi.size()) - 1;
    for (int k = int(poly.size()) - 1; k >= deg; --k) {
        long long lead = poly[k];
        if (lead == 0) continue;
        for (int j = 0; j <= deg; ++j)
            poly[k - deg + j] = checked_add(poly[k - deg + j], -checked_mul(lead, phi[j]));
    }
    poly.resize(deg, 0);
    return Cyclotomic(N, std::move(poly));
}

Cyclotomic Cyclotomic::root(int N, long long k) {
    if (N < 1) throw std::invalid_argument("Cyclotomic::root: N must be positive");
    long long r = ((k % N) + N) % N;
    std::vector<long long> poly(r + 1, 0);
    poly[r] = 1;
    return from_poly(N, std::move(poly));
}

Cyclotomic Cyclotomic::embed(int M) const {
    if (M == N_) return *this;
    int step = M / N_;
    std::vector<long long> poly(std::size_t(step) * c_.size(), 0);
    for (std::size_t k = 0; k < c_.size(); ++k) poly[k * step] = c_[k];
    return from_poly(M, std::move(poly));
}

bool Cyclotomic::is_zero() const {
    for (long long v : c_)
        if (v != 0) return false;
    return true;
}

Cyclotomic Cyclotomic::conj() const {
    std::vector<long long> poly(N_, 0);
    for (std::size_t k = 0; k < c_.size(); ++k) poly[(N_ - int(k)) % N_] += c_[k];
    return from_poly(N_, std::move(poly));
}

std::complex<double> Cyclotomic::to_complex() const {
    std::complex<double> z = 0.0;
    for (std::size_t k = 0; k < c_.size(); ++k) {
        double a = 2.0 * std::numbers::pi * double(k) / double(N_);
        z += double(c_[k]) * std::complex<double>(std::cos(a), std::sin(a));
    }
    return z;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    int M = std::lcm(N_, o.N_);
    Cyclotomic a = embed(M), b = o.embed(M);
    for (std::size_t k = 0; k < a.c_.size(); ++k) a.c_[k] = checked_add(a.c_[k], b.c_[k]);
    return *this = std::move(a);
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
    int M = std::lcm(N_, o.N_);
    Cyclotomic a = embed(M), b = o.embed(M);
    std::vector<long long> poly(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            poly[i + j] = checked_add(poly[i + j], checked_mul(a.c_[i], b.c_[j]));
    }
    return *this = from_poly(M, std::move(poly));
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    int M = std::lcm(a.N_, b.N_);
    return a.embed(M).c_ == b.embed(M).c_;
}

std::ostream& operator<<(std::ostream& os, const Cyclotomic& z) {
    os << "Z[zeta_" << z.order() << "](";
    for (std::size_t k = 0; k < z.coeffs().size(); ++k) os << (k ? "," : "") << z.coeffs()[k];
    return os << ")";
}

}  // namespace bulkedge
