#pragma once
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include "bulkedge/disorder.hpp"
#include "bulkedge/smallmat.hpp"

namespace bulkedge {

struct StructuralError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

using MultiIndex = std::vector<long>;

// Scalar magnetic twist: S_i S_j = exp(2 pi i p_ij / q) S_j S_i for i < j.
struct Cocycle {
    int d = 0;
    int q = 1;
    std::vector<std::vector<long>> p;  // p[i][j] used for i < j, 0-based

    static Cocycle trivial(int d);
    static Cocycle uniform(int d, long p, int q);  // same flux on every pair

    // theta(n, m) = zeta_q^{theta_exp(n, m)} with S^n S^m = theta(n, m) S^{n+m}.
    long theta_exp(const MultiIndex& n, const MultiIndex& m) const;
    // Phase exponent of pi(S_i) delta_x = zeta_q^{chi_exp} delta_{x + e_i}.
    long chi_exp(int i, const MultiIndex& x) const;
    bool is_trivial() const;
    bool is_real() const { return q <= 2; }
    double flux(int i, int j) const;
    friend bool operator==(const Cocycle&, const Cocycle&) = default;
};

struct AlgebraContext {
    int d = 0;
    int nu = 1;
    Cocycle cocycle;
    std::shared_ptr<const Orbits> omega;

    static std::shared_ptr<const AlgebraContext> make(int d, int nu, Cocycle c, std::shared_ptr<const Orbits> omega);
};
using ContextPtr = std::shared_ptr<const AlgebraContext>;

// Matrix-valued function on the points of Omega; a single entry means constant.
template <class S>
struct Coefficient {
    std::vector<Mat<S>> vals;

    static Coefficient constant(Mat<S> m) { return Coefficient{{std::move(m)}}; }
    bool is_constant() const { return vals.size() == 1; }
    const Mat<S>& at(std::size_t pt) const { return is_constant() ? vals[0] : vals.at(pt); }
    bool is_zero() const {
        for (const auto& m : vals)
            if (!m.is_zero()) return false;
        return true;
    }
};

template <class S>
Coefficient<S> coeff_binary(const Coefficient<S>& a, const Coefficient<S>& b, std::size_t npts, auto op) {
    if (a.is_constant() && b.is_constant()) return Coefficient<S>::constant(op(a.vals[0], b.vals[0]));
    Coefficient<S> r;
    r.vals.reserve(npts);
    for (std::size_t p = 0; p < npts; ++p) r.vals.push_back(op(a.at(p), b.at(p)));
    return r;
}

template <class S>
Coefficient<S> coeff_map(const Coefficient<S>& a, auto op) {
    Coefficient<S> r;
    r.vals.reserve(a.vals.size());
    for (const auto& m : a.vals) r.vals.push_back(op(m));
    return r;
}

// alpha^{-m}(g)(w) = g(shift(w, m)).
template <class S>
Coefficient<S> coeff_shift(const Coefficient<S>& a, const MultiIndex& m, const Orbits& omega) {
    if (a.is_constant()) return a;
    bool zero = true;
    for (long v : m) zero = zero && v == 0;
    if (zero) return a;
    Coefficient<S> r;
    r.vals.reserve(omega.n_points());
    for (std::size_t p = 0; p < omega.n_points(); ++p) r.vals.push_back(a.vals[omega.shift(p, m)]);
    return r;
}

template <class S>
bool coeff_equal(const Coefficient<S>& a, const Coefficient<S>& b, std::size_t npts) {
    if (a.is_constant() && b.is_constant()) return a.vals[0] == b.vals[0];
    for (std::size_t p = 0; p < npts; ++p)
        if (!(a.at(p) == b.at(p))) return false;
    return true;
}

inline MultiIndex unit_index(int d, int i, long k = 1) {
    MultiIndex n(d, 0);
    n.at(i) = k;
    return n;
}

// Finite sum  sum_n S^n b_n  in normal form (translations left, coefficients right).
template <class S>
class CrossedElement {
public:
    using Coeff = Coefficient<S>;
    using Terms = std::map<MultiIndex, Coeff>;

    CrossedElement() = default;
    explicit CrossedElement(ContextPtr ctx) : ctx_(std::move(ctx)) {}

    static CrossedElement zero(ContextPtr ctx) { return CrossedElement(std::move(ctx)); }
    static CrossedElement identity(ContextPtr ctx) {
        CrossedElement a(ctx);
        a.add_term(MultiIndex(ctx->d, 0), Coeff::constant(Mat<S>::identity(ctx->nu)));
        return a;
    }
    // S^n b
    static CrossedElement monomial(ContextPtr ctx, MultiIndex n, Coeff b) {
        CrossedElement a(ctx);
        a.add_term(std::move(n), std::move(b));
        return a;
    }
    static CrossedElement translation(ContextPtr ctx, MultiIndex n) {
        auto id = Coeff::constant(Mat<S>::identity(ctx->nu));
        return monomial(ctx, std::move(n), id);
    }
    static CrossedElement generator(ContextPtr ctx, int i, long k = 1) {
        return translation(ctx, unit_index(ctx->d, i, k));
    }

    const ContextPtr& context() const { return ctx_; }
    int d() const { return ctx_->d; }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    void add_term(MultiIndex n, const Coeff& c) {
        if (int(n.size()) != ctx_->d) throw StructuralError("multi-index length differs from d");
        if (c.is_zero()) return;
        auto it = terms_.find(n);
        if (it == terms_.end()) {
            terms_.emplace(std::move(n), c);
        } else {
            it->second = coeff_binary(it->second, c, npts(), [](const Mat<S>& x, const Mat<S>& y) { return x + y; });
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    CrossedElement& operator+=(const CrossedElement& o) {
        check(o);
        for (const auto& [n, c] : o.terms_) add_term(n, c);
        return *this;
    }
    CrossedElement& operator-=(const CrossedElement& o) { return *this += o.scaled(S(-1)); }
    friend CrossedElement operator+(CrossedElement a, const CrossedElement& b) { return a += b; }
    friend CrossedElement operator-(CrossedElement a, const CrossedElement& b) { return a -= b; }

    CrossedElement scaled(const S& s) const {
        CrossedElement r(ctx_);
        for (const auto& [n, c] : terms_) r.add_term(n, coeff_map(c, [&](const Mat<S>& m) { return m * s; }));
        return r;
    }

    friend CrossedElement operator*(const CrossedElement& a, const CrossedElement& b) {
        a.check(b);
        const auto& ctx = *a.ctx_;
        CrossedElement r(a.ctx_);
        for (const auto& [n, b1] : a.terms_)
            for (const auto& [m, b2] : b.terms_) {
                S th = ScalarTraits<S>::root(ctx.cocycle.q, ctx.cocycle.theta_exp(n, m));
                auto shifted = coeff_shift(b1, m, *ctx.omega);
                auto prod = coeff_binary(shifted, b2, a.npts(), [&](const Mat<S>& x, const Mat<S>& y) { return (x * y) * th; });
                MultiIndex nm(n.size());
                for (std::size_t j = 0; j < n.size(); ++j) nm[j] = n[j] + m[j];
                r.add_term(std::move(nm), prod);
            }
        return r;
    }

    // (S^n b)* = theta(n, -n)^{-1} S^{-n} alpha^{n}(b*)
    CrossedElement adjoint() const {
        const auto& ctx = *ctx_;
        CrossedElement r(ctx_);
        for (const auto& [n, b] : terms_) {
            MultiIndex neg(n.size());
            for (std::size_t j = 0; j < n.size(); ++j) neg[j] = -n[j];
            S th = ScalarTraits<S>::root(ctx.cocycle.q, -ctx.cocycle.theta_exp(n, neg));
            auto bs = coeff_map(b, [&](const Mat<S>& m) { return m.adjoint() * th; });
            r.add_term(neg, coeff_shift(bs, neg, *ctx.omega));
        }
        return r;
    }

    bool is_zero() const { return terms_.empty(); }
    friend bool operator==(const CrossedElement& a, const CrossedElement& b) {
        a.check(b);
        if (a.terms_.size() != b.terms_.size()) return false;
        for (const auto& [n, c] : a.terms_) {
            auto it = b.terms_.find(n);
            if (it == b.terms_.end() || !coeff_equal(c, it->second, a.npts())) return false;
        }
        return true;
    }

    bool is_self_adjoint() const { return *this == adjoint(); }

    // Largest |n_j| over the support.
    long hop_range() const {
        long r = 0;
        for (const auto& [n, c] : terms_)
            for (long v : n) r = std::max(r, std::abs(v));
        return r;
    }

    std::size_t npts() const { return ctx_->omega->n_points(); }

private:
    void check(const CrossedElement& o) const {
        if (!ctx_ || !o.ctx_) throw StructuralError("crossed element without context");
        if (ctx_ == o.ctx_) return;
        if (ctx_->d != o.ctx_->d || ctx_->nu != o.ctx_->nu) throw StructuralError("mismatched dimension or rank");
        if (!(ctx_->cocycle == o.ctx_->cocycle)) throw StructuralError("mismatched cocycle");
        if (ctx_->omega != o.ctx_->omega) throw StructuralError("mismatched configuration space");
    }

    ContextPtr ctx_;
    Terms terms_;
};

template <class S>
Coefficient<S> conditional_expectation(const CrossedElement<S>& a) {
    auto it = a.terms().find(MultiIndex(a.d(), 0));
    if (it == a.terms().end()) return Coefficient<S>::constant(Mat<S>(a.context()->nu, a.context()->nu));
    return it->second;
}

template <class S>
CrossedElement<S> position_commutator(int j, const CrossedElement<S>& a) {
    if (j < 1 || j > a.d()) throw std::out_of_range("position_commutator: axis out of range");
    CrossedElement<S> r(a.context());
    for (const auto& [n, c] : a.terms()) {
        S f = S(static_cast<long long>(n[j - 1]));
        r.add_term(n, coeff_map(c, [&](const Mat<S>& m) { return m * f; }));
    }
    return r;
}

// alpha_i^k(c) = S_i^k c S_i^{-k}
template <class S>
CrossedElement<S> alpha_power(int i, long k, const CrossedElement<S>& c) {
    auto ctx = c.context();
    return CrossedElement<S>::generator(ctx, i, k) * c * CrossedElement<S>::generator(ctx, i, -k);
}

// Entrywise complex conjugation of the coefficients; the complex conjugate of the
// represented operator when the cocycle is real.
template <class S>
CrossedElement<S> coefficient_conjugate(const CrossedElement<S>& a) {
    if (!a.context()->cocycle.is_real()) throw StructuralError("conjugation needs a real cocycle");
    CrossedElement<S> r(a.context());
    for (const auto& [n, c] : a.terms()) r.add_term(n, coeff_map(c, [](const Mat<S>& m) { return m.conj(); }));
    return r;
}

}  // namespace bulkedge
