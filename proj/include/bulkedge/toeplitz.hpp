#pragma once
#include <map>
#include <utility>
#include <vector>

#include "bulkedge/crossed.hpp"

namespace bulkedge {

// Word in the half-space isometry St (last axis) and p = 1 - St St*.
// Iso: St^k for k >= 0, St*^{-k} for k < 0.  Corner: St^a p St*^b.
struct Word {
    enum Kind { Iso = 0, Corner = 1 } kind = Iso;
    long a = 0, b = 0;

    static Word iso(long k) { return Word{Iso, k, 0}; }
    static Word corner(long a, long b) { return Word{Corner, a, b}; }
    long degree() const { return kind == Iso ? a : a - b; }
    Word adjoint() const { return kind == Iso ? iso(-a) : corner(b, a); }
    friend auto operator<=>(const Word&, const Word&) = default;
};

// Reduce a product of two words to a signed sum of normal-form words.
std::vector<std::pair<Word, int>> word_product(const Word& x, const Word& y);

// Finite sum  sum_W W c_W  with c_W in the subalgebra generated by S_1..S_{d-1} and B.
template <class S>
class ToeplitzElement {
public:
    using Elem = CrossedElement<S>;
    using Terms = std::map<Word, Elem>;

    ToeplitzElement() = default;
    explicit ToeplitzElement(ContextPtr ctx) : ctx_(std::move(ctx)) {}

    static ToeplitzElement word(ContextPtr ctx, Word w) {
        ToeplitzElement t(ctx);
        t.add(w, Elem::identity(ctx));
        return t;
    }
    static ToeplitzElement isometry(ContextPtr ctx) { return word(ctx, Word::iso(1)); }
    static ToeplitzElement defect(ContextPtr ctx) { return word(ctx, Word::corner(0, 0)); }
    static ToeplitzElement identity(ContextPtr ctx) { return word(ctx, Word::iso(0)); }
    static ToeplitzElement from_edge(const Elem& c) {
        ToeplitzElement t(c.context());
        t.add(Word::iso(0), c);
        return t;
    }

    const ContextPtr& context() const { return ctx_; }
    const Terms& terms() const { return terms_; }

    void add(const Word& w, const Elem& c) {
        check_edge(c);
        if (c.is_zero()) return;
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_.emplace(w, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    ToeplitzElement& operator+=(const ToeplitzElement& o) {
        for (const auto& [w, c] : o.terms_) add(w, c);
        return *this;
    }
    ToeplitzElement& operator-=(const ToeplitzElement& o) {
        for (const auto& [w, c] : o.terms_) add(w, c.scaled(S(-1)));
        return *this;
    }
    friend ToeplitzElement operator+(ToeplitzElement a, const ToeplitzElement& b) { return a += b; }
    friend ToeplitzElement operator-(ToeplitzElement a, const ToeplitzElement& b) { return a -= b; }

    // (W1 c1)(W2 c2) = W1 W2 alpha_d^{-deg W2}(c1) c2
    friend ToeplitzElement operator*(const ToeplitzElement& x, const ToeplitzElement& y) {
        ToeplitzElement r(x.ctx_);
        int last = x.ctx_->d - 1;
        for (const auto& [w1, c1] : x.terms_)
            for (const auto& [w2, c2] : y.terms_) {
                auto words = word_product(w1, w2);
                if (words.empty()) continue;
                Elem coeff = alpha_power(last, -w2.degree(), c1) * c2;
                for (const auto& [w, s] : words) r.add(w, s == 1 ? coeff : coeff.scaled(S(s)));
            }
        return r;
    }

    // (W c)* = W* alpha_d^{-deg W*}(c*)
    ToeplitzElement adjoint() const {
        ToeplitzElement r(ctx_);
        int last = ctx_->d - 1;
        for (const auto& [w, c] : terms_) {
            Word ws = w.adjoint();
            r.add(ws, alpha_power(last, -ws.degree(), c.adjoint()));
        }
        return r;
    }

    bool is_zero() const { return terms_.empty(); }
    friend bool operator==(const ToeplitzElement& a, const ToeplitzElement& b) { return (a - b).is_zero(); }

    // Membership in the ideal generated by p: no isometric words survive.
    bool in_defect_ideal() const {
        for (const auto& [w, c] : terms_)
            if (w.kind == Word::Iso) return false;
        return true;
    }

private:
    void check_edge(const Elem& c) const {
        int last = ctx_->d - 1;
        for (const auto& [n, b] : c.terms())
            if (n[last] != 0) throw StructuralError("Toeplitz coefficient must not translate along the split axis");
    }

    ContextPtr ctx_;
    Terms terms_;
};

// Rewrite a = sum_k S_d^k c_k and lift S_d -> St.
template <class S>
ToeplitzElement<S> toeplitz_lift(const CrossedElement<S>& a) {
    const auto& ctx = a.context();
    int last = ctx->d - 1;
    std::map<long, CrossedElement<S>> parts;
    for (const auto& [n, b] : a.terms()) {
        long k = n[last];
        MultiIndex np = n;
        np[last] = 0;
        S th = ScalarTraits<S>::root(ctx->cocycle.q, -ctx->cocycle.theta_exp(unit_index(ctx->d, last, k), np));
        auto it = parts.try_emplace(k, CrossedElement<S>(ctx)).first;
        it->second.add_term(np, coeff_map(b, [&](const Mat<S>& m) { return m * th; }));
    }
    ToeplitzElement<S> t(ctx);
    for (const auto& [k, c] : parts) t.add(Word::iso(k), c);
    return t;
}

template <class S>
CrossedElement<S> toeplitz_quotient(const ToeplitzElement<S>& t) {
    const auto& ctx = t.context();
    CrossedElement<S> r(ctx);
    for (const auto& [w, c] : t.terms())
        if (w.kind == Word::Iso) r += CrossedElement<S>::generator(ctx, ctx->d - 1, w.a) * c;
    return r;
}

}  // namespace bulkedge
