#include "bulkedge/crossed.hpp"

#include <numbers>

namespace bulkedge {

Cocycle Cocycle::trivial(int d) { return uniform(d, 0, 1); }

Cocycle Cocycle::uniform(int d, long pv, int q) {
    if (q < 1) throw std::invalid_argument("cocycle denominator must be positive");
    Cocycle c;
    c.d = d;
    c.q = q;
    c.p.assign(d, std::vector<long>(d, 0));
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) c.p[i][j] = ((pv % q) + q) % q;
    return c;
}

long Cocycle::theta_exp(const MultiIndex& n, const MultiIndex& m) const {
    long e = 0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < i; ++j) e -= p[j][i] * n[i] * m[j];
    return q > 1 ? ((e % q) + q) % q : 0;
}

long Cocycle::chi_exp(int i, const MultiIndex& x) const {
    long e = 0;
    for (int j = i + 1; j < d; ++j) e += p[i][j] * x[j];
    return q > 1 ? ((e % q) + q) % q : 0;
}

bool Cocycle::is_trivial() const {
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if (p[i][j] % q != 0) return false;
    return true;
}

double Cocycle::flux(int i, int j) const { return 2.0 * std::numbers::pi * double(p[i][j]) / double(q); }

std::shared_ptr<const AlgebraContext> AlgebraContext::make(int d, int nu, Cocycle c, std::shared_ptr<const Orbits> omega) {
    if (d < 1) throw StructuralError("algebra dimension must be positive");
    if (c.d != d) throw StructuralError("cocycle dimension differs from d");
    if (omega->d != d) throw StructuralError("configuration space dimension differs from d");
    auto ctx = std::make_shared<AlgebraContext>();
    ctx->d = d;
    ctx->nu = nu;
    ctx->cocycle = std::move(c);
    ctx->omega = std::move(omega);
    return ctx;
}

}  // namespace bulkedge
