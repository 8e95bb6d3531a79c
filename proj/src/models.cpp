#include "bulkedge/models.hpp"

#include <array>
#include <cmath>

namespace bulkedge {

namespace {

int parity_code(Parity p) { return p == Parity::None ? 0 : (p == Parity::Even ? 1 : -1); }

Coefficient<cplx> onsite(const ContextPtr& ctx, const DisorderSpace& space, double M) {
    CoeffMat base(2, 2);
    base(0, 0) = M;
    base(1, 1) = -M;
    if (space.clean()) return Coefficient<cplx>::constant(base);
    const int orb = space.params().orbitals;
    if (orb != 1 && orb != 2) throw std::invalid_argument("honeycomb disorder needs 1 or 2 orbitals per cell");
    Coefficient<cplx> c;
    for (std::size_t pt = 0; pt < ctx->omega->n_points(); ++pt) {
        CoeffMat m = base;
        m(0, 0) += space.value(pt, 0);
        m(1, 1) += space.value(pt, orb == 2 ? 1 : 0);
        c.vals.push_back(m);
    }
    return c;
}

Coefficient<cplx> entry(int nu, int r, int c, cplx v) {
    CoeffMat m(nu, nu);
    m(r, c) = v;
    return Coefficient<cplx>::constant(m);
}

// Copy a rank-2 element into the (br, bc) block of a rank-4 context.
Element embed_block(const Element& a, const ContextPtr& ctx4, int br, int bc) {
    Element r(ctx4);
    for (const auto& [n, c] : a.terms()) {
        Coefficient<cplx> big = coeff_map(c, [&](const CoeffMat& m) {
            CoeffMat out(4, 4);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) out(2 * br + i, 2 * bc + j) = m(i, j);
            return out;
        });
        r.add_term(n, big);
    }
    return r;
}

}  // namespace

KODegree classify(Parity trs, Parity phs, bool chiral) {
    int t = parity_code(trs), c = parity_code(phs);
    if (t == 0 && c == 0) return make_degree(chiral ? 1 : 0, Field::Complex);
    if (t != 0 && c != 0 && !chiral) throw SymmetryError("TRS together with PHS forces a chiral symmetry");
    if ((t == 0 || c == 0) && chiral) throw SymmetryError("chiral symmetry with a single anti-unitary symmetry is inconsistent");
    static const std::array<std::array<int, 3>, 3> table = {{
        // phs:   none  even  odd       (trs row)
        {{-1, 2, 6}},                   // trs none
        {{0, 1, 7}},                    // trs even
        {{4, 3, 5}},                    // trs odd
    }};
    int row = t == 0 ? 0 : (t == 1 ? 1 : 2);
    int col = c == 0 ? 0 : (c == 1 ? 1 : 2);
    return make_degree(table[row][col], Field::Real);
}

KODegree classify(const SymmetryData& sym) { return classify(sym.trs, sym.phs, sym.chiral); }

void verify_symmetry_operators(const SymmetryData& sym) {
    auto check = [](Parity p, const CoeffMat& u, const char* name) {
        if (p == Parity::None) return;
        CoeffMat sq = u * u.conj();
        CoeffMat target = CoeffMat::identity(u.rows()) * cplx(p == Parity::Even ? 1.0 : -1.0);
        double err = 0.0;
        for (std::size_t i = 0; i < sq.rows(); ++i)
            for (std::size_t j = 0; j < sq.cols(); ++j) err = std::max(err, std::abs(sq(i, j) - target(i, j)));
        if (err > 1e-12) throw SymmetryError(std::string(name) + " operator squares to the wrong sign");
    };
    check(sym.trs, sym.trs_u, "time-reversal");
    check(sym.phs, sym.phs_u, "particle-hole");
    if (sym.chiral) {
        CoeffMat sq = sym.chiral_op * sym.chiral_op;
        CoeffMat id = CoeffMat::identity(sq.rows());
        for (std::size_t i = 0; i < sq.rows(); ++i)
            for (std::size_t j = 0; j < sq.cols(); ++j)
                if (std::abs(sq(i, j) - id(i, j)) > 1e-12) throw SymmetryError("chiral operator does not square to one");
    }
    classify(sym);
}

Element haldane(const ModelParams& p, const DisorderSpace& space) {
    if (space.params().d != 2) throw std::invalid_argument("haldane: needs d = 2");
    auto ctx = AlgebraContext::make(2, 2, Cocycle::trivial(2), space.orbits());
    Element h(ctx);
    h.add_term({0, 0}, onsite(ctx, space, p.M));
    for (const auto& dl : HoneycombTables::nn) {
        h.add_term({dl[0], dl[1]}, entry(2, 0, 1, p.t));
        h.add_term({-dl[0], -dl[1]}, entry(2, 1, 0, p.t));
    }
    cplx ua = std::polar(p.t2, -p.phi), ub = std::polar(p.t2, p.phi);
    for (const auto& b : HoneycombTables::nnn) {
        CoeffMat fwd(2, 2), bwd(2, 2);
        fwd(0, 0) = ua;
        fwd(1, 1) = ub;
        bwd(0, 0) = std::conj(ua);
        bwd(1, 1) = std::conj(ub);
        h.add_term({b[0], b[1]}, Coefficient<cplx>::constant(fwd));
        h.add_term({-b[0], -b[1]}, Coefficient<cplx>::constant(bwd));
    }
    if (!h.is_self_adjoint()) throw std::logic_error("haldane: assembled element is not self-adjoint");
    return h;
}

Element rashba_block(double r, const ContextPtr& ctx2) {
    const double s3 = std::sqrt(3.0);
    const std::array<double, 2> a1{1.0, 0.0}, a2{0.5, s3 / 2.0}, tau{0.5, s3 / 6.0};
    Element g(ctx2);
    for (const auto& dl : HoneycombTables::nn) {
        // unit vector from B(n - delta) to A(n)
        double bx = tau[0] - dl[0] * a1[0] - dl[1] * a2[0];
        double by = tau[1] - dl[0] * a1[1] - dl[1] * a2[1];
        double nrm = std::hypot(bx, by);
        double dx = -bx / nrm, dy = -by / nrm;
        cplx v = cplx(0.0, r / 3.0) * cplx(dy, dx);
        g.add_term({dl[0], dl[1]}, entry(2, 0, 1, v));
        g.add_term({-dl[0], -dl[1]}, entry(2, 1, 0, -v));
    }
    return g;
}

KaneMele kane_mele_with_block(const Element& h, const Element& g, const DisorderSpace& space) {
    const auto& c2 = h.context();
    if (c2->nu != 2 || c2->d != 2) throw std::invalid_argument("kane_mele: expects a two-band d = 2 element");
    if (!(g.adjoint() == coefficient_conjugate(g).scaled(cplx(-1.0))))
        throw SymmetryError("Rashba block violates g* = -conj(g)");
    auto ctx4 = AlgebraContext::make(2, 4, c2->cocycle, space.orbits());
    KaneMele km{Element(ctx4), {}};
    km.h += embed_block(h, ctx4, 0, 0);
    km.h += embed_block(g, ctx4, 0, 1);
    km.h += embed_block(g.adjoint(), ctx4, 1, 0);
    km.h += embed_block(coefficient_conjugate(h), ctx4, 1, 1);
    km.sym.trs = Parity::Odd;
    km.sym.trs_u = CoeffMat(4, 4);
    km.sym.trs_u(0, 2) = 1.0;
    km.sym.trs_u(1, 3) = 1.0;
    km.sym.trs_u(2, 0) = -1.0;
    km.sym.trs_u(3, 1) = -1.0;
    if (!km.h.is_self_adjoint()) throw std::logic_error("kane_mele: assembled element is not self-adjoint");
    return km;
}

KaneMele kane_mele(const Element& h, double r, const DisorderSpace& space) {
    return kane_mele_with_block(h, rashba_block(r, h.context()), space);
}

Element atomic_limit(const ModelParams& p, const DisorderSpace& space) {
    ModelParams q = p;
    q.t = 0.0;
    q.t2 = 0.0;
    auto ctx = AlgebraContext::make(2, 2, Cocycle::trivial(2), space.orbits());
    Element h(ctx);
    h.add_term({0, 0}, onsite(ctx, space, q.M));
    return h;
}

CMat lattice_unitary(const CoeffMat& u, const LatticeGeometry& g) {
    if (int(u.rows()) != g.nu) throw std::invalid_argument("lattice_unitary: rank mismatch");
    CMat m = CMat::Zero(g.dim(), g.dim());
    for (std::size_t s = 0; s < g.sites(); ++s)
        for (int i = 0; i < g.nu; ++i)
            for (int j = 0; j < g.nu; ++j) m(s * g.nu + i, s * g.nu + j) = u(i, j);
    return m;
}

double antiunitary_defect(const CMat& a, const CoeffMat& u, const LatticeGeometry& g) {
    // U = 1 (x) u is block diagonal; apply it per site instead of forming the dense product
    const int nu = g.nu;
    if (int(u.rows()) != nu) throw std::invalid_argument("antiunitary_defect: rank mismatch");
    CMat uc(nu, nu);
    for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nu; ++j) uc(i, j) = u(i, j);
    CMat b = a.conjugate();
    const Eigen::Index n = Eigen::Index(g.sites());
    for (Eigen::Index s = 0; s < n; ++s) b.middleRows(s * nu, nu) = uc * b.middleRows(s * nu, nu);
    for (Eigen::Index s = 0; s < n; ++s) b.middleCols(s * nu, nu) = b.middleCols(s * nu, nu) * uc.adjoint();
    return (b - a).cwiseAbs().maxCoeff();
}

}  // namespace bulkedge
