#include "doctest.h"

#include <cmath>
#include <numbers>

#include "bulkedge/linalg.hpp"
#include "bulkedge/models.hpp"
#include "bulkedge/oracles.hpp"

using namespace bulkedge;

namespace {

// Spectrum of the torus represented operator against the Bloch oracle at the allowed momenta.
double torus_vs_bloch(const Element& h, long L, const oracle::BlochMatrix& bloch) {
    RVec real_space = eigvalsh(represent(h, 0, LatticeGeometry::periodic({L, L}, h.context()->nu)).m);
    std::vector<double> k_space;
    for (long a = 0; a < L; ++a)
        for (long b = 0; b < L; ++b) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(bloch(2 * std::numbers::pi * a / L, 2 * std::numbers::pi * b / L));
            for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) k_space.push_back(es.eigenvalues()(i));
        }
    std::sort(k_space.begin(), k_space.end());
    double err = 0.0;
    for (std::size_t i = 0; i < k_space.size(); ++i) err = std::max(err, std::abs(k_space[i] - real_space(Eigen::Index(i))));
    return err;
}

}  // namespace

TEST_CASE("classification table") {
    using P = Parity;
    CHECK(classify(P::None, P::None, false) == make_degree(0, Field::Complex));
    CHECK(classify(P::None, P::None, true) == make_degree(1, Field::Complex));
    CHECK(classify(P::Even, P::None, false) == make_degree(0, Field::Real));
    CHECK(classify(P::Even, P::Even, true) == make_degree(1, Field::Real));
    CHECK(classify(P::None, P::Even, false) == make_degree(2, Field::Real));
    CHECK(classify(P::Odd, P::Even, true) == make_degree(3, Field::Real));
    CHECK(classify(P::Odd, P::None, false) == make_degree(4, Field::Real));
    CHECK(classify(P::Odd, P::Odd, true) == make_degree(5, Field::Real));
    CHECK(classify(P::None, P::Odd, false) == make_degree(6, Field::Real));
    CHECK(classify(P::Even, P::Odd, true) == make_degree(7, Field::Real));
    int rejected = 0;
    for (P t : {P::None, P::Even, P::Odd})
        for (P c : {P::None, P::Even, P::Odd})
            for (bool ch : {false, true}) {
                bool valid = (t == P::None && c == P::None) || ((t == P::None) != (c == P::None) && !ch) ||
                             (t != P::None && c != P::None && ch);
                if (valid) {
                    CHECK_NOTHROW(classify(t, c, ch));
                } else {
                    CHECK_THROWS_AS(classify(t, c, ch), SymmetryError);
                    ++rejected;
                }
            }
    CHECK(rejected == 8);
}

TEST_CASE("haldane matches the Bloch oracle") {
    auto space = DisorderSpace::point(2);
    for (double M : {0.0, 0.4, 1.0}) {
        ModelParams p;
        p.M = M;
        auto h = haldane(p, *space);
        CHECK(h.is_self_adjoint());
        oracle::BlochParams b{p.t, p.t2, p.phi, p.M, 0.0, 0.0};
        CHECK(torus_vs_bloch(h, 6, [&](double k1, double k2) { return oracle::haldane_bloch(b, k1, k2); }) < 1e-12);
    }
}

TEST_CASE("atomic and trivial limits") {
    auto space = DisorderSpace::point(2);
    ModelParams p;
    p.t = 0.0;
    p.t2 = 0.0;
    p.M = 0.7;
    RVec e = eigvalsh(represent(haldane(p, *space), 0, LatticeGeometry::periodic({4, 4}, 2)).m);
    for (Eigen::Index i = 0; i < e.size(); ++i) CHECK(std::abs(std::abs(e(i)) - 0.7) < 1e-14);
    RVec ea = eigvalsh(represent(atomic_limit(p, *space), 0, LatticeGeometry::open({3, 3}, 2)).m);
    CHECK(ea.minCoeff() == doctest::Approx(-0.7));
    CHECK(ea.maxCoeff() == doctest::Approx(0.7));
}

TEST_CASE("kane-mele structure and symmetry") {
    auto space = DisorderSpace::point(2);
    ModelParams p;
    auto h = haldane(p, *space);
    auto km0 = kane_mele(h, 0.0, *space);
    CHECK(km0.h.is_self_adjoint());
    CHECK_NOTHROW(verify_symmetry_operators(km0.sym));
    CHECK(classify(km0.sym) == make_degree(4, Field::Real));
    // r = 0: two decoupled copies, spin-down is the conjugate
    auto g = LatticeGeometry::open({4, 4}, 4);
    CMat m = represent(km0.h, 0, g).m;
    for (std::size_t s = 0; s < g.sites(); ++s)
        for (std::size_t t = 0; t < g.sites(); ++t) CHECK(m.block(s * 4, t * 4 + 2, 2, 2).cwiseAbs().maxCoeff() == 0.0);

    DisorderParams dp;
    dp.kind = DisorderKind::Iid;
    dp.period = {8, 8};
    dp.orbitals = 2;
    dp.samples = 2;
    dp.W = 0.5;
    dp.seed = 3;
    DisorderSpace dis(dp);
    auto km = kane_mele(haldane(p, dis), 0.3, dis);
    CHECK(km.h.is_self_adjoint());
    for (int s = 0; s < 2; ++s) {
        auto g8 = LatticeGeometry::open({8, 8}, 4);
        CMat H = represent(km.h, dis.base_point(s), g8).m;
        CHECK(antiunitary_defect(H, km.sym.trs_u, g8) < 1e-13);
        auto gp = LatticeGeometry::periodic({8, 8}, 4);
        CHECK(antiunitary_defect(represent(km.h, dis.base_point(s), gp).m, km.sym.trs_u, gp) < 1e-13);
    }
    // R_T^2 = -1
    CHECK((km.sym.trs_u * km.sym.trs_u.conj() == CoeffMat::identity(4) * cplx(-1.0)));
    oracle::BlochParams b{p.t, p.t2, p.phi, p.M, 0.3, 0.0};
    auto kmc = kane_mele(h, 0.3, *space);
    CHECK(torus_vs_bloch(kmc.h, 6, [&](double k1, double k2) { return oracle::kane_mele_bloch(b, k1, k2); }) < 1e-12);
}

TEST_CASE("custom Rashba block must satisfy the symmetry constraint") {
    auto space = DisorderSpace::point(2);
    auto h = haldane(ModelParams{}, *space);
    CoeffMat m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;  // symmetric: g* = +conj(g)
    Element g(h.context());
    g.add_term({0, 0}, Coefficient<cplx>::constant(m));
    CHECK_THROWS_AS(kane_mele_with_block(h, g, *space), SymmetryError);
}

TEST_CASE("symmetry operator checks") {
    SymmetryData s;
    s.trs = Parity::Even;
    s.trs_u = CoeffMat::identity(2);
    CHECK_NOTHROW(verify_symmetry_operators(s));
    s.trs = Parity::Odd;
    CHECK_THROWS_AS(verify_symmetry_operators(s), SymmetryError);
}
