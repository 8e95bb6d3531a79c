#include "doctest.h"

#include <cmath>
#include <numbers>

#include "bulkedge/oracles.hpp"

using namespace bulkedge::oracle;

namespace {

BlochParams topological() { return BlochParams{}; }

BlochParams trivial() {
    BlochParams p;
    p.M = 1.0;
    return p;
}

}  // namespace

TEST_CASE("Haldane Berry-curvature Chern numbers") {
    auto hal = [](BlochParams p) { return [p](double a, double b) { return haldane_bloch(p, a, b); }; };
    auto top = berry_chern(hal(topological()), 0.0, 48);
    CHECK(top.rounded == 1);
    CHECK(std::abs(top.chern - 1.0) < 1e-9);
    CHECK(top.max_flux < 1.0);
    CHECK(top.min_direct_gap > 0.4);
    CHECK(berry_chern(hal(trivial()), 0.0, 48).rounded == 0);
    BlochParams rev;
    rev.phi = -std::numbers::pi / 2;
    CHECK(berry_chern(hal(rev), 0.0, 48).rounded == -1);
}

TEST_CASE("Haldane Bloch matrix") {
    BlochParams p;
    p.t2 = 0.0;
    p.M = 0.3;
    // at k = 0 the off-diagonal is 3t
    auto h = haldane_bloch(p, 0.0, 0.0);
    CHECK(std::abs(h(0, 1) - 3.0) < 1e-14);
    CHECK(std::abs(h(0, 0) - 0.3) < 1e-14);
    // Dirac point: f vanishes at k = (2pi/3, -2pi/3)
    auto hk = haldane_bloch(p, 2 * std::numbers::pi / 3, -2 * std::numbers::pi / 3);
    CHECK(std::abs(hk(0, 1)) < 1e-14);
}

TEST_CASE("Kane-Mele Bloch matrix symmetries") {
    BlochParams p;
    p.r = 0.3;
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
    u(0, 2) = 1.0;
    u(1, 3) = 1.0;
    u(2, 0) = -1.0;
    u(3, 1) = -1.0;
    for (double k1 : {0.1, 1.3, -2.2})
        for (double k2 : {0.4, -0.7}) {
            auto h = kane_mele_bloch(p, k1, k2);
            CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
            auto hm = kane_mele_bloch(p, -k1, -k2);
            CHECK((u * hm.conjugate() * u.adjoint() - h).cwiseAbs().maxCoeff() < 1e-14);
        }
    auto km = [&](double a, double b) { return kane_mele_bloch(p, a, b); };
    CHECK(berry_chern(km, 0.0, 24).rounded == 0);
}

TEST_CASE("cylinder edge crossings") {
    auto top = haldane_cylinder(topological(), 24, 96);
    CHECK(top.top_crossings == 1);
    CHECK(top.min_bulk_gap > 0.3);
    CHECK(haldane_cylinder(trivial(), 24, 96).top_crossings == 0);

    BlochParams km;
    km.r = 0.3;
    auto kt = kane_mele_cylinder(km, 24, 96);
    CHECK(kt.kramers_pairs() == 1);
    CHECK(kt.top_crossings % 2 == 0);
    km.M = 1.0;
    CHECK(kane_mele_cylinder(km, 24, 96).kramers_pairs() == 0);
}
