// One process per criterion: `acceptance <n>` prints a PASS/FAIL line and exits non-zero on failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "bulkedge/experiment.hpp"
#include "bulkedge/kcycle.hpp"
#include "bulkedge/linalg.hpp"
#include "bulkedge/oracles.hpp"
#include "support/random_elements.hpp"

using namespace bulkedge;
using namespace testsupport;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;
    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << " [violated: " << what << "]";
        }
    }
};

std::string config_path(const std::string& name) { return std::string(BULKEDGE_CONFIG_DIR) + "/" + name; }

ExperimentConfig quiet(ExperimentConfig c) {
    c.out_dir = ".";
    return c;
}

double maxabs(const CMat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

IntMat anti(const IntMat& a, const IntMat& b) { return a * b + b * a; }

bool is_scalar(const IntMat& m, int s) { return m == IntMat::identity(m.rows()) * s; }

// 1. Clifford relations, grading and graded-tensor associativity with exact integers.
void clifford_suite(Outcome& o) {
    long checks = 0;
    for (int d = 1; d <= 6; ++d) {
        auto c = build_exterior_rep(d);
        for (int i = 0; i < d; ++i) {
            o.expect(anti(c.grading, c.gamma[i]).is_zero() && anti(c.grading, c.rho[i]).is_zero(), "grading parity");
            for (int j = 0; j < d; ++j) {
                o.expect(is_scalar(anti(c.gamma[i], c.gamma[j]), i == j ? 2 : 0), "gamma relation");
                o.expect(is_scalar(anti(c.rho[i], c.rho[j]), i == j ? -2 : 0), "rho relation");
                o.expect(anti(c.gamma[i], c.rho[j]).is_zero(), "gamma-rho anticommutation");
                checks += 3;
            }
        }
        o.expect(is_scalar(c.grading * c.grading, 1), "grading involution");
    }
    for (int a = 1; a <= 4; ++a)
        for (int b = 1; a + b <= 5; ++b)
            for (int e = 1; a + b + e <= 6; ++e) {
                auto A = build_exterior_rep(a), B = build_exterior_rep(b), E = build_exterior_rep(e);
                auto l = graded_tensor(graded_tensor(A, B), E), r = graded_tensor(A, graded_tensor(B, E));
                bool same = l.grading == r.grading;
                for (int k = 0; k < a + b + e; ++k) same = same && l.gamma[k] == r.gamma[k] && l.rho[k] == r.rho[k];
                o.expect(same, "graded tensor associativity");
                ++checks;
            }
    o.detail << checks << " exact identities";
}

// 2. Orientation sign of the cyclic relabelling.
void orientation_suite(Outcome& o) {
    for (int d = 1; d <= 6; ++d) {
        std::vector<int> sigma(d);
        sigma[0] = d;
        for (int j = 1; j < d; ++j) sigma[j] = j;
        int s = orientation_sign(sigma);
        int expect = d % 2 == 1 ? 1 : -1;
        // rho^{sigma(1)} ... rho^{sigma(d)} = s rho^1 ... rho^d
        auto c = build_exterior_rep(d);
        IntMat lhs = IntMat::identity(c.dim()), rhs = IntMat::identity(c.dim());
        for (int j = 0; j < d; ++j) {
            lhs = lhs * c.rho[sigma[j] - 1];
            rhs = rhs * c.rho[j];
        }
        o.expect(s == expect, "sign (-1)^(d-1) at d=" + std::to_string(d));
        o.expect(lhs == rhs * s, "product of reordered generators at d=" + std::to_string(d));
        o.detail << "d=" << d << ":" << (s > 0 ? "+" : "-") << " ";
    }
}

Mat<cplx> to_complex(const Mat<Z>& m) {
    Mat<cplx> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).to_complex();
    return r;
}

// 3. Randomized crossed-product and Toeplitz identities, exact over Z[zeta_5].
void crossed_suite(Outcome& o) {
    std::mt19937_64 rng(20240611);
    int cases = 0;
    double min_eig = 0.0;
    for (int trial = 0; trial < 100; ++trial, ++cases) {
        int d = 1 + trial % 3;
        int nu = 1 + (trial / 3) % 2;
        int q = trial % 4 == 0 ? 1 : 5;
        auto ctx = random_context(rng, d, nu, q);
        auto a = random_element(rng, ctx, 3), b = random_element(rng, ctx, 3), c = random_element(rng, ctx, 3);
        o.expect((a * b) * c == a * (b * c), "associativity");
        o.expect((a * b).adjoint() == b.adjoint() * a.adjoint(), "adjoint anti-homomorphism");
        auto phi = conditional_expectation(a.adjoint() * a);
        for (std::size_t pt = 0; pt < ctx->omega->n_points(); ++pt) {
            auto m = to_complex(phi.at(pt));
            CMat cm(m.rows(), m.cols());
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j) cm(i, j) = m(i, j);
            o.expect(phi.at(pt) == phi.at(pt).adjoint(), "Phi0(a*a) self-adjoint");
            double e = eigvalsh(cm).minCoeff();
            min_eig = std::min(min_eig, e);
            o.expect(e > -1e-10, "Phi0(a*a) positive");
        }
        if (d >= 2) {
            using T = ToeplitzElement<Z>;
            auto st = T::isometry(ctx);
            auto one = T::identity(ctx);
            auto p = T::defect(ctx);
            o.expect(st.adjoint() * st == one, "St* St = 1");
            o.expect(st * st.adjoint() == one - p, "St St* = 1 - p");
            auto x = random_toeplitz(rng, ctx, 3), y = random_toeplitz(rng, ctx, 3);
            o.expect(x * (st.adjoint() * st) == x, "relation inside products");
            o.expect((x * st) * st.adjoint() == x - x * p, "relation inside products");
            o.expect((x * y).adjoint() == y.adjoint() * x.adjoint(), "Toeplitz adjoint");
            o.expect(toeplitz_quotient(x * y) == toeplitz_quotient(x) * toeplitz_quotient(y), "quotient is multiplicative");
            o.expect(toeplitz_quotient(toeplitz_lift(a)) == a, "lift then quotient");
        }
    }
    o.detail << cases << " seeded cases, min eigenvalue of Phi0(a*a) " << min_eig;
}

// 4. Resolvent spectrum of the fundamental cycle.
void resolvent_suite(Outcome& o) {
    auto g = LatticeGeometry::open({11, 11}, 1);
    auto c = assemble_bulk_cycle(g, build_exterior_rep(2));
    std::vector<double> expect;
    for (std::size_t s = 0; s < g.sites(); ++s) {
        auto x = g.site(s);
        double m2 = std::pow(x[0] - 5.0, 2) + std::pow(x[1] - 5.0, 2);
        for (int k = 0; k < 4; ++k) expect.push_back(1.0 / std::sqrt(1.0 + m2));
    }
    std::sort(expect.begin(), expect.end());
    RVec r = eigvalsh(resolvent(c));
    double err = 0.0;
    for (std::size_t i = 0; i < expect.size(); ++i) err = std::max(err, std::abs(r(Eigen::Index(i)) - expect[i]));
    o.expect(err < 1e-12, "eigenvalues (1+|m|^2)^(-1/2)");
    o.detail << "max deviation " << err << " over " << expect.size() << " eigenvalues";
}

// 5. Product module intertwiner and relabelling parity.
void intertwiner_suite(Outcome& o) {
    auto ex = make_extension_cycle(2);
    auto edge = assemble_bulk_cycle(LatticeGeometry::open({5}, 1), build_exterior_rep(1));
    auto pm = assemble_product_module(ex, edge);
    auto gb = LatticeGeometry::open({5, 5}, 1);
    gb.offset[1] = -2;
    auto bulk = assemble_bulk_cycle(gb, build_exterior_rep(2));
    auto it = product_intertwiner(pm, bulk);
    double e1 = maxabs(it.U * pm.cycle.dirac * it.U.adjoint() - it.relabelled_target);
    CMat xi = kron(CMat::Identity(gb.dim(), gb.dim()), it.xi);
    double e2 = maxabs(xi * it.relabelled_target * xi.adjoint() - bulk.dirac);
    o.expect(e1 < 1e-12, "U D_prod U* = X2 g1 + X1 g2");
    o.expect(e2 < 1e-12, "relabelling onto the bulk Dirac");
    o.expect(it.parity == -1, "parity (-1)^(d-1)");
    // left actions of generators and a random edge coefficient agree on interior sites
    std::mt19937_64 rng(5);
    auto ctx = random_context(rng, 2, 1, 5, {5, 5});
    double e3 = 0.0;
    for (const auto& a : {ElemZ::generator(ctx, 0), ElemZ::generator(ctx, 1), random_element(rng, ctx, 3, true)}) {
        CMat lhs = it.U * product_left_action(pm, a, 0) * it.U.adjoint();
        CMat rhs = algebra_action(bulk, a, 0);
        long m = a.hop_range();
        for (std::size_t s = 0; s < gb.sites(); ++s) {
            auto x = gb.site(s);
            if (x[0] < m || x[0] >= 5 - m || x[1] < m || x[1] >= 5 - m) continue;
            for (std::size_t k = 0; k < 4; ++k) e3 = std::max(e3, maxabs(lhs.col(s * 4 + k) - rhs.col(s * 4 + k)));
        }
    }
    o.expect(e3 < 1e-12, "left actions intertwined");
    o.detail << "Dirac error " << e1 << ", relabel error " << e2 << ", action error " << e3 << ", parity " << it.parity;
}

// 6. Haldane bulk, Berry oracle and edge conductance.
void haldane_suite(Outcome& o) {
    for (const char* name : {"haldane_topological.cfg", "haldane_trivial.cfg"}) {
        auto cfg = quiet(load_config(config_path(name)));
        auto r = run_experiment(cfg);
        const auto& s = r.json["summary"];
        long bulk = s["bulk"]["value"].get<long>();
        long orc = s["bulk_oracle"]["value"].get<long>();
        double sigma = s["edge_sigma"]["value"].get<double>();
        long expect = cfg.params.M == 0.0 ? 1 : 0;
        o.expect(r.exit_code == kPass, std::string(name) + " verdict");
        o.expect(bulk == expect && orc == expect, std::string(name) + " bulk and oracle");
        o.expect(std::abs(sigma - expect) <= 0.05 * std::max<double>(1, expect), std::string(name) + " edge within 5%");
        o.detail << cfg.name << ": chern " << bulk << " berry " << orc << " sigma_e " << sigma << "; ";
    }
}

// 7. Chern number under disorder, and loud failure when the gap closes.
void disorder_suite(Outcome& o) {
    auto cfg = quiet(load_config(config_path("haldane_disordered.cfg")));
    o.expect(cfg.disorder.samples == 10 && cfg.disorder.W == 0.5, "10 samples at W = 0.5");
    auto r = run_experiment(cfg);
    o.expect(r.exit_code == kPass, "disordered verdict");
    double min_gap = 1e9;
    std::string values;
    for (const auto& row : r.json["samples"]) {
        o.expect(row["bulk_value"]["value"].get<long>() == 1, "chern stays 1");
        min_gap = std::min(min_gap, row["gap"]["value"].get<double>());
        values += std::to_string(row["bulk_value"]["value"].get<long>());
    }
    o.expect(r.json["samples"].size() == 10, "10 realizations");
    // the gap closes at M = 3 sqrt(3) t2; the run must refuse with the gap exit code
    auto bad = cfg;
    bad.params.M = 3.0 * std::sqrt(3.0) * cfg.params.t2;
    bad.disorder = DisorderParams{};
    bad.disorder.d = 2;
    auto rb = run_experiment(bad);
    o.expect(rb.exit_code == kGapClosed, "gap-closed run aborts with exit 3");
    o.detail << "chern per sample " << values << ", min torus gap " << min_gap << ", gap-closed exit " << rb.exit_code;
}

// 8. Z2 index against the edge Kramers-pair count.
void z2_suite(Outcome& o) {
    struct Point {
        double M;
        double W;
    };
    int topo = 0, triv = 0;
    for (Point pt : {Point{0.0, 0.0}, Point{0.2, 0.0}, Point{0.3, 0.0}, Point{0.8, 0.0}, Point{1.0, 0.0}, Point{0.0, 0.5}}) {
        auto cfg = quiet(load_config(config_path(pt.W > 0 ? "kane_mele_disordered.cfg" : "kane_mele_trivial.cfg")));
        cfg.params.M = pt.M;
        cfg.edge_conductance_extra = false;
        auto r = run_experiment(cfg);
        if (r.exit_code != kPass) {
            o.expect(false, "run at M=" + std::to_string(pt.M) + " W=" + std::to_string(pt.W) + " exit " +
                                std::to_string(r.exit_code) + (r.json.contains("error") ? " " + r.json["error"].get<std::string>() : ""));
            continue;
        }
        long bulk = r.json["summary"]["bulk"]["value"].get<long>();
        long edge = r.json["summary"]["edge"]["value"].get<long>();
        double split = 0.0;
        for (const auto& row : r.json["samples"]) split = std::max(split, row["kramers_splitting"]["value"].get<double>());
        o.expect(bulk == edge, "bulk Z2 equals edge parity");
        o.expect(split < 1e-6, "Kramers splitting below 1e-6");
        (bulk ? topo : triv)++;
        o.detail << "(M=" << pt.M << ",W=" << pt.W << "): " << bulk << "/" << edge << " ";
    }
    o.expect(topo >= 2 && triv >= 2, "both phases represented");
}

// 9. Conductance of the Kane-Mele edge vanishes while the Z2 parity is 1.
void km_conductance_suite(Outcome& o) {
    auto cfg = quiet(load_config(config_path("kane_mele_topological.cfg")));
    auto r = run_experiment(cfg);
    o.expect(r.exit_code == kPass, "verdict");
    if (r.exit_code != kPass) return;
    double sigma = r.json["summary"]["z2_edge_sigma_max_abs"]["value"].get<double>();
    long edge = r.json["summary"]["edge"]["value"].get<long>();
    o.expect(sigma < 1e-3, "|sigma_e| < 1e-3");
    o.expect(edge == 1, "edge Z2 parity 1");
    o.detail << "|sigma_e| " << sigma << ", edge parity " << edge;
}

// 10. Semifinite trace of frame operators and summability of the resolvent powers.
void trace_suite(Outcome& o) {
    auto g = LatticeGeometry::open({7, 7}, 2);
    bool exact = true;
    for (std::size_t s = 0; s < g.sites(); ++s) {
        auto x = g.site(s);
        exact = exact && semifinite_trace({frame_operator(g, x)}, {1.0}) == 1.0;
    }
    o.expect(exact, "Tr(frame) = 1");
    std::vector<long> Ls{5, 11, 23, 47};
    for (double s : {1.0, 2.0, 3.0, 4.0}) {
        std::vector<double> sums;
        for (long L : Ls) sums.push_back(semifinite_trace({resolvent_power(LatticeGeometry::open({L, L}, 1), s)}, {1.0}));
        bool monotone = true;
        for (std::size_t k = 1; k < sums.size(); ++k) monotone = monotone && sums[k] > sums[k - 1];
        o.expect(monotone, "partial sums increase with L");
        double d1 = sums[2] - sums[1], d2 = sums[3] - sums[2];
        if (s > 2.0) o.expect(d2 / d1 < 0.75, "increments shrink for s > d");
        else o.expect(d2 / d1 >= 0.9, "no decay of increments for s <= d");
        o.detail << "s=" << s << ": " << sums.back() << " (ratio " << d2 / d1 << ") ";
    }
}

// 11. Symmetry classes.
void table_suite(Outcome& o) {
    using P = Parity;
    struct Row {
        P t, c;
        bool chiral;
        int j;
        Field f;
    };
    const Row rows[] = {{P::Even, P::None, false, 0, Field::Real}, {P::Even, P::Even, true, 1, Field::Real},
                        {P::None, P::Even, false, 2, Field::Real}, {P::Odd, P::Even, true, 3, Field::Real},
                        {P::Odd, P::None, false, 4, Field::Real},  {P::Odd, P::Odd, true, 5, Field::Real},
                        {P::None, P::Odd, false, 6, Field::Real},  {P::Even, P::Odd, true, 7, Field::Real},
                        {P::None, P::None, false, 0, Field::Complex}, {P::None, P::None, true, 1, Field::Complex}};
    int valid = 0, rejected = 0;
    for (const auto& r : rows) {
        bool ok = classify(r.t, r.c, r.chiral) == make_degree(r.j, r.f);
        o.expect(ok, "row degree " + std::to_string(r.j));
        valid += ok;
    }
    for (P t : {P::None, P::Even, P::Odd})
        for (P c : {P::None, P::Even, P::Odd})
            for (bool ch : {false, true}) {
                bool listed = false;
                for (const auto& r : rows) listed = listed || (r.t == t && r.c == c && r.chiral == ch);
                if (listed) continue;
                try {
                    classify(t, c, ch);
                    o.expect(false, "inconsistent flags accepted");
                } catch (const SymmetryError&) {
                    ++rejected;
                }
            }
    o.detail << valid << " valid rows, " << rejected << " invalid combinations rejected";
}

struct Criterion {
    const char* title;
    double limit_s;
    std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
    const Criterion all[] = {
        {"Clifford relations", 5, clifford_suite},
        {"orientation sign", 1, orientation_suite},
        {"crossed product identities", 30, crossed_suite},
        {"fundamental cycle spectrum", 10, resolvent_suite},
        {"product module intertwiner", 10, intertwiner_suite},
        {"integer bulk-edge (Haldane)", 600, haldane_suite},
        {"disorder stability", 900, disorder_suite},
        {"torsion bulk-edge (Kane-Mele)", 1200, z2_suite},
        {"conductance vanishes under odd TRS", 300, km_conductance_suite},
        {"semifinite trace", 60, trace_suite},
        {"symmetry classification", 1, table_suite},
    };
    std::vector<int> which;
    if (argc > 1) {
        for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
    } else {
        for (int i = 1; i <= 11; ++i) which.push_back(i);
    }
    int failures = 0;
    for (int n : which) {
        if (n < 1 || n > 11) {
            std::cerr << "no criterion " << n << '\n';
            return 2;
        }
        const auto& c = all[n - 1];
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.limit_s) {
            o.ok = false;
            o.detail << " [runtime " << secs << " s exceeds " << c.limit_s << " s]";
        }
        std::printf("%s criterion %d (%s): %s (%.2f s)\n", o.ok ? "PASS" : "FAIL", n, c.title, o.detail.str().c_str(), secs);
        std::fflush(stdout);
        failures += !o.ok;
    }
    return failures ? 1 : 0;
}
