#pragma once
#include <vector>

#include "bulkedge/clifford.hpp"
#include "bulkedge/rep.hpp"

namespace bulkedge {

// Lattice index major, exterior-algebra index minor.
CMat kron(const CMat& lattice, const IntMat& cliff);
CMat to_cmat(const IntMat& m);

struct KCycle {
    int d = 0;
    LatticeGeometry geom;
    CliffordBimodule cliff;
    CMat dirac;
    CMat grading;

    std::size_t cliff_dim() const { return cliff.dim(); }
    CMat left_clifford(int j) const;  // I (x) rho^j, 1-based
};

KCycle assemble_bulk_cycle(const LatticeGeometry& g, const CliffordBimodule& cliff);

// pi_omega(a) (x) 1 on the cycle's Hilbert space.
template <class S>
CMat algebra_action(const KCycle& c, const CrossedElement<S>& a, std::size_t omega_pt) {
    return kron(represent(a, omega_pt, c.geom).m, IntMat::identity(c.cliff_dim()));
}

CMat bounded_transform(const KCycle& c);
CMat resolvent(const KCycle& c);  // (1 + D^2)^{-1/2}

struct ExtensionCycle {
    long K = 0;                 // N runs over -K..K
    KCycle cycle;               // d = 1, Dirac N (x) gamma_ext
    CMat N;
    CMat P;                     // chi_[0, inf)(N) on l^2
};

ExtensionCycle make_extension_cycle(long K);

struct ProductModule {
    long K = 0;
    LatticeGeometry edge_geom;
    KCycle cycle;  // lattice (k, n) with k slowest; Clifford ext (x)^ edge
};

ProductModule assemble_product_module(const ExtensionCycle& ext, const KCycle& edge);

// (1 (x)_nabla X_j)(delta_k (x) c (x) delta_n) = delta_k (x) (c X_j delta_n + [X_j, c] delta_n)
// evaluated on the edge slice; returns both sides' lattice vectors for comparison.
struct ConnectionTerms {
    CVec transported;  // c X_j delta_n
    CVec correction;   // [X_j, c] delta_n
    CVec direct;       // X_j (c delta_n)
};

template <class S>
ConnectionTerms connection_terms(const LatticeGeometry& edge, int j, const CrossedElement<S>& c, std::size_t omega_pt,
                                 std::size_t n_index) {
    CMat pc = represent(c, omega_pt, edge).m;
    CMat X = position_operator(j, edge).m;
    CVec delta = CVec::Zero(edge.dim());
    delta(n_index) = 1.0;
    ConnectionTerms t;
    t.transported = pc * (X * delta);
    t.correction = (X * pc - pc * X) * delta;
    t.direct = X * (pc * delta);
    return t;
}

// Left action on the product module: c in slice k acts through alpha_d^{-k}(c), S_d shifts k.
template <class S>
CMat product_left_action(const ProductModule& pm, const CrossedElement<S>& a, std::size_t omega_pt) {
    const auto& ctx = a.context();
    int last = ctx->d - 1;
    auto lift = toeplitz_lift(a);
    const long nk = 2 * pm.K + 1;
    const std::size_t slice = pm.edge_geom.dim();
    LatticeGeometry sg = pm.edge_geom;
    // the slice geometry carries the full d-dimensional coordinates with x_d = 0
    sg.d = ctx->d;
    sg.L.push_back(1);
    sg.bc.push_back(Axis::Open);
    sg.offset.push_back(0);
    sg.twist.push_back(0.0);
    CMat lat = CMat::Zero(slice * nk, slice * nk);
    for (const auto& [w, c] : lift.terms()) {
        for (long ki = 0; ki < nk; ++ki) {
            long k = ki - pm.K;
            long target = ki + w.a;
            if (target < 0 || target >= nk) continue;
            CMat blk = represent(alpha_power(last, -k, c), omega_pt, sg).m;
            lat.block(target * slice, ki * slice, slice, slice) += blk;
        }
    }
    return kron(lat, IntMat::identity(pm.cycle.cliff_dim()));
}

struct Intertwiner {
    CMat U;                  // product module -> bulk module
    std::vector<int> sigma;  // Clifford relabelling, 1-based
    IntMat xi;               // signed permutation realising sigma on the exterior algebra
    int parity = 0;          // orientation_sign(sigma)
    CMat relabelled_target;  // X_d (x) gamma^1 + sum_j X_j (x) gamma^{j+1}
};

Intertwiner product_intertwiner(const ProductModule& pm, const KCycle& bulk);

}  // namespace bulkedge
