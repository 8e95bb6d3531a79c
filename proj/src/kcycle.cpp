#include "bulkedge/kcycle.hpp"

#include <map>

namespace bulkedge {

CMat to_cmat(const IntMat& m) {
    CMat r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = double(m(i, j));
    return r;
}

CMat kron(const CMat& a, const IntMat& b) {
    const Eigen::Index nb = Eigen::Index(b.rows());
    CMat r = CMat::Zero(a.rows() * nb, a.cols() * nb);
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (a(i, j) == cplx(0.0)) continue;
            for (Eigen::Index k = 0; k < nb; ++k)
                for (Eigen::Index l = 0; l < nb; ++l)
                    if (b(k, l) != 0) r(i * nb + k, j * nb + l) = a(i, j) * double(b(k, l));
        }
    return r;
}

CMat KCycle::left_clifford(int j) const {
    return kron(CMat::Identity(geom.dim(), geom.dim()), cliff.rho.at(j - 1));
}

KCycle assemble_bulk_cycle(const LatticeGeometry& g, const CliffordBimodule& cliff) {
    if (cliff.d != g.d) throw StructuralError("cycle: Clifford and lattice dimensions differ");
    for (auto b : g.bc)
        if (b != Axis::Open) throw ConfigError("cycle: open boundary required");
    KCycle c;
    c.d = g.d;
    c.geom = g;
    c.cliff = cliff;
    c.dirac = CMat::Zero(g.dim() * cliff.dim(), g.dim() * cliff.dim());
    for (int j = 1; j <= g.d; ++j) c.dirac += kron(position_operator(j, g).m, cliff.gamma[j - 1]);
    c.grading = kron(CMat::Identity(g.dim(), g.dim()), cliff.grading);
    return c;
}

CMat bounded_transform(const KCycle& c) {
    auto e = eigh(c.dirac);
    RVec f = e.w.array() / (1.0 + e.w.array().square()).sqrt();
    return e.v * f.asDiagonal() * e.v.adjoint();
}

CMat resolvent(const KCycle& c) {
    CMat one = CMat::Identity(c.dirac.rows(), c.dirac.cols());
    auto e = eigh(one + c.dirac * c.dirac);
    RVec f = e.w.array().rsqrt();
    return e.v * f.asDiagonal() * e.v.adjoint();
}

ExtensionCycle make_extension_cycle(long K) {
    ExtensionCycle ex;
    ex.K = K;
    auto g = LatticeGeometry::open({2 * K + 1}, 1);
    g.offset[0] = -K;
    ex.cycle = assemble_bulk_cycle(g, build_exterior_rep(1));
    ex.N = position_operator(1, g, 0.0).m;
    // closed at zero: the kernel of N belongs to P
    ex.P = CMat::Zero(g.dim(), g.dim());
    for (Eigen::Index i = 0; i < ex.N.rows(); ++i)
        if (ex.N(i, i).real() >= 0.0) ex.P(i, i) = 1.0;
    return ex;
}

ProductModule assemble_product_module(const ExtensionCycle& ext, const KCycle& edge) {
    ProductModule pm;
    pm.K = ext.K;
    pm.edge_geom = edge.geom;
    // lattice (k, n): k is the slowest index, matching the bulk ordering with x_d last
    LatticeGeometry g = edge.geom;
    g.d += 1;
    g.L.push_back(2 * ext.K + 1);
    g.bc.push_back(Axis::Open);
    g.offset.push_back(-ext.K);
    g.twist.push_back(0.0);
    auto cl = graded_tensor(ext.cycle.cliff, edge.cliff);
    KCycle& c = pm.cycle;
    c.d = g.d;
    c.geom = g;
    c.cliff = cl;
    c.dirac = kron(position_operator(g.d, g, 0.0).m, cl.gamma[0]);
    for (int j = 1; j < g.d; ++j) c.dirac += kron(position_operator(j, g).m, cl.gamma[j]);
    c.grading = kron(CMat::Identity(g.dim(), g.dim()), cl.grading);
    return pm;
}

Intertwiner product_intertwiner(const ProductModule& pm, const KCycle& bulk) {
    const auto& g = pm.cycle.geom;
    if (bulk.geom.dim() != g.dim() || bulk.d != g.d) throw ConfigError("intertwiner: truncation windows differ");
    for (int j = 0; j < g.d; ++j)
        if (bulk.geom.L[j] != g.L[j] || bulk.geom.offset[j] != g.offset[j])
            throw ConfigError("intertwiner: truncation windows differ");
    const int d = g.d;
    // (w1, w2) -> w1 ^ w2 with w1 in Lambda(R e_1), w2 shifted to e_2..e_d
    auto full = exterior_basis(d);
    auto edge = exterior_basis(d - 1);
    std::map<std::vector<int>, std::size_t> idx;
    for (std::size_t k = 0; k < full.size(); ++k) idx[full[k]] = k;
    IntMat perm(full.size(), full.size());
    for (int w1 = 0; w1 < 2; ++w1)
        for (std::size_t w2 = 0; w2 < edge.size(); ++w2) {
            std::vector<int> s;
            if (w1) s.push_back(1);
            for (int v : edge[w2]) s.push_back(v + 1);
            perm(idx.at(s), std::size_t(w1) * edge.size() + w2) = 1;
        }
    Intertwiner it;
    it.U = kron(CMat::Identity(g.dim(), g.dim()), perm);
    it.sigma.resize(d);
    it.sigma[0] = d;
    for (int j = 1; j < d; ++j) it.sigma[j] = j;
    it.xi = relabel_operator(it.sigma);
    it.parity = orientation_sign(it.sigma);
    it.relabelled_target = kron(position_operator(d, bulk.geom, 0.0).m, bulk.cliff.gamma[0]);
    for (int j = 1; j < d; ++j) it.relabelled_target += kron(position_operator(j, bulk.geom).m, bulk.cliff.gamma[j]);
    return it;
}

}  // namespace bulkedge
