#include "bulkedge/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bulkedge {

namespace {

std::vector<double> ascending(const RVec& s) {
    std::vector<double> v(s.data(), s.data() + s.size());
    std::sort(v.begin(), v.end());
    return v;
}

// Number of vectors in span(w) concentrated on the mask (eigenvalues of w* chi w above 1/2).
std::size_t localized_count(const CMat& w, const std::vector<char>& mask) {
    if (w.cols() == 0) return 0;
    CMat mw = w;
    for (Eigen::Index i = 0; i < w.rows(); ++i)
        if (!mask[i]) mw.row(i).setZero();
    CMat m = w.adjoint() * mw;
    m = 0.5 * (m + m.adjoint()).eval();
    RVec ev = eigvalsh(m);
    return std::size_t((ev.array() > 0.5).count());
}

struct KernelSplit {
    Svd svd;
    std::vector<double> values;  // ascending
    KernelCut cut;
    CMat right;  // near-kernel of T
    CMat left;   // near-kernel of T*
};

KernelSplit split_kernel(const CMat& T) {
    KernelSplit k;
    k.svd = svd(T);
    k.values = ascending(k.svd.s);
    k.cut = adaptive_kernel_cut(k.values);
    Eigen::Index n = k.svd.s.size(), c = Eigen::Index(k.cut.count);
    k.right = k.svd.v.rightCols(c);
    k.left = k.svd.u.rightCols(c);
    return k;
}

void require_planar_open(const LatticeGeometry& g) {
    if (g.d != 2) throw std::invalid_argument("index pairing implemented for d = 2 only");
    for (auto b : g.bc)
        if (b != Axis::Open) throw ConfigError("index pairing needs an open box");
}

}  // namespace

FermiProjection fermi_projection(const LatticeOperator& H, double mu, double gap_min) {
    double herm = hermiticity_defect(H.m);
    if (herm > 1e-10) throw std::invalid_argument("fermi_projection: operator not hermitian");
    auto e = eigh(H.m);
    FermiProjection f;
    f.mu = mu;
    f.geom = H.geom;
    f.energies = e.w;
    f.gap = (e.w.array() - mu).abs().minCoeff();
    if (f.gap < gap_min) {
        Eigen::Index i;
        (e.w.array() - mu).abs().minCoeff(&i);
        throw GapClosedError("spectral gap closed: eigenvalue " + std::to_string(e.w(i)) + " within " +
                                 std::to_string(gap_min) + " of mu",
                             e.w(i));
    }
    Eigen::Index occ = Eigen::Index((e.w.array() < mu).count());
    f.occupied = e.v.leftCols(occ);
    f.P = f.occupied * f.occupied.adjoint();
    return f;
}

double verify_bulk_gap(const Element& h, std::size_t omega_pt, const std::vector<long>& L, double mu, double gap_min) {
    const auto& om = *h.context()->omega;
    for (int j = 0; j < om.d; ++j)
        if (L[j] % om.period[j] != 0)
            throw ConfigError("torus length " + std::to_string(L[j]) + " is not a multiple of the disorder period " +
                              std::to_string(om.period[j]));
    auto g = LatticeGeometry::periodic(L, h.context()->nu);
    auto op = represent(h, omega_pt, g);
    RVec w = eigvalsh(op.m);
    Eigen::Index i;
    double gap = (w.array() - mu).abs().minCoeff(&i);
    if (gap < gap_min)
        throw GapClosedError("bulk gap closed: eigenvalue " + std::to_string(w(i)) + " within " +
                                 std::to_string(gap_min) + " of mu",
                             w(i));
    return gap;
}

std::string to_string(IndexKind k) {
    switch (k) {
        case IndexKind::Integer: return "integer";
        case IndexKind::Z2: return "z2";
        case IndexKind::Unsupported: return "unsupported";
    }
    return "?";
}

IndexKind index_kind(const KODegree& deg) {
    if (deg.j == 0) return IndexKind::Integer;
    if (deg.field == Field::Real && (deg.j == 1 || deg.j == 2)) return IndexKind::Z2;
    return IndexKind::Unsupported;
}

KernelCut adaptive_kernel_cut(const std::vector<double>& v, double ceiling, double floor, double min_ratio) {
    KernelCut best;
    best.ratio = -1.0;
    std::size_t K = 0;
    while (K < v.size() && v[K] < ceiling) ++K;
    for (std::size_t k = 0; k <= K; ++k) {
        double lo = k == 0 ? floor : std::max(v[k - 1], 1e-300);
        double hi = k < v.size() ? v[k] : std::numeric_limits<double>::infinity();
        double ratio = hi / lo;
        if (ratio > best.ratio) {
            best.ratio = ratio;
            best.count = k;
            best.below = k == 0 ? 0.0 : v[k - 1];
            best.above = hi;
        }
    }
    if (best.ratio < min_ratio)
        throw InconclusiveError("ambiguous kernel cut: best singular-value gap ratio " + std::to_string(best.ratio) +
                                " < " + std::to_string(min_ratio));
    return best;
}

RVec phase_diagonal_angle(const LatticeGeometry& g) {
    require_planar_open(g);
    double o1 = default_origin(g, 0), o2 = default_origin(g, 1);
    RVec a(g.dim());
    for (std::size_t s = 0; s < g.sites(); ++s) {
        auto x = g.absolute(g.site(s));
        double x1 = double(x[0]) - o1, x2 = double(x[1]) - o2;
        if (x1 == 0.0 && x2 == 0.0) throw ConfigError("a lattice site sits at the phase singularity; use even sizes");
        for (int k = 0; k < g.nu; ++k) a(s * g.nu + k) = std::atan2(x2, x1);
    }
    return a;
}

CVec phase_diagonal(const LatticeGeometry& g) {
    RVec a = phase_diagonal_angle(g);
    CVec f(a.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) f(i) = std::polar(1.0, a(i));
    return f;
}

std::vector<char> disk_mask(const LatticeGeometry& g, double radius) {
    double o1 = default_origin(g, 0), o2 = default_origin(g, 1);
    std::vector<char> m(g.dim(), 0);
    for (std::size_t s = 0; s < g.sites(); ++s) {
        auto x = g.absolute(g.site(s));
        double r = std::hypot(double(x[0]) - o1, double(x[1]) - o2);
        for (int k = 0; k < g.nu; ++k) m[s * g.nu + k] = r <= radius;
    }
    return m;
}

IndexValue chern_index(const FermiProjection& F, const IndexOptions& opt) {
    const auto& g = F.geom;
    require_planar_open(g);
    CVec f = phase_diagonal(g);
    double R = opt.disk_radius ? *opt.disk_radius : 0.5 * double(std::min(g.L[0], g.L[1])) - 2.0;
    auto mask = disk_mask(g, R);

    // A = P - F P F*, Ch = Tr_disk(A^3)
    CMat A = F.P - f.asDiagonal() * F.P * f.conjugate().asDiagonal();
    CMat A2 = A * A;
    double raw = 0.0;
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        if (mask[i]) raw += (A2.row(i) * A.col(i)).value().real();

    IndexValue iv;
    iv.degree = make_degree(0, Field::Complex);
    iv.kind = IndexKind::Integer;
    iv.raw = raw;
    iv.value = std::lround(raw);
    iv.residual = std::abs(raw - double(iv.value));
    if (iv.residual >= opt.residual_max)
        throw InconclusiveError("Chern trace " + std::to_string(raw) + " not integral within " +
                                std::to_string(opt.residual_max) + "; increase L");

    // Cross-check: origin-localized near-kernels of P F P on ran P.
    CMat T = F.occupied.adjoint() * f.asDiagonal() * F.occupied;
    auto ks = split_kernel(T);
    long nT = long(localized_count(F.occupied * ks.right, mask));
    long nTs = long(localized_count(F.occupied * ks.left, mask));
    iv.kernel_value = nTs - nT;
    iv.cut = ks.cut;
    iv.singular_values.assign(ks.values.begin(), ks.values.begin() + std::min<std::size_t>(8, ks.values.size()));
    return iv;
}

IndexValue z2_index(const FermiProjection& F, const SymmetryData& sym, const IndexOptions& opt) {
    const auto& g = F.geom;
    require_planar_open(g);
    if (sym.trs != Parity::Odd) throw SymmetryError("z2 index needs an odd time-reversal symmetry");
    KODegree deg = classify(sym);
    if (!(deg == make_degree(4, Field::Real))) throw SymmetryError("symmetry class is not KO_4");
    KODegree pairing = abs_degree(deg, g.d);
    if (index_kind(pairing) != IndexKind::Z2) throw SymmetryError("pairing degree does not carry a Z2 index");
    double trs = antiunitary_defect(F.P, sym.trs_u, g);
    if (trs > opt.trs_tol) throw SymmetryError("Fermi projection breaks time reversal (defect " + std::to_string(trs) + ")");

    CVec f = phase_diagonal(g);
    double R = opt.disk_radius ? *opt.disk_radius : 0.5 * double(std::min(g.L[0], g.L[1])) - 2.0;
    auto mask = disk_mask(g, R);
    CMat T = F.occupied.adjoint() * f.asDiagonal() * F.occupied;
    auto ks = split_kernel(T);

    IndexValue iv;
    iv.degree = pairing;
    iv.kind = IndexKind::Z2;
    iv.cut = ks.cut;
    iv.singular_values.assign(ks.values.begin(), ks.values.begin() + std::min<std::size_t>(8, ks.values.size()));

    std::size_t rest = ks.values.size() - ks.cut.count;
    if (rest % 2 != 0) throw SymmetryError("odd number of non-kernel singular values under odd time reversal");
    double split = 0.0;
    for (std::size_t i = ks.cut.count; i + 1 < ks.values.size(); i += 2) {
        double a = ks.values[i], b = ks.values[i + 1];
        split = std::max(split, std::abs(b - a) / std::max(b, 1e-300));
    }
    iv.kramers_splitting = split;
    if (split > opt.kramers_tol)
        throw SymmetryError("Kramers degeneracy violated: relative splitting " + std::to_string(split));

    long n = long(localized_count(F.occupied * ks.right, mask));
    iv.kernel_value = n;
    iv.raw = double(n);
    iv.value = n % 2;
    return iv;
}

void validate_window(const EdgeWindow& w, double mu, const RVec& bulk) {
    if (!(w.a < mu && mu < w.b)) throw ConfigError("edge window must contain mu");
    for (Eigen::Index i = 0; i < bulk.size(); ++i)
        if (bulk(i) > w.a && bulk(i) < w.b)
            throw ConfigError("edge window intersects the bulk spectrum at " + std::to_string(bulk(i)));
}

EdgeUnitary edge_unitary(const LatticeOperator& H, const EdgeWindow& w) {
    if (!(w.a < w.b)) throw ConfigError("edge window must satisfy a < b");
    auto e = eigh(H.m);
    std::vector<Eigen::Index> sel;
    for (Eigen::Index i = 0; i < e.w.size(); ++i)
        if (e.w(i) > w.a && e.w(i) < w.b) sel.push_back(i);
    EdgeUnitary eu;
    eu.rank = sel.size();
    eu.U.geom = H.geom;
    eu.U.m = CMat::Identity(H.m.rows(), H.m.cols());
    if (!sel.empty()) {
        CMat V = e.v(Eigen::all, sel);
        CVec ph(sel.size());
        for (std::size_t k = 0; k < sel.size(); ++k)
            ph(k) = std::polar(1.0, -2.0 * std::numbers::pi * (e.w(sel[k]) - w.a) / (w.b - w.a)) - 1.0;
        eu.U.m += V * ph.asDiagonal() * V.adjoint();
    }
    eu.unitarity_defect = (eu.U.m.adjoint() * eu.U.m - CMat::Identity(H.m.rows(), H.m.cols())).cwiseAbs().maxCoeff();
    if (eu.unitarity_defect > 1e-10) throw std::runtime_error("edge unitary deviates from unitarity");
    return eu;
}

double edge_conductance(const LatticeOperator& U, const ConductanceOptions& opt) {
    const auto& g = U.geom;
    if (g.d != 2) throw std::invalid_argument("edge conductance implemented for d = 2");
    double half = 0.5 * double(g.L[0]);
    if (double(opt.margin) >= half) throw ConfigError("conductance window empty: margin >= L1/2");
    long rows = opt.edge_rows > 0 ? opt.edge_rows : std::max<long>(1, g.L[1] / 2);
    double o1 = default_origin(g, 0);
    RVec x(g.dim());
    std::vector<char> win(g.dim(), 0);
    std::vector<long> cols;
    for (std::size_t s = 0; s < g.sites(); ++s) {
        auto loc = g.site(s);
        double x1 = double(loc[0] + g.offset[0]) - o1;
        bool in = std::abs(x1) <= half - double(opt.margin) && loc[1] >= g.L[1] - rows;
        if (in) cols.push_back(loc[0]);
        for (int k = 0; k < g.nu; ++k) {
            x(s * g.nu + k) = x1;
            win[s * g.nu + k] = in;
        }
    }
    std::sort(cols.begin(), cols.end());
    double length = double(std::unique(cols.begin(), cols.end()) - cols.begin());
    // diag(U* [X1, U])_ii = sum_k |U_ki|^2 x_k - x_i
    double tr = 0.0;
    for (Eigen::Index i = 0; i < U.m.cols(); ++i) {
        if (!win[i]) continue;
        tr += (U.m.col(i).cwiseAbs2().array() * x.array()).sum() - x(i);
    }
    return -tr / length;
}

double semifinite_trace(const std::vector<LatticeOperator>& family, const std::vector<double>& weights) {
    if (family.empty()) throw std::invalid_argument("semifinite_trace: empty sample set");
    if (weights.size() != family.size()) throw std::invalid_argument("semifinite_trace: weight count mismatch");
    double acc = 0.0, wsum = 0.0;
    for (std::size_t s = 0; s < family.size(); ++s) {
        acc += weights[s] * family[s].m.trace().real() / double(family[s].geom.nu);
        wsum += weights[s];
    }
    return acc / wsum;
}

LatticeOperator frame_operator(const LatticeGeometry& g, const std::vector<long>& m) {
    LatticeOperator op{g, CMat::Zero(g.dim(), g.dim()), true};
    std::vector<long> loc(g.d);
    for (int j = 0; j < g.d; ++j) loc[j] = m[j] - g.offset[j];
    std::size_t s = g.site_index(loc);
    for (int k = 0; k < g.nu; ++k) op.m(s * g.nu + k, s * g.nu + k) = 1.0;
    return op;
}

LatticeOperator resolvent_power(const LatticeGeometry& g, double sexp) {
    LatticeOperator op{g, CMat::Zero(g.dim(), g.dim()), true};
    for (std::size_t s = 0; s < g.sites(); ++s) {
        auto x = g.absolute(g.site(s));
        double r2 = 0.0;
        for (int j = 0; j < g.d; ++j) {
            double v = double(x[j]) - default_origin(g, j);
            r2 += v * v;
        }
        double val = std::pow(1.0 + r2, -0.5 * sexp);
        for (int k = 0; k < g.nu; ++k) op.m(s * g.nu + k, s * g.nu + k) = val;
    }
    return op;
}

EdgeFlow edge_spectral_flow(const Element& h, std::size_t omega_pt, long L1, long L2, double mu, int steps,
                            double window, Exec exec) {
    if (steps < 4) throw ConfigError("edge flow needs at least 4 twist steps");
    LatticeGeometry g = LatticeGeometry::open({L1, L2}, h.context()->nu);
    g.bc[0] = Axis::Periodic;
    struct Slice {
        RVec e;
        CMat v;
    };
    std::vector<Slice> slices(steps + 1);
    auto solve = [&](int s) {
        LatticeGeometry gs = g;
        // half-step offset keeps the grid off the symmetric twists where top and bottom states can meet at mu
        gs.twist[0] = 2.0 * std::numbers::pi * (double(s) + 0.5) / double(steps);
        auto op = represent(h, omega_pt, gs, Exec::Serial);
        auto e = eigh(op.m);
        std::vector<Eigen::Index> keep;
        for (Eigen::Index i = 0; i < e.w.size(); ++i)
            if (std::abs(e.w(i) - mu) < window) keep.push_back(i);
        slices[s].e = e.w(keep);
        slices[s].v = e.v(Eigen::all, keep);
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int s = 0; s <= steps; ++s) solve(s);
    } else {
        for (int s = 0; s <= steps; ++s) solve(s);
    }

    // top-edge weight: rows x2 >= L2/2
    std::vector<char> top(g.dim(), 0);
    for (std::size_t site = 0; site < g.sites(); ++site)
        if (g.site(site)[1] >= L2 / 2)
            for (int k = 0; k < g.nu; ++k) top[site * g.nu + k] = 1;

    EdgeFlow flow;
    for (int s = 0; s < steps; ++s) {
        const auto& A = slices[s];
        const auto& B = slices[s + 1];
        if (A.e.size() == 0) continue;
        CMat ov = B.v.adjoint() * A.v;  // rows: states at s+1
        for (Eigen::Index a = 0; a < A.e.size(); ++a) {
            double wt = 0.0;
            for (Eigen::Index i = 0; i < A.v.rows(); ++i)
                if (top[i]) wt += std::norm(A.v(i, a));
            if (wt <= 0.5) continue;
            double below = 0.0, above = 0.0;
            for (Eigen::Index b = 0; b < B.e.size(); ++b) (B.e(b) < mu ? below : above) += std::norm(ov(b, a));
            bool was_below = A.e(a) < mu;
            if (was_below && above > below) {
                ++flow.crossings;
                ++flow.signed_crossings;
            } else if (!was_below && below > above) {
                ++flow.crossings;
                --flow.signed_crossings;
            }
        }
    }
    return flow;
}

}  // namespace bulkedge
