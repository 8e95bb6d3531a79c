#include "bulkedge/oracles.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace bulkedge::oracle {

namespace {

using C = std::complex<double>;
using MatC = Eigen::MatrixXcd;
constexpr double kPi = std::numbers::pi;
const C I(0.0, 1.0);

// Real-space hopping amplitudes <R + delta| H |R> of one model, with delta = (d1, d2).
struct Hop {
    int d1, d2;
    MatC v;
};

std::vector<Hop> haldane_hops(const BlochParams& p) {
    std::vector<Hop> hops;
    auto m2 = [] { return MatC::Zero(2, 2).eval(); };
    MatC onsite = m2();
    onsite(0, 0) = p.M;
    onsite(1, 1) = -p.M;
    hops.push_back({0, 0, onsite});
    // A(R) - B(R - delta), delta in {0, e1, e2}
    int nn[3][2] = {{0, 0}, {1, 0}, {0, 1}};
    for (auto& d : nn) {
        MatC f = m2(), b = m2();
        f(0, 1) = p.t;
        b(1, 0) = p.t;
        hops.push_back({d[0], d[1], f});
        hops.push_back({-d[0], -d[1], b});
    }
    int nnn[3][2] = {{1, 0}, {-1, 1}, {0, -1}};
    for (auto& d : nnn) {
        MatC f = m2(), b = m2();
        f(0, 0) = p.t2 * std::exp(-I * p.phi);
        f(1, 1) = p.t2 * std::exp(I * p.phi);
        b(0, 0) = std::conj(f(0, 0));
        b(1, 1) = std::conj(f(1, 1));
        hops.push_back({d[0], d[1], f});
        hops.push_back({-d[0], -d[1], b});
    }
    return hops;
}

std::vector<Hop> kane_mele_hops(const BlochParams& p) {
    auto h = haldane_hops(p);
    std::vector<Hop> hops;
    for (const auto& x : h) {
        MatC v = MatC::Zero(4, 4);
        v.block(0, 0, 2, 2) = x.v;
        v.block(2, 2, 2, 2) = x.v.conjugate();
        hops.push_back({x.d1, x.d2, v});
    }
    // Rashba: i (r/3) (d_y + i d_x) between up-A and down-B along each bond, d from B to A
    const double s3 = std::sqrt(3.0);
    double bpos[3][2] = {{0.5, s3 / 6.0}, {-0.5, s3 / 6.0}, {0.0, -s3 / 3.0}};
    int nn[3][2] = {{0, 0}, {1, 0}, {0, 1}};
    for (int b = 0; b < 3; ++b) {
        double nrm = std::hypot(bpos[b][0], bpos[b][1]);
        double dx = -bpos[b][0] / nrm, dy = -bpos[b][1] / nrm;
        C g = I * (p.r / 3.0) * C(dy, dx);
        MatC f = MatC::Zero(4, 4), bw = MatC::Zero(4, 4);
        // g couples A(R) <- B(R - delta) with amplitude g and B <- A with -g (antisymmetric)
        f(0, 3) = g;                 // up A  <- down B
        f(2, 1) = -std::conj(g);     // down A <- up B   (g* block)
        bw(1, 2) = -g;               // up B  <- down A
        bw(3, 0) = std::conj(g);     // down B <- up A
        hops.push_back({nn[b][0], nn[b][1], f});
        hops.push_back({-nn[b][0], -nn[b][1], bw});
    }
    return hops;
}

MatC bloch_from_hops(const std::vector<Hop>& hops, double k1, double k2) {
    const auto n = hops.front().v.rows();
    MatC h = MatC::Zero(n, n);
    for (const auto& x : hops) h += x.v * std::exp(-I * (k1 * x.d1 + k2 * x.d2));
    return h;
}

MatC cylinder_from_hops(const std::vector<Hop>& hops, int rows, double k) {
    const auto n = hops.front().v.rows();
    MatC h = MatC::Zero(n * rows, n * rows);
    for (int y = 0; y < rows; ++y)
        for (const auto& x : hops) {
            int y2 = y + x.d2;
            if (y2 < 0 || y2 >= rows) continue;
            h.block(y2 * n, y * n, n, n) += x.v * std::exp(-I * k * double(x.d1));
        }
    return h;
}

CylinderBands cylinder_bands(const std::vector<Hop>& hops, int rows, int nk, double mu) {
    const auto n = hops.front().v.rows();
    CylinderBands out;
    std::vector<MatC> vecs(nk + 1);
    out.energies.resize(nk + 1);
    out.k.resize(nk + 1);
    for (int s = 0; s <= nk; ++s) {
        out.k[s] = 2.0 * kPi * (s + 0.5) / nk;  // off the symmetric momenta
        Eigen::SelfAdjointEigenSolver<MatC> es(cylinder_from_hops(hops, rows, out.k[s]));
        out.energies[s] = es.eigenvalues();
        vecs[s] = es.eigenvectors();
    }
    auto weight_top = [&](const MatC& v, Eigen::Index c) {
        double w = 0.0;
        for (Eigen::Index i = (rows / 2) * n; i < v.rows(); ++i) w += std::norm(v(i, c));
        return w;
    };
    auto weight_edges = [&](const MatC& v, Eigen::Index c) {
        int band = std::max(1, rows / 4);
        double w = 0.0;
        for (Eigen::Index i = 0; i < v.rows(); ++i) {
            int y = int(i / n);
            if (y < band || y >= rows - band) w += std::norm(v(i, c));
        }
        return w;
    };
    out.min_bulk_gap = std::numeric_limits<double>::infinity();
    for (int s = 0; s <= nk; ++s)
        for (Eigen::Index c = 0; c < out.energies[s].size(); ++c)
            if (weight_edges(vecs[s], c) < 0.5)
                out.min_bulk_gap = std::min(out.min_bulk_gap, std::abs(out.energies[s](c) - mu));

    for (int s = 0; s < nk; ++s) {
        const auto& ea = out.energies[s];
        const auto& eb = out.energies[s + 1];
        MatC ov = vecs[s + 1].adjoint() * vecs[s];
        for (Eigen::Index a = 0; a < ea.size(); ++a) {
            if (weight_top(vecs[s], a) <= 0.5) continue;
            double below = 0.0, above = 0.0;
            for (Eigen::Index b = 0; b < eb.size(); ++b) (eb(b) < mu ? below : above) += std::norm(ov(b, a));
            if (ea(a) < mu && above > below) {
                ++out.top_crossings;
                ++out.top_signed;
            } else if (ea(a) >= mu && below > above) {
                ++out.top_crossings;
                --out.top_signed;
            }
        }
    }
    return out;
}

}  // namespace

Eigen::MatrixXcd haldane_bloch(const BlochParams& p, double k1, double k2) {
    // f(k) = t (1 + e^{-i k1} + e^{-i k2}); diagonal 2 t2 sum_b cos(k.b +- phi) +- M
    MatC h(2, 2);
    C f = p.t * (1.0 + std::exp(-I * k1) + std::exp(-I * k2));
    double bs[3][2] = {{1, 0}, {-1, 1}, {0, -1}};
    double aa = p.M, bb = -p.M;
    for (auto& b : bs) {
        double kb = k1 * b[0] + k2 * b[1];
        aa += 2.0 * p.t2 * std::cos(kb + p.phi);
        bb += 2.0 * p.t2 * std::cos(kb - p.phi);
    }
    h << aa, f, std::conj(f), bb;
    return h;
}

Eigen::MatrixXcd kane_mele_bloch(const BlochParams& p, double k1, double k2) {
    return bloch_from_hops(kane_mele_hops(p), k1, k2);
}

BerryResult berry_chern(const BlochMatrix& h, double mu, int grid) {
    BerryResult r;
    r.grid = grid;
    r.min_direct_gap = std::numeric_limits<double>::infinity();
    std::vector<MatC> occ(std::size_t(grid) * grid);
    Eigen::Index nocc = -1;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            Eigen::SelfAdjointEigenSolver<MatC> es(h(2.0 * kPi * i / grid, 2.0 * kPi * j / grid));
            const auto& e = es.eigenvalues();
            Eigen::Index n = (e.array() < mu).count();
            if (nocc >= 0 && n != nocc) throw std::runtime_error("berry_chern: band count below mu varies; no gap");
            nocc = n;
            r.min_direct_gap = std::min(r.min_direct_gap, (e.array() - mu).abs().minCoeff());
            occ[std::size_t(i) * grid + j] = es.eigenvectors().leftCols(n);
        }
    auto at = [&](int i, int j) -> const MatC& { return occ[std::size_t((i + grid) % grid) * grid + (j + grid) % grid]; };
    auto link = [&](const MatC& a, const MatC& b) {
        C d = (a.adjoint() * b).determinant();
        return d / std::abs(d);
    };
    double total = 0.0;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            C u = link(at(i, j), at(i + 1, j)) * link(at(i + 1, j), at(i + 1, j + 1)) *
                  link(at(i + 1, j + 1), at(i, j + 1)) * link(at(i, j + 1), at(i, j));
            double f = std::arg(u);
            r.max_flux = std::max(r.max_flux, std::abs(f));
            total += f;
        }
    r.chern = total / (2.0 * kPi);
    r.rounded = std::lround(r.chern);
    return r;
}

CylinderBands haldane_cylinder(const BlochParams& p, int rows, int nk) {
    return cylinder_bands(haldane_hops(p), rows, nk, p.mu);
}

CylinderBands kane_mele_cylinder(const BlochParams& p, int rows, int nk) {
    return cylinder_bands(kane_mele_hops(p), rows, nk, p.mu);
}

}  // namespace bulkedge::oracle
