#pragma once
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace bulkedge::oracle {

struct BlochParams {
    double t = 1.0, t2 = 0.1, phi = 1.5707963267948966, M = 0.0, r = 0.0, mu = 0.0;
};

using BlochMatrix = std::function<Eigen::MatrixXcd(double, double)>;

// Closed-form Bloch Hamiltonians, psi_n = e^{i k.n} u.
Eigen::MatrixXcd haldane_bloch(const BlochParams& p, double k1, double k2);
Eigen::MatrixXcd kane_mele_bloch(const BlochParams& p, double k1, double k2);

struct BerryResult {
    double chern = 0.0;        // plaquette sum / 2 pi, before rounding
    long rounded = 0;
    int grid = 0;
    double min_direct_gap = 0.0;
    double max_flux = 0.0;     // largest |plaquette phase|, should stay well below pi
};

// Lattice field-strength (plaquette) Chern number of the bands below mu.
BerryResult berry_chern(const BlochMatrix& h, double mu, int grid);

struct CylinderBands {
    std::vector<double> k;
    std::vector<Eigen::VectorXd> energies;
    long top_crossings = 0;         // unsigned crossings of mu by top-edge states over the zone
    long top_signed = 0;
    double min_bulk_gap = 0.0;      // smallest |E - mu| among states not at either edge
    long kramers_pairs() const { return top_crossings / 2; }
};

// Cylinder periodic in x1 (momentum k), open in x2 with `rows` cells.
CylinderBands haldane_cylinder(const BlochParams& p, int rows, int nk);
CylinderBands kane_mele_cylinder(const BlochParams& p, int rows, int nk);

}  // namespace bulkedge::oracle
