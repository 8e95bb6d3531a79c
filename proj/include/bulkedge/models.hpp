#pragma once
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>

#include "bulkedge/clifford.hpp"
#include "bulkedge/crossed.hpp"
#include "bulkedge/rep.hpp"

namespace bulkedge {

struct SymmetryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Element = CrossedElement<cplx>;
using CoeffMat = Mat<cplx>;

enum class Parity { None, Even, Odd };

// Anti-unitary symmetries are U K with U acting on the internal space of one cell.
struct SymmetryData {
    Parity trs = Parity::None;
    CoeffMat trs_u;
    Parity phs = Parity::None;
    CoeffMat phs_u;
    bool chiral = false;
    CoeffMat chiral_op;
};

// Table lookup from the symmetry flags; throws SymmetryError on inconsistent flags.
KODegree classify(Parity trs, Parity phs, bool chiral);
KODegree classify(const SymmetryData& sym);
// Checks the stated parities against the operators, then classifies.
void verify_symmetry_operators(const SymmetryData& sym);

struct ModelParams {
    double t = 1.0;
    double t2 = 0.1;
    double phi = 1.5707963267948966;
    double M = 0.0;
    double r = 0.0;   // Rashba splitting
    double mu = 0.0;
};

// Honeycomb, two-site cells (A, B) on Z^2.  Bravais a1 = (1, 0), a2 = (1/2, sqrt3/2);
// B sits at (1/2, sqrt3/6) inside the cell.
struct HoneycombTables {
    // A(n) couples to B(n - delta)
    static constexpr long nn[3][2] = {{0, 0}, {1, 0}, {0, 1}};
    // counterclockwise second-neighbour vectors
    static constexpr long nnn[3][2] = {{1, 0}, {-1, 1}, {0, -1}};
};

Element haldane(const ModelParams& p, const DisorderSpace& space);

// Nearest-neighbour Rashba block, antisymmetric as a lattice matrix.
Element rashba_block(double r, const ContextPtr& ctx2);

struct KaneMele {
    Element h;
    SymmetryData sym;
};

KaneMele kane_mele(const Element& h, double r, const DisorderSpace& space);
KaneMele kane_mele_with_block(const Element& h, const Element& g, const DisorderSpace& space);

// Site-local insulator with staggered mass M (nu = 2), optionally spin doubled.
Element atomic_limit(const ModelParams& p, const DisorderSpace& space);

// Full anti-unitary matrix I_sites (x) U for a geometry.
CMat lattice_unitary(const CoeffMat& u, const LatticeGeometry& g);
// max |U conj(A) U^* - A|
double antiunitary_defect(const CMat& a, const CoeffMat& u, const LatticeGeometry& g);

}  // namespace bulkedge
