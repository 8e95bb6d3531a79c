#pragma once
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bulkedge/models.hpp"
#include "bulkedge/rep.hpp"

namespace bulkedge {

struct GapClosedError : std::runtime_error {
    double eigenvalue;
    GapClosedError(const std::string& msg, double e) : std::runtime_error(msg), eigenvalue(e) {}
};

struct InconclusiveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FermiProjection {
    CMat P;
    CMat occupied;  // orthonormal basis of ran P
    double mu = 0.0;
    double gap = 0.0;  // min |E - mu|
    RVec energies;
    LatticeGeometry geom;
};

FermiProjection fermi_projection(const LatticeOperator& H, double mu, double gap_min);

// Bulk gap on a periodic torus; throws GapClosedError below gap_min.
double verify_bulk_gap(const Element& h, std::size_t omega_pt, const std::vector<long>& L, double mu, double gap_min);

enum class IndexKind { Integer, Z2, Unsupported };
std::string to_string(IndexKind k);
IndexKind index_kind(const KODegree& deg);

struct KernelCut {
    std::size_t count = 0;   // number of singular values classified as kernel
    double ratio = 0.0;      // gap ratio at the chosen cut
    double below = 0.0;      // largest kernel value (0 if none)
    double above = 0.0;      // smallest excluded value
};

// Largest relative gap among the sorted values below `ceiling`; the empty cut compares
// the smallest value with `floor`.  Throws InconclusiveError below `min_ratio`.
KernelCut adaptive_kernel_cut(const std::vector<double>& ascending, double ceiling = 0.5, double floor = 1e-2,
                              double min_ratio = 10.0);

struct IndexValue {
    KODegree degree;
    IndexKind kind = IndexKind::Unsupported;
    long value = 0;
    double raw = 0.0;          // pre-rounding trace (integer case)
    double residual = 0.0;
    long kernel_value = 0;     // cross-check from origin-localized near-kernel counting
    KernelCut cut;
    std::vector<double> singular_values;  // smallest few, ascending
    double kramers_splitting = 0.0;
};

struct IndexOptions {
    std::optional<double> disk_radius;  // default: min(L)/2 - 2
    double residual_max = 0.1;
    double kramers_tol = 1e-6;
    double trs_tol = 1e-8;
};

// Phase of X1 + i X2 on an open box (no site may sit at the origin), tensored with 1_nu.
RVec phase_diagonal_angle(const LatticeGeometry& g);
CVec phase_diagonal(const LatticeGeometry& g);
std::vector<char> disk_mask(const LatticeGeometry& g, double radius);

IndexValue chern_index(const FermiProjection& P, const IndexOptions& opt = {});
IndexValue z2_index(const FermiProjection& P, const SymmetryData& sym, const IndexOptions& opt = {});

struct EdgeWindow {
    double a = -0.3, b = 0.3;  // Delta = (a, b)
    long depth = 0;            // half-space keeps x_d <= depth
};

void validate_window(const EdgeWindow& w, double mu, const RVec& bulk_spectrum);

struct EdgeUnitary {
    LatticeOperator U;
    std::size_t rank = 0;        // rank of P_Delta
    double unitarity_defect = 0.0;
};

EdgeUnitary edge_unitary(const LatticeOperator& H_half, const EdgeWindow& window);

struct ConductanceOptions {
    long margin = 12;          // along-edge cut on each side
    long edge_rows = -1;       // rows below the boundary kept transversally; default half the depth
};

double edge_conductance(const LatticeOperator& U, const ConductanceOptions& opt = {});

// Weighted average over samples of Tr(op)/nu.
double semifinite_trace(const std::vector<LatticeOperator>& family, const std::vector<double>& weights);

// Frame projection onto site m (rank nu) and the resolvent power (1 + |X|^2)^{-s/2}.
LatticeOperator frame_operator(const LatticeGeometry& g, const std::vector<long>& m);
LatticeOperator resolvent_power(const LatticeGeometry& g, double s);

struct EdgeFlow {
    long crossings = 0;       // unsigned crossings of mu by top-edge states over one twist period
    long signed_crossings = 0;
    long pairs() const { return crossings / 2; }
};

// Spectral flow of states localized at the top edge of a cylinder (periodic x1 with a
// twisted boundary, open x2) as the twist runs over [0, 2 pi).
EdgeFlow edge_spectral_flow(const Element& h, std::size_t omega_pt, long L1, long L2, double mu, int steps,
                            double window, Exec exec = Exec::Parallel);

}  // namespace bulkedge
