#pragma once
#include <stdexcept>
#include <vector>

#include "bulkedge/smallmat.hpp"

namespace bulkedge {

struct SizeLimitError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

constexpr int kMaxCliffordDim = 12;

// Generators of Cl_{d,0} (gamma, square +1) and Cl_{0,d} (rho, square -1) on the
// exterior algebra, together with the parity grading.
struct CliffordBimodule {
    int d = 0;
    std::vector<IntMat> gamma;
    std::vector<IntMat> rho;
    IntMat grading;

    std::size_t dim() const { return grading.rows(); }
};

// Subsets of {1..d} in lexicographic order of their increasing tuples.
std::vector<std::vector<int>> exterior_basis(int d);

CliffordBimodule build_exterior_rep(int d);

// Sign s with rho^{sigma(1)}...rho^{sigma(d)} = s * rho^1...rho^d; sigma is 1-based.
int orientation_sign(const std::vector<int>& sigma);

CliffordBimodule graded_tensor(const CliffordBimodule& a, const CliffordBimodule& b);

// Signed permutation of the exterior basis induced by e_j -> e_{sigma(j)}; conjugation
// sends gamma^j to gamma^{sigma(j)} and rho^j to rho^{sigma(j)}.
IntMat relabel_operator(const std::vector<int>& sigma);

enum class Field { Real, Complex };

struct KODegree {
    int j = 0;
    Field field = Field::Real;

    int modulus() const { return field == Field::Real ? 8 : 2; }
    friend bool operator==(const KODegree&, const KODegree&) = default;
};

KODegree make_degree(int j, Field field);
KODegree abs_degree(KODegree j, int d);

}  // namespace bulkedge
