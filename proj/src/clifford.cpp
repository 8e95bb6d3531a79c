#include "bulkedge/clifford.hpp"

#include <algorithm>
#include <map>

namespace bulkedge {

namespace {

void check_dim(int d) {
    if (d < 1 || d > kMaxCliffordDim)
        throw SizeLimitError("Clifford dimension " + std::to_string(d) + " outside [1, " +
                             std::to_string(kMaxCliffordDim) + "]");
}

std::map<std::vector<int>, std::size_t> basis_index(const std::vector<std::vector<int>>& basis) {
    std::map<std::vector<int>, std::size_t> idx;
    for (std::size_t k = 0; k < basis.size(); ++k) idx[basis[k]] = k;
    return idx;
}

int count_below(const std::vector<int>& w, int j) {
    return int(std::count_if(w.begin(), w.end(), [j](int v) { return v < j; }));
}

}  // namespace

std::vector<std::vector<int>> exterior_basis(int d) {
    std::vector<std::vector<int>> basis;
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
        std::vector<int> w;
        for (int j = 0; j < d; ++j)
            if (mask & (1u << j)) w.push_back(j + 1);
        basis.push_back(w);
    }
    std::sort(basis.begin(), basis.end());
    return basis;
}

CliffordBimodule build_exterior_rep(int d) {
    check_dim(d);
    auto basis = exterior_basis(d);
    auto idx = basis_index(basis);
    std::size_t n = basis.size();

    CliffordBimodule cb;
    cb.d = d;
    cb.grading = IntMat(n, n);
    for (std::size_t k = 0; k < n; ++k) cb.grading(k, k) = basis[k].size() % 2 ? -1 : 1;

    for (int j = 1; j <= d; ++j) {
        IntMat wedge(n, n), contr(n, n);
        for (std::size_t k = 0; k < n; ++k) {
            const auto& w = basis[k];
            int sign = count_below(w, j) % 2 ? -1 : 1;
            auto pos = std::lower_bound(w.begin(), w.end(), j);
            std::vector<int> v = w;
            if (pos != w.end() && *pos == j) {
                v.erase(v.begin() + (pos - w.begin()));
                contr(idx.at(v), k) = sign;
            } else {
                v.insert(v.begin() + (pos - w.begin()), j);
                wedge(idx.at(v), k) = sign;
            }
        }
        cb.gamma.push_back(wedge + contr);
        cb.rho.push_back(wedge - contr);
    }
    return cb;
}

int orientation_sign(const std::vector<int>& sigma) {
    int d = int(sigma.size());
    std::vector<int> seen(d + 1, 0);
    for (int s : sigma) {
        if (s < 1 || s > d || seen[s]) throw std::invalid_argument("orientation_sign: not a permutation");
        seen[s] = 1;
    }
    auto cb = build_exterior_rep(d);
    IntMat omega = IntMat::identity(cb.dim()), permuted = IntMat::identity(cb.dim());
    for (int j = 0; j < d; ++j) {
        omega = omega * cb.rho[j];
        permuted = permuted * cb.rho[sigma[j] - 1];
    }
    for (std::size_t i = 0; i < omega.rows(); ++i)
        for (std::size_t k = 0; k < omega.cols(); ++k)
            if (omega(i, k) != 0) {
                int s = permuted(i, k) * omega(i, k);
                if (!(permuted == omega * s)) throw std::logic_error("orientation_sign: not a scalar multiple");
                return s;
            }
    throw std::logic_error("orientation_sign: vanishing orientation");
}

CliffordBimodule graded_tensor(const CliffordBimodule& a, const CliffordBimodule& b) {
    check_dim(a.d + b.d);
    CliffordBimodule cb;
    cb.d = a.d + b.d;
    IntMat ia = IntMat::identity(a.dim()), ib = IntMat::identity(b.dim());
    for (int j = 0; j < a.d; ++j) {
        cb.gamma.push_back(kron(a.gamma[j], ib));
        cb.rho.push_back(kron(a.rho[j], ib));
    }
    for (int j = 0; j < b.d; ++j) {
        cb.gamma.push_back(kron(a.grading, b.gamma[j]));
        cb.rho.push_back(kron(a.grading, b.rho[j]));
    }
    cb.grading = kron(a.grading, b.grading);
    return cb;
}

IntMat relabel_operator(const std::vector<int>& sigma) {
    int d = int(sigma.size());
    auto basis = exterior_basis(d);
    auto idx = basis_index(basis);
    IntMat xi(basis.size(), basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) {
        std::vector<int> img;
        for (int j : basis[k]) img.push_back(sigma.at(j - 1));
        // Sorting e_{sigma(i1)} ^ ... ^ e_{sigma(ik)} costs the parity of the inversions.
        int inv = 0;
        for (std::size_t p = 0; p < img.size(); ++p)
            for (std::size_t q = p + 1; q < img.size(); ++q)
                if (img[p] > img[q]) ++inv;
        std::sort(img.begin(), img.end());
        xi(idx.at(img), k) = inv % 2 ? -1 : 1;
    }
    return xi;
}

KODegree make_degree(int j, Field field) {
    KODegree k{0, field};
    int m = k.modulus();
    k.j = ((j % m) + m) % m;
    return k;
}

KODegree abs_degree(KODegree j, int d) { return make_degree(j.j - d, j.field); }

}  // namespace bulkedge
