#pragma once
#include <Eigen/Dense>

namespace bulkedge {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

struct Eigh {
    RVec w;  // ascending
    CMat v;  // columns are eigenvectors
};

// Dense Hermitian eigensolver (LAPACK divide and conquer).
Eigh eigh(const CMat& h);
RVec eigvalsh(const CMat& h);

struct Svd {
    CMat u;
    RVec s;  // descending
    CMat v;  // a = u * diag(s) * v^*
};

Svd svd(const CMat& a);

double hermiticity_defect(const CMat& a);

}  // namespace bulkedge
