#include "bulkedge/linalg.hpp"

#include <complex>
#include <stdexcept>
#include <string>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace bulkedge {

namespace {

Eigh run_heevd(const CMat& h, char jobz) {
    if (h.rows() != h.cols()) throw std::invalid_argument("eigh: matrix not square");
    Eigh r;
    lapack_int n = lapack_int(h.rows());
    r.w.resize(n);
    if (n == 0) return r;
    CMat a = h;
    lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, jobz, 'L', n, a.data(), n, r.w.data());
    if (info != 0) throw std::runtime_error("zheevd failed, info=" + std::to_string(info));
    if (jobz == 'V') r.v = std::move(a);
    return r;
}

}  // namespace

Eigh eigh(const CMat& h) { return run_heevd(h, 'V'); }

RVec eigvalsh(const CMat& h) { return run_heevd(h, 'N').w; }

Svd svd(const CMat& a) {
    lapack_int m = lapack_int(a.rows()), n = lapack_int(a.cols());
    lapack_int k = std::min(m, n);
    Svd r;
    r.s.resize(k);
    if (k == 0) return r;
    CMat work = a;
    r.u.resize(m, k);
    CMat vt(k, n);
    lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'S', m, n, work.data(), m, r.s.data(), r.u.data(), m,
                                     vt.data(), k);
    if (info != 0) throw std::runtime_error("zgesdd failed, info=" + std::to_string(info));
    r.v = vt.adjoint();
    return r;
}

double hermiticity_defect(const CMat& a) { return (a - a.adjoint()).cwiseAbs().maxCoeff(); }

}  // namespace bulkedge
