#pragma once
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "bulkedge/scalar.hpp"

namespace bulkedge {

// Row-major dense matrix over an arbitrary scalar ring; used for exact data
// (Clifford generators, crossed-product coefficients).
template <class S>
class Mat {
public:
    Mat() = default;
    Mat(std::size_t r, std::size_t c) : r_(r), c_(c), a_(r * c, S(0)) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    S& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const S& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
    const std::vector<S>& data() const { return a_; }

    bool is_zero() const {
        for (const auto& v : a_)
            if (!ScalarTraits<S>::is_zero(v)) return false;
        return true;
    }

    Mat adjoint() const {
        Mat m(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) m(j, i) = ScalarTraits<S>::conj((*this)(i, j));
        return m;
    }

    Mat transpose() const {
        Mat m(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    Mat conj() const {
        Mat m(r_, c_);
        for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = ScalarTraits<S>::conj(a_[k]);
        return m;
    }

    Mat& operator+=(const Mat& o) {
        check_same(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        check_same(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    Mat& operator*=(const S& s) {
        for (auto& v : a_) v *= s;
        return *this;
    }
    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(Mat a, const S& s) { return a *= s; }
    friend Mat operator*(const S& s, Mat a) { return a *= s; }
    Mat operator-() const {
        Mat m(r_, c_);
        for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = S(0) - a_[k];
        return m;
    }

    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.c_ != b.r_) throw std::invalid_argument("Mat: inner dimension mismatch");
        Mat m(a.r_, b.c_);
        for (std::size_t i = 0; i < a.r_; ++i)
            for (std::size_t k = 0; k < a.c_; ++k) {
                const S& x = a(i, k);
                if (ScalarTraits<S>::is_zero(x)) continue;
                for (std::size_t j = 0; j < b.c_; ++j) m(i, j) += x * b(k, j);
            }
        return m;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }

private:
    void check_same(const Mat& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("Mat: shape mismatch");
    }
    std::size_t r_ = 0, c_ = 0;
    std::vector<S> a_;
};

template <class S>
Mat<S> kron(const Mat<S>& a, const Mat<S>& b) {
    Mat<S> m(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (ScalarTraits<S>::is_zero(a(i, j))) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return m;
}

template <class T, class S>
Mat<T> convert(const Mat<S>& m) {
    Mat<T> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = T(m(i, j));
    return out;
}

using IntMat = Mat<int>;

}  // namespace bulkedge
