#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "weitz/rational.hpp"
#include "weitz/scalar.hpp"

namespace weitz {

inline bool fe_zero(const Rat& x) { return sgn(x) == 0; }
inline bool fe_zero(const Scalar& x) { return x.is_zero(); }
inline Rat fe_inv(const Rat& x) { return 1 / x; }
inline Scalar fe_inv(const Scalar& x) { return x.inverse(); }

/// Dense matrix over an exact field (Rat or Scalar). Row-major.
template <class T>
class Mat {
public:
    Mat() = default;
    Mat(size_t rows, size_t cols) : r_(rows), c_(cols), d_(rows * cols) {}

    static Mat identity(size_t n) {
        Mat m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    bool empty() const { return d_.empty(); }

    T& operator()(size_t i, size_t j) { return d_[i * c_ + j]; }
    const T& operator()(size_t i, size_t j) const { return d_[i * c_ + j]; }

    bool is_zero() const {
        for (const auto& x : d_)
            if (!fe_zero(x)) return false;
        return true;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.d_ == b.d_;
    }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

    Mat& operator+=(const Mat& o) {
        for (size_t k = 0; k < d_.size(); ++k)
            if (!fe_zero(o.d_[k])) d_[k] += o.d_[k];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        for (size_t k = 0; k < d_.size(); ++k)
            if (!fe_zero(o.d_[k])) d_[k] -= o.d_[k];
        return *this;
    }
    Mat& operator*=(const T& s) {
        for (auto& x : d_) x *= s;
        return *this;
    }
    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(const T& s, Mat a) { return a *= s; }

    friend Mat operator*(const Mat& a, const Mat& b) {
        Mat out(a.r_, b.c_);
        for (size_t i = 0; i < a.r_; ++i)
            for (size_t k = 0; k < a.c_; ++k) {
                const T& aik = a(i, k);
                if (fe_zero(aik)) continue;
                for (size_t j = 0; j < b.c_; ++j) {
                    const T& bkj = b(k, j);
                    if (!fe_zero(bkj)) out(i, j) += aik * bkj;
                }
            }
        return out;
    }

    std::vector<T> apply(const std::vector<T>& v) const {
        std::vector<T> out(r_, T(0));
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j)
                if (!fe_zero((*this)(i, j)) && !fe_zero(v[j])) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    Mat transpose() const {
        Mat out(c_, r_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    T trace() const {
        T t(0);
        for (size_t i = 0; i < r_ && i < c_; ++i) t += (*this)(i, i);
        return t;
    }

    /// Kronecker product (this ⊗ other).
    Mat kron(const Mat& o) const {
        Mat out(r_ * o.r_, c_ * o.c_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j) {
                if (fe_zero((*this)(i, j))) continue;
                for (size_t k = 0; k < o.r_; ++k)
                    for (size_t l = 0; l < o.c_; ++l)
                        if (!fe_zero(o(k, l))) out(i * o.r_ + k, j * o.c_ + l) = (*this)(i, j) * o(k, l);
            }
        return out;
    }

    friend Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

private:
    size_t r_ = 0, c_ = 0;
    std::vector<T> d_;
};

using MatQ = Mat<Rat>;
using MatS = Mat<Scalar>;

inline MatS to_scalar(const MatQ& m) {
    MatS out(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) out(i, j) = Scalar(m(i, j));
    return out;
}

/// Exact rational view; throws if any entry is irrational or complex.
inline MatQ to_rational(const MatS& m) {
    MatQ out(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_rational();
    return out;
}

/// Reduced row echelon form in place; returns pivot column indices.
template <class T>
std::vector<size_t> rref(Mat<T>& m) {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        size_t sel = row;
        while (sel < m.rows() && fe_zero(m(sel, col))) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row)
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
        T inv = fe_inv(m(row, col));
        for (size_t j = col; j < m.cols(); ++j)
            if (!fe_zero(m(row, j))) m(row, j) *= inv;
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == row || fe_zero(m(i, col))) continue;
            T f = m(i, col);
            for (size_t j = col; j < m.cols(); ++j)
                if (!fe_zero(m(row, j))) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class T>
size_t rank(Mat<T> m) {
    return rref(m).size();
}

/// Basis of the null space { x : m x = 0 }, returned as matrix columns.
template <class T>
Mat<T> kernel(Mat<T> m) {
    auto pivots = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t p : pivots) is_pivot[p] = true;
    size_t nfree = m.cols() - pivots.size();
    Mat<T> basis(m.cols(), nfree);
    size_t k = 0;
    for (size_t col = 0; col < m.cols(); ++col) {
        if (is_pivot[col]) continue;
        basis(col, k) = T(1);
        for (size_t i = 0; i < pivots.size(); ++i) basis(pivots[i], k) = -m(i, col);
        ++k;
    }
    return basis;
}

/// Basis of the column space: the pivot columns of m, as matrix columns.
template <class T>
Mat<T> column_space_basis(const Mat<T>& m) {
    Mat<T> work = m;
    auto pivots = rref(work);
    Mat<T> out(m.rows(), pivots.size());
    for (size_t k = 0; k < pivots.size(); ++k)
        for (size_t i = 0; i < m.rows(); ++i) out(i, k) = m(i, pivots[k]);
    return out;
}

/// Solves a X = b (b may have several columns). Throws input_error when the
/// system is inconsistent; free variables are set to zero.
template <class T>
Mat<T> solve(const Mat<T>& a, const Mat<T>& b) {
    if (a.rows() != b.rows()) throw input_error("solve: shape mismatch");
    Mat<T> aug(a.rows(), a.cols() + b.cols());
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        for (size_t j = 0; j < b.cols(); ++j) aug(i, a.cols() + j) = b(i, j);
    }
    auto pivots = rref(aug);
    for (size_t p : pivots)
        if (p >= a.cols()) throw input_error("solve: inconsistent system");
    Mat<T> x(a.cols(), b.cols());
    for (size_t i = 0; i < pivots.size(); ++i)
        for (size_t j = 0; j < b.cols(); ++j) x(pivots[i], j) = aug(i, a.cols() + j);
    return x;
}

template <class T>
Mat<T> inverse(const Mat<T>& a) {
    if (a.rows() != a.cols()) throw input_error("inverse: not square");
    Mat<T> x = solve(a, Mat<T>::identity(a.rows()));
    if (!(a * x == Mat<T>::identity(a.rows()))) throw input_error("inverse: singular matrix");
    return x;
}

/// Gram-Schmidt orthogonalization (no normalization) of the columns of v
/// with respect to the symmetric bilinear form given by gram (or the dot
/// product when gram is empty). Returns the orthogonal basis as columns;
/// norms_out receives the squared norms.
template <class T>
Mat<T> orthogonalize_columns(const Mat<T>& v, std::vector<T>* norms_out,
                             const Mat<T>& gram = Mat<T>()) {
    auto ip = [&](const Mat<T>& m, size_t a, size_t b) {
        T s(0);
        if (gram.empty()) {
            for (size_t i = 0; i < m.rows(); ++i)
                if (!fe_zero(m(i, a)) && !fe_zero(m(i, b))) s += m(i, a) * m(i, b);
        } else {
            for (size_t i = 0; i < m.rows(); ++i) {
                if (fe_zero(m(i, a))) continue;
                for (size_t j = 0; j < m.rows(); ++j)
                    if (!fe_zero(gram(i, j)) && !fe_zero(m(j, b))) s += m(i, a) * gram(i, j) * m(j, b);
            }
        }
        return s;
    };
    Mat<T> u = v;
    std::vector<T> norms;
    for (size_t k = 0; k < u.cols(); ++k) {
        for (size_t p = 0; p < k; ++p) {
            if (fe_zero(norms[p])) continue;
            T coef = ip(u, k, p) * fe_inv(norms[p]);
            if (fe_zero(coef)) continue;
            for (size_t i = 0; i < u.rows(); ++i)
                if (!fe_zero(u(i, p))) u(i, k) -= coef * u(i, p);
        }
        norms.push_back(ip(u, k, k));
    }
    if (norms_out) *norms_out = std::move(norms);
    return u;
}

}  // namespace weitz
