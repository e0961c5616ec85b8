#pragma once

// Dense matrices over an exact field (Rational, QuadExt, Fp, NFElem) or over
// PrecComplex.  Sizes here are tiny (<= 22), so plain Gaussian elimination
// with exact pivots is the right tool.

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pfwb/numeric.hpp"
#include "pfwb/rational.hpp"

namespace pfwb {

template <class K>
struct Mat {
    int rows = 0, cols = 0;
    std::vector<K> a;

    Mat() = default;
    Mat(int r, int c, K fill = K(0)) : rows(r), cols(c), a(static_cast<size_t>(r) * c, fill) {}

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = K(1);
        return m;
    }
    static Mat from_rows(const std::vector<std::vector<K>>& rws) {
        Mat m(static_cast<int>(rws.size()), rws.empty() ? 0 : static_cast<int>(rws[0].size()));
        for (int i = 0; i < m.rows; ++i) {
            if (static_cast<int>(rws[i].size()) != m.cols) throw std::invalid_argument("ragged rows");
            for (int j = 0; j < m.cols; ++j) m(i, j) = rws[i][j];
        }
        return m;
    }

    K& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const K& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    bool is_square() const { return rows == cols; }

    friend bool operator==(const Mat& x, const Mat& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }

    friend Mat operator+(const Mat& x, const Mat& y) {
        Mat r = x;
        for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i] + y.a[i];
        return r;
    }
    friend Mat operator-(const Mat& x, const Mat& y) {
        Mat r = x;
        for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i] - y.a[i];
        return r;
    }
    friend Mat operator-(const Mat& x) {
        Mat r = x;
        for (auto& v : r.a) v = -v;
        return r;
    }
    friend Mat operator*(const Mat& x, const Mat& y) {
        if (x.cols != y.rows) throw std::invalid_argument("Mat: shape mismatch");
        Mat r(x.rows, y.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int k = 0; k < x.cols; ++k) {
                const K& xv = x(i, k);
                for (int j = 0; j < y.cols; ++j) r(i, j) = r(i, j) + xv * y(k, j);
            }
        return r;
    }

    Mat scaled(const K& s) const {
        Mat r = *this;
        for (auto& v : r.a) v = v * s;
        return r;
    }

    Mat transpose() const {
        Mat r(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    template <class L, class Conv>
    Mat<L> map(Conv conv) const {
        Mat<L> r(rows, cols, L(0));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) r(i, j) = conv((*this)(i, j));
        return r;
    }
};

template <class K>
bool mat_is_zero(const Mat<K>& m) {
    for (auto& v : m.a)
        if (!(v == K(0))) return false;
    return true;
}

// Gauss-Jordan over an exact field; returns (rank, det, inverse-if-square).
template <class K>
struct EliminationResult {
    int rank = 0;
    K det = K(0);
    Mat<K> inverse;  // valid iff square and rank == n
    bool invertible = false;
};

template <class K>
EliminationResult<K> eliminate(Mat<K> m) {
    EliminationResult<K> res;
    int n = m.rows, cols = m.cols;
    Mat<K> inv = m.is_square() ? Mat<K>::identity(n) : Mat<K>();
    K det = K(1);
    int row = 0;
    for (int col = 0; col < cols && row < n; ++col) {
        int piv = -1;
        for (int i = row; i < n; ++i)
            if (!(m(i, col) == K(0))) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != row) {
            for (int j = 0; j < cols; ++j) std::swap(m(piv, j), m(row, j));
            if (m.is_square())
                for (int j = 0; j < n; ++j) std::swap(inv(piv, j), inv(row, j));
            det = -det;
        }
        K p = m(row, col);
        det = det * p;
        K pinv = K(1) / p;
        for (int j = 0; j < cols; ++j) m(row, j) = m(row, j) * pinv;
        if (m.is_square())
            for (int j = 0; j < n; ++j) inv(row, j) = inv(row, j) * pinv;
        for (int i = 0; i < n; ++i) {
            if (i == row) continue;
            K f = m(i, col);
            if (f == K(0)) continue;
            for (int j = 0; j < cols; ++j) m(i, j) = m(i, j) - f * m(row, j);
            if (m.is_square())
                for (int j = 0; j < n; ++j) inv(i, j) = inv(i, j) - f * inv(row, j);
        }
        ++row;
    }
    res.rank = row;
    if (m.is_square()) {
        res.invertible = (row == n);
        res.det = res.invertible ? det : K(0);
        if (res.invertible) res.inverse = inv;
    }
    return res;
}

template <class K>
int mat_rank(const Mat<K>& m) {
    return eliminate(m).rank;
}

template <class K>
K mat_det(const Mat<K>& m) {
    if (!m.is_square()) throw std::invalid_argument("det: not square");
    return eliminate(m).det;
}

template <class K>
Mat<K> mat_inverse(const Mat<K>& m) {
    auto r = eliminate(m);
    if (!r.invertible) throw std::domain_error("Mat: singular");
    return r.inverse;
}

// Solve A x = b (A square invertible).
template <class K>
std::vector<K> mat_solve(const Mat<K>& A, const std::vector<K>& b) {
    Mat<K> inv = mat_inverse(A);
    std::vector<K> x(A.rows, K(0));
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) x[i] = x[i] + inv(i, j) * b[j];
    return x;
}

// Nullspace basis over a field.
template <class K>
std::vector<std::vector<K>> mat_nullspace(Mat<K> m) {
    int n = m.rows, cols = m.cols;
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < cols && row < n; ++col) {
        int piv = -1;
        for (int i = row; i < n; ++i)
            if (!(m(i, col) == K(0))) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        for (int j = 0; j < cols; ++j) std::swap(m(piv, j), m(row, j));
        K pinv = K(1) / m(row, col);
        for (int j = 0; j < cols; ++j) m(row, j) = m(row, j) * pinv;
        for (int i = 0; i < n; ++i) {
            if (i == row) continue;
            K f = m(i, col);
            if (f == K(0)) continue;
            for (int j = 0; j < cols; ++j) m(i, j) = m(i, j) - f * m(row, j);
        }
        pivot_col.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<K>> basis;
    for (int freec = 0; freec < cols; ++freec) {
        if (is_pivot[freec]) continue;
        std::vector<K> v(cols, K(0));
        v[freec] = K(1);
        for (size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -m(static_cast<int>(r), freec);
        basis.push_back(std::move(v));
    }
    return basis;
}

// --- PrecComplex matrices ---------------------------------------------------

using CMat = Mat<PrecComplex>;

inline CMat cmat(int r, int c, mpfr_prec_t prec) { return CMat(r, c, PrecComplex::zero(prec)); }

inline CMat cmat_identity(int n, mpfr_prec_t prec) {
    CMat m = cmat(n, n, prec);
    for (int i = 0; i < n; ++i) m(i, i) = PrecComplex::one(prec);
    return m;
}

inline CMat cmat_mul(const CMat& x, const CMat& y) {
    if (x.cols != y.rows) throw std::invalid_argument("cmat_mul: shape");
    mpfr_prec_t prec = std::max(x.a.empty() ? 64 : x.a[0].precision(),
                                y.a.empty() ? 64 : y.a[0].precision());
    CMat r = cmat(x.rows, y.cols, prec);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k)
            for (int j = 0; j < y.cols; ++j) r(i, j) += x(i, k) * y(k, j);
    return r;
}

// Gauss-Jordan with partial pivoting by magnitude.
inline CMat cmat_inverse(CMat m) {
    if (!m.is_square()) throw std::invalid_argument("cmat_inverse: not square");
    int n = m.rows;
    mpfr_prec_t prec = m.a.empty() ? 64 : m.a[0].precision();
    CMat inv = cmat_identity(n, prec);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        PrecFloat best = abs(m(col, col));
        for (int i = col + 1; i < n; ++i) {
            PrecFloat cand = abs(m(i, col));
            if (cand > best) {
                best = cand;
                piv = i;
            }
        }
        if (best.is_zero()) throw std::domain_error("cmat_inverse: numerically singular");
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(m(piv, j), m(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        PrecComplex pinv = PrecComplex::one(prec) / m(col, col);
        for (int j = 0; j < n; ++j) {
            m(col, j) *= pinv;
            inv(col, j) *= pinv;
        }
        for (int i = 0; i < n; ++i) {
            if (i == col) continue;
            PrecComplex f = m(i, col);
            if (f.is_zero()) continue;
            for (int j = 0; j < n; ++j) {
                m(i, j) -= f * m(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

inline double cmat_max_abs(const CMat& m) {
    double best = 0;
    for (auto& v : m.a) best = std::max(best, abs(v).to_double());
    return best;
}

inline Mat<Rational> mat_int_to_rational(const Mat<Int>& m) {
    return m.map<Rational>([](const Int& v) { return Rational(v); });
}

inline CMat mat_int_to_cmat(const Mat<Int>& m, mpfr_prec_t prec) {
    return m.map<PrecComplex>(
        [prec](const Int& v) { return PrecComplex{PrecFloat::from_int(v, prec), PrecFloat(prec)}; });
}

inline std::string mat_str(const Mat<Int>& m) {
    std::string s = "[";
    for (int i = 0; i < m.rows; ++i) {
        s += i ? ";[" : "[";
        for (int j = 0; j < m.cols; ++j) s += (j ? "," : "") + m(i, j).get_str();
        s += "]";
    }
    return s + "]";
}

}  // namespace pfwb
