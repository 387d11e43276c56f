#ifndef LOADOUT_MATRIX_HPP
#define LOADOUT_MATRIX_HPP

#include <cstddef>
#include <vector>

#include "loadout/errors.hpp"
#include "loadout/interval.hpp"
#include "loadout/rational.hpp"

namespace loadout {

template <typename T>
using Vec = std::vector<T>;

/// Dense matrix. All entries share one arithmetic kind (Rational or
/// Interval); mixed containers are not allowed.
template <typename T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n, T(0));
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    Vec<T> column(std::size_t j) const {
        Vec<T> out;
        out.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
        return out;
    }

    Matrix transpose() const {
        Matrix out(cols_, rows_, T(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    /// Columns picked by 0-based indices, in the given order.
    Matrix select_columns(const std::vector<std::size_t>& idx) const {
        Matrix out(rows_, idx.size(), T(0));
        for (std::size_t j = 0; j < idx.size(); ++j)
            for (std::size_t i = 0; i < rows_; ++i) out(i, j) = (*this)(i, idx[j]);
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<T> data_;
};

template <typename T>
Vec<T> mat_vec(const Matrix<T>& m, const Vec<T>& v) {
    if (v.size() != m.cols()) throw DimensionMismatch("mat_vec size mismatch");
    Vec<T> out(m.rows(), T(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
    return out;
}

template <typename T>
T dot(const Vec<T>& a, const Vec<T>& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot size mismatch");
    T out(0);
    for (std::size_t i = 0; i < a.size(); ++i) out += a[i] * b[i];
    return out;
}

inline constexpr std::size_t kDetSizeCap = 16;

/// Exact determinant via fraction-free Bareiss elimination. All intermediate
/// divisions are exact, which keeps rational entries from blowing up
/// mid-elimination.
inline Rational det(const Matrix<Rational>& m, std::size_t size_cap = kDetSizeCap) {
    if (m.rows() != m.cols()) throw DimensionMismatch("det of non-square matrix");
    const std::size_t n = m.rows();
    if (n > size_cap) throw InvalidParams("det size exceeds cap");
    if (n == 0) return Rational(1);

    Matrix<Rational> a = m;
    Rational prev(1);
    int sign_flip = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && a(pivot, k) == 0) ++pivot;
        if (pivot == n) return Rational(0);
        if (pivot != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(a(pivot, j), a(k, j));
            sign_flip = -sign_flip;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign_flip > 0 ? a(n - 1, n - 1) : Rational(-a(n - 1, n - 1));
}

/// Interval determinant: same Bareiss recurrence; divisions by enclosing
/// pivots keep the result an enclosure of the exact determinant. Throws
/// IndeterminateSign when no pivot enclosure excludes zero (the caller is
/// expected to retry at higher precision).
inline Interval det(const Matrix<Interval>& m, std::size_t size_cap = kDetSizeCap) {
    if (m.rows() != m.cols()) throw DimensionMismatch("det of non-square matrix");
    const std::size_t n = m.rows();
    if (n > size_cap) throw InvalidParams("det size exceeds cap");
    if (n == 0) return Interval(Rational(1), kDefaultPrecisionBits);

    Matrix<Interval> a = m;
    Interval prev(Rational(1), kDefaultPrecisionBits);
    int sign_flip = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t pivot = n;
        bool all_zero = true;
        for (std::size_t r = k; r < n; ++r) {
            SignResult s = a(r, k).sign();
            if (s == SignResult::Positive || s == SignResult::Negative) {
                pivot = r;
                break;
            }
            if (s != SignResult::Zero) all_zero = false;
        }
        if (pivot == n) {
            if (all_zero) return Interval(Rational(0), kDefaultPrecisionBits);
            throw IndeterminateSign("no certified pivot in interval elimination");
        }
        if (pivot != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(a(pivot, j), a(k, j));
            sign_flip = -sign_flip;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
            a(i, k) = Interval(Rational(0), a(i, k).precision_bits());
        }
        prev = a(k, k);
    }
    Interval d = a(n - 1, n - 1);
    return sign_flip > 0 ? d : -d;
}

/// Exact solution of Mx = v by fraction-free elimination with back
/// substitution. Throws SingularMatrix when det(M) = 0.
inline Vec<Rational> solve_linear(const Matrix<Rational>& m, const Vec<Rational>& v) {
    if (m.rows() != m.cols()) throw DimensionMismatch("solve on non-square matrix");
    if (v.size() != m.rows()) throw DimensionMismatch("solve rhs size mismatch");
    const std::size_t n = m.rows();
    Matrix<Rational> a(n, n + 1, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
        a(i, n) = v[i];
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && a(pivot, k) == 0) ++pivot;
        if (pivot == n) throw SingularMatrix("singular system");
        if (pivot != k)
            for (std::size_t j = k; j <= n; ++j) std::swap(a(pivot, j), a(k, j));
        for (std::size_t i = k + 1; i < n; ++i) {
            Rational f = a(i, k) / a(k, k);
            for (std::size_t j = k; j <= n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    Vec<Rational> x(n, Rational(0));
    for (std::size_t i = n; i-- > 0;) {
        Rational acc = a(i, n);
        for (std::size_t j = i + 1; j < n; ++j) acc -= a(i, j) * x[j];
        x[i] = acc / a(i, i);
    }
    return x;
}

/// Enclosing solution of Mx = v for an exactly rational matrix and an
/// interval right-hand side: pivoting decisions are made exactly on M, and
/// only the right-hand side carries enclosure error.
inline Vec<Interval> solve_linear(const Matrix<Rational>& m, const Vec<Interval>& v,
                                  long bits) {
    if (m.rows() != m.cols()) throw DimensionMismatch("solve on non-square matrix");
    if (v.size() != m.rows()) throw DimensionMismatch("solve rhs size mismatch");
    const std::size_t n = m.rows();
    Matrix<Rational> a = m;
    Vec<Interval> rhs = v;
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && a(pivot, k) == 0) ++pivot;
        if (pivot == n) throw SingularMatrix("singular system");
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(k, j));
            std::swap(rhs[pivot], rhs[k]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            Rational f = a(i, k) / a(k, k);
            if (f == 0) continue;
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
            rhs[i] -= Interval(f, bits) * rhs[k];
        }
    }
    Vec<Interval> x(n, Interval(Rational(0), bits));
    for (std::size_t i = n; i-- > 0;) {
        Interval acc = rhs[i];
        for (std::size_t j = i + 1; j < n; ++j)
            acc -= Interval(a(i, j), bits) * x[j];
        x[i] = acc / Interval(a(i, i), bits);
    }
    return x;
}

/// Exact rank via fraction-free elimination.
inline std::size_t rank(const Matrix<Rational>& m) {
    Matrix<Rational> a = m;
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && a(pivot, c) == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a(pivot, j), a(r, j));
        for (std::size_t i = r + 1; i < rows; ++i) {
            Rational f = a(i, c) / a(r, c);
            if (f == 0) continue;
            for (std::size_t j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
        }
        ++r;
    }
    return r;
}

}  // namespace loadout

#endif
