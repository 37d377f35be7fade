#pragma once

// Dense matrices over exact rationals, plus the subspace arithmetic the
// filtration machinery needs (kernels, column spaces, sums, intersections).
// Subspaces are represented by matrices whose ROWS span them, canonicalized
// to reduced row echelon form with zero rows dropped — two subspaces are
// equal iff their canonical forms are identical matrices.

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mirrorfib/rational.hpp"

namespace mirrorfib {

class QMat {
  public:
    QMat() : rows_(0), cols_(0) {}
    QMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}

    QMat(std::initializer_list<std::initializer_list<long>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("matrix init: ragged rows");
            for (long v : row) data_.emplace_back(v);
        }
    }

    static QMat identity(std::size_t n) {
        QMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const QMat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const QMat& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const auto& v : data_)
            if (v != 0) return false;
        return true;
    }

    QMat operator+(const QMat& o) const {
        check_same_shape(o, "+");
        QMat r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
        return r;
    }

    QMat operator-(const QMat& o) const {
        check_same_shape(o, "-");
        QMat r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
        return r;
    }

    QMat operator*(const QMat& o) const {
        if (cols_ != o.rows_)
            throw std::invalid_argument("matrix product: inner dimensions " +
                                        std::to_string(cols_) + " vs " + std::to_string(o.rows_));
        QMat r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rat& a = at(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
            }
        return r;
    }

    QMat scaled(const Rat& c) const {
        QMat r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = c * data_[i];
        return r;
    }

    QMat transpose() const {
        QMat r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    QMat pow(std::size_t e) const {
        if (rows_ != cols_) throw std::invalid_argument("matrix power: not square");
        QMat acc = identity(rows_);
        for (std::size_t i = 0; i < e; ++i) acc = acc * *this;
        return acc;
    }

    // In-place Gauss-Jordan. Returns pivot column indices (rank = their count).
    std::vector<std::size_t> rref_in_place() {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t p = r;
            while (p < rows_ && at(p, c) == 0) ++p;
            if (p == rows_) continue;
            if (p != r)
                for (std::size_t j = 0; j < cols_; ++j) std::swap(at(p, j), at(r, j));
            Rat inv = Rat(1) / at(r, c);
            for (std::size_t j = c; j < cols_; ++j) at(r, j) *= inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r || at(i, c) == 0) continue;
                Rat f = at(i, c);
                for (std::size_t j = c; j < cols_; ++j) at(i, j) -= f * at(r, j);
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    std::size_t rank() const {
        QMat tmp = *this;
        return tmp.rref_in_place().size();
    }

    Rat det() const {
        if (rows_ != cols_) throw std::invalid_argument("determinant: not square");
        QMat tmp = *this;
        Rat d(1);
        for (std::size_t c = 0; c < tmp.cols_; ++c) {
            std::size_t p = c;
            while (p < tmp.rows_ && tmp.at(p, c) == 0) ++p;
            if (p == tmp.rows_) return Rat(0);
            if (p != c) {
                for (std::size_t j = 0; j < tmp.cols_; ++j) std::swap(tmp.at(p, j), tmp.at(c, j));
                d = -d;
            }
            d *= tmp.at(c, c);
            Rat inv = Rat(1) / tmp.at(c, c);
            for (std::size_t i = c + 1; i < tmp.rows_; ++i) {
                if (tmp.at(i, c) == 0) continue;
                Rat f = tmp.at(i, c) * inv;
                for (std::size_t j = c; j < tmp.cols_; ++j) tmp.at(i, j) -= f * tmp.at(c, j);
            }
        }
        return d;
    }

    bool invertible() const { return rows_ == cols_ && rank() == rows_; }

    QMat inverse() const {
        if (rows_ != cols_) throw std::invalid_argument("inverse: not square");
        QMat aug(rows_, 2 * cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_ + i) = 1;
        }
        auto pivots = aug.rref_in_place();
        if (pivots.size() != rows_ || pivots.back() >= cols_)
            throw std::invalid_argument("inverse: singular matrix");
        QMat r(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = aug.at(i, cols_ + j);
        return r;
    }

    // Basis of {x : Ax = 0} as ROWS of the returned matrix.
    QMat kernel() const {
        QMat tmp = *this;
        auto pivots = tmp.rref_in_place();
        std::vector<bool> is_pivot(cols_, false);
        for (auto c : pivots) is_pivot[c] = true;
        std::vector<std::size_t> free_cols;
        for (std::size_t c = 0; c < cols_; ++c)
            if (!is_pivot[c]) free_cols.push_back(c);
        QMat k(free_cols.size(), cols_);
        for (std::size_t f = 0; f < free_cols.size(); ++f) {
            k.at(f, free_cols[f]) = 1;
            for (std::size_t p = 0; p < pivots.size(); ++p) k.at(f, pivots[p]) = -tmp.at(p, free_cols[f]);
        }
        return k;
    }

    QMat col(std::size_t j) const {
        QMat v(rows_, 1);
        for (std::size_t i = 0; i < rows_; ++i) v.at(i, 0) = at(i, j);
        return v;
    }

    // Vertical stack: this on top of o.
    QMat vstack(const QMat& o) const {
        if (cols_ != o.cols_ && rows_ != 0 && o.rows_ != 0)
            throw std::invalid_argument("vstack: column mismatch");
        std::size_t c = rows_ ? cols_ : o.cols_;
        QMat r(rows_ + o.rows_, c);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < c; ++j) r.at(i, j) = at(i, j);
        for (std::size_t i = 0; i < o.rows_; ++i)
            for (std::size_t j = 0; j < c; ++j) r.at(rows_ + i, j) = o.at(i, j);
        return r;
    }

    QMat hstack(const QMat& o) const {
        if (rows_ != o.rows_) throw std::invalid_argument("hstack: row mismatch");
        QMat r(rows_, cols_ + o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
            for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
        }
        return r;
    }

  private:
    void check_same_shape(const QMat& o, const char* op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument(std::string("matrix ") + op + ": shape mismatch");
    }

    std::size_t rows_, cols_;
    std::vector<Rat> data_;
};

// ---- Row-space subspace arithmetic ------------------------------------

// Canonical form of the row space: RREF with zero rows dropped. The result
// is the unique reduced basis, so subspace equality is matrix equality.
inline QMat rowspace_canonical(const QMat& m) {
    QMat tmp = m;
    auto pivots = tmp.rref_in_place();
    QMat r(pivots.size(), m.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r.at(i, j) = tmp.at(i, j);
    return r;
}

inline std::size_t subspace_dim(const QMat& s) { return s.rows(); }

// Span of the columns of m, returned in row representation (canonical).
inline QMat colspace(const QMat& m) { return rowspace_canonical(m.transpose()); }

// Kernel {x : m x = 0} in row representation (canonical).
inline QMat kernel_space(const QMat& m) { return rowspace_canonical(m.kernel()); }

inline QMat subspace_sum(const QMat& a, const QMat& b) {
    if (a.rows() == 0) return rowspace_canonical(b);
    if (b.rows() == 0) return rowspace_canonical(a);
    return rowspace_canonical(a.vstack(b));
}

// Intersection of two row spaces. Solve u^T A = v^T B by taking the kernel
// of [A^T | -B^T]; the A-halves of the kernel vectors give coefficients.
inline QMat subspace_intersect(const QMat& a, const QMat& b) {
    if (a.rows() == 0 || b.rows() == 0) {
        std::size_t n = a.rows() ? a.cols() : b.cols();
        return QMat(0, n);
    }
    if (a.cols() != b.cols()) throw std::invalid_argument("subspace intersect: ambient mismatch");
    QMat sys = a.transpose().hstack(b.transpose().scaled(Rat(-1)));
    QMat k = sys.kernel();  // rows: (u, v) with A^T u = B^T v
    QMat gens(k.rows(), a.cols());
    for (std::size_t r = 0; r < k.rows(); ++r)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            Rat s(0);
            for (std::size_t i = 0; i < a.rows(); ++i) s += k.at(r, i) * a.at(i, j);
            gens.at(r, j) = s;
        }
    return rowspace_canonical(gens);
}

// Does the row space of `inner` sit inside the row space of `outer`?
inline bool subspace_contains(const QMat& outer, const QMat& inner) {
    if (inner.rows() == 0) return true;
    QMat sum = subspace_sum(outer, inner);
    return subspace_dim(sum) == subspace_dim(rowspace_canonical(outer));
}

// Is the row vector v (1 x n) inside the row space?
inline bool subspace_contains_vector(const QMat& space, const QMat& v) {
    return subspace_contains(space, v);
}

// Image of a row-space under a linear map: rows w of `space` map to (M w^T)^T.
inline QMat subspace_apply(const QMat& m, const QMat& space) {
    if (space.rows() == 0) return QMat(0, m.rows());
    return rowspace_canonical((m * space.transpose()).transpose());
}

}  // namespace mirrorfib
