#ifndef AWTP_LINALG_HPP
#define AWTP_LINALG_HPP

#include <cstdint>
#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fields.hpp"

namespace awtp {

/// Dense row-major matrix over F_q.
class Matrix {
   public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(const PrimeField& F, std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = F.one();
        return m;
    }

    static Matrix from_rows(const std::vector<FqVector>& rows) {
        Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
        for (std::size_t i = 0; i < m.rows_; ++i) {
            details::require(rows[i].size() == m.cols_, ErrorCode::WrongLength, "ragged matrix rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static Matrix from_columns(std::size_t rows, const std::vector<FqVector>& cols) {
        Matrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            details::require(cols[j].size() == rows, ErrorCode::WrongLength, "column length mismatch");
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Fq& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    Fq operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<Fq> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const Fq> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    FqVector column(std::size_t j) const {
        FqVector out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
        return out;
    }

    Matrix submatrix(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const {
        Matrix m(row_idx.size(), col_idx.size());
        for (std::size_t i = 0; i < row_idx.size(); ++i)
            for (std::size_t j = 0; j < col_idx.size(); ++j) m(i, j) = (*this)(row_idx[i], col_idx[j]);
        return m;
    }

    Matrix top_rows(std::size_t count) const {
        Matrix m(count, cols_);
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
        return m;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Fq> data_;
};

inline FqVector multiply(const PrimeField& F, const Matrix& A, std::span<const Fq> x) {
    details::require(x.size() == A.cols(), ErrorCode::WrongLength, "matrix-vector shape mismatch");
    FqVector out(A.rows(), F.zero());
    for (std::size_t i = 0; i < A.rows(); ++i) {
        Fq acc = F.zero();
        for (std::size_t j = 0; j < A.cols(); ++j) acc = F.add(acc, F.mul(A(i, j), x[j]));
        out[i] = acc;
    }
    return out;
}

inline Matrix multiply(const PrimeField& F, const Matrix& A, const Matrix& B) {
    details::require(A.cols() == B.rows(), ErrorCode::WrongLength, "matrix shape mismatch");
    Matrix out(A.rows(), B.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t l = 0; l < A.cols(); ++l) {
            const Fq a = A(i, l);
            if (a.v == 0) continue;
            for (std::size_t j = 0; j < B.cols(); ++j) out(i, j) = F.add(out(i, j), F.mul(a, B(l, j)));
        }
    return out;
}

struct RowEchelon {
    Matrix reduced;
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row

    std::size_t rank() const noexcept { return pivots.size(); }
};

/// Reduced row echelon form by Gauss-Jordan elimination. Only the first
/// `pivot_cols` columns are eligible as pivots (all columns by default).
inline RowEchelon rref(const PrimeField& F, Matrix M, std::size_t pivot_cols = SIZE_MAX) {
    pivot_cols = std::min(pivot_cols, M.cols());
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < pivot_cols && r < M.rows(); ++c) {
        std::size_t p = r;
        while (p < M.rows() && M(p, c).v == 0) ++p;
        if (p == M.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < M.cols(); ++j) std::swap(M(p, j), M(r, j));
        const Fq scale = F.inv(M(r, c));
        for (std::size_t j = c; j < M.cols(); ++j) M(r, j) = F.mul(M(r, j), scale);
        for (std::size_t i = 0; i < M.rows(); ++i) {
            if (i == r || M(i, c).v == 0) continue;
            const Fq factor = M(i, c);
            for (std::size_t j = c; j < M.cols(); ++j) M(i, j) = F.sub(M(i, j), F.mul(factor, M(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(M), std::move(pivots)};
}

inline std::size_t rank(const PrimeField& F, const Matrix& M) { return rref(F, M).rank(); }

/// Nullspace basis: one vector per free column (ascending), free variable set to 1.
inline std::vector<FqVector> nullspace(const PrimeField& F, const Matrix& M) {
    const RowEchelon ech = rref(F, M);
    std::vector<bool> is_pivot(M.cols(), false);
    for (auto c : ech.pivots) is_pivot[c] = true;
    std::vector<FqVector> basis;
    for (std::size_t free = 0; free < M.cols(); ++free) {
        if (is_pivot[free]) continue;
        FqVector v(M.cols(), F.zero());
        v[free] = F.one();
        for (std::size_t i = 0; i < ech.pivots.size(); ++i) v[ech.pivots[i]] = F.neg(ech.reduced(i, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

inline Fq determinant(const PrimeField& F, Matrix M) {
    details::require(M.rows() == M.cols(), ErrorCode::WrongLength, "determinant of non-square matrix");
    const std::size_t n = M.rows();
    Fq det = F.one();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && M(p, c).v == 0) ++p;
        if (p == n) return F.zero();
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(M(p, j), M(c, j));
            det = F.neg(det);
        }
        det = F.mul(det, M(c, c));
        const Fq inv = F.inv(M(c, c));
        for (std::size_t i = c + 1; i < n; ++i) {
            if (M(i, c).v == 0) continue;
            const Fq factor = F.mul(M(i, c), inv);
            for (std::size_t j = c; j < n; ++j) M(i, j) = F.sub(M(i, j), F.mul(factor, M(c, j)));
        }
    }
    return det;
}

inline std::optional<Matrix> inverse(const PrimeField& F, const Matrix& M) {
    details::require(M.rows() == M.cols(), ErrorCode::WrongLength, "inverse of non-square matrix");
    const std::size_t n = M.rows();
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = M(i, j);
        aug(i, n + i) = F.one();
    }
    const RowEchelon ech = rref(F, std::move(aug), n);
    if (ech.rank() < n) return std::nullopt;
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = ech.reduced(i, n + j);
    return out;
}

/**
 * Affine subspace {basis * b + offset : b in F_q^r} of F_q^ambient, or the
 * empty set. Basis columns are linearly independent.
 */
struct AffineSpace {
    Matrix basis;    // ambient x r
    FqVector offset; // length ambient
    bool inhabited = true;

    static AffineSpace empty_space(std::size_t ambient) { return {Matrix(ambient, 0), FqVector(ambient), false}; }

    static AffineSpace point(FqVector z) {
        const std::size_t ambient = z.size();
        return {Matrix(ambient, 0), std::move(z), true};
    }

    std::size_t ambient() const noexcept { return offset.size(); }
    std::size_t dimension() const noexcept { return basis.cols(); }
    bool empty() const noexcept { return !inhabited; }

    FqVector at(const PrimeField& F, std::span<const Fq> coords) const {
        FqVector out = multiply(F, basis, coords);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = F.add(out[i], offset[i]);
        return out;
    }

    bool contains(const PrimeField& F, std::span<const Fq> x) const {
        if (!inhabited || x.size() != ambient()) return false;
        const std::size_t r = dimension();
        Matrix aug(ambient(), r + 1);
        for (std::size_t i = 0; i < ambient(); ++i) {
            for (std::size_t j = 0; j < r; ++j) aug(i, j) = basis(i, j);
            aug(i, r) = F.sub(x[i], offset[i]);
        }
        const RowEchelon ech = rref(F, std::move(aug));
        return ech.pivots.empty() || ech.pivots.back() < r;
    }

    /// Restriction to the first `count` coordinates (projection; the basis is re-reduced).
    AffineSpace leading(const PrimeField& F, std::size_t count) const {
        if (!inhabited) return empty_space(count);
        Matrix top = basis.top_rows(count);
        FqVector z(offset.begin(), offset.begin() + static_cast<std::ptrdiff_t>(count));
        // independent columns of the projected basis: pivots of the transpose echelon form
        Matrix transposed(top.cols(), top.rows());
        for (std::size_t i = 0; i < top.rows(); ++i)
            for (std::size_t j = 0; j < top.cols(); ++j) transposed(j, i) = top(i, j);
        const RowEchelon ech = rref(F, transposed);
        std::vector<FqVector> cols;
        for (std::size_t i = 0; i < ech.rank(); ++i) {
            auto row = ech.reduced.row(i);
            cols.emplace_back(row.begin(), row.end());
        }
        return {Matrix::from_columns(count, cols), std::move(z), true};
    }

    /// Every point, in lexicographic order of the coordinate vector b (b_0 fastest).
    template <class Visit>
    void for_each_point(const PrimeField& F, Visit&& visit) const {
        if (!inhabited) return;
        const std::size_t r = dimension();
        FqVector coords(r, F.zero());
        for (;;) {
            visit(at(F, coords));
            std::size_t i = 0;
            while (i < r && coords[i].v + 1 == F.order()) coords[i++] = F.zero();
            if (i == r) return;
            coords[i].v += 1;
        }
    }
};

/// Solution set {x : A x = rhs} as an affine space (possibly empty).
inline AffineSpace solve_affine(const PrimeField& F, const Matrix& A, std::span<const Fq> rhs) {
    details::require(rhs.size() == A.rows(), ErrorCode::WrongLength, "right-hand side length mismatch");
    const std::size_t n = A.cols();
    Matrix aug(A.rows(), n + 1);
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = A(i, j);
        aug(i, n) = rhs[i];
    }
    const RowEchelon ech = rref(F, std::move(aug));
    if (!ech.pivots.empty() && ech.pivots.back() == n) return AffineSpace::empty_space(n);
    FqVector particular(n, F.zero());
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) particular[ech.pivots[i]] = ech.reduced(i, n);
    return {Matrix::from_columns(n, nullspace(F, A)), std::move(particular), true};
}

}  // namespace awtp

#endif
