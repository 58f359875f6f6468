#ifndef AWTP_EVASIVE_HPP
#define AWTP_EVASIVE_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "linalg.hpp"

namespace awtp {

/// A point of F_q^n that lies in the evasive set S.
struct EvasivePoint {
    FqVector coords;

    friend bool operator==(const EvasivePoint&, const EvasivePoint&) = default;
    friend auto operator<=>(const EvasivePoint&, const EvasivePoint&) = default;
};

/**
 * Subspace-evasive set S = V(f_1..f_v)^b in F_q^n, with per-block forms
 * f_i(x) = sum_j A_ij x_j^{d_j}, A a strongly regular v x w Cauchy matrix,
 * w = v^2 and d_1 > ... > d_w. The first v degrees are coprime to q - 1, so
 * within a block positions [0, v) are solved for and positions [v, w) carry
 * the encoded data unchanged.
 */
class EvasiveSystem {
   public:
    EvasiveSystem(PrimeField F, unsigned v, unsigned b) : F_(F), v_(v), w_(v * v), b_(b) {
        details::require(v_ >= 1 && b_ >= 1, ErrorCode::InfeasibleParameters, "need v >= 1 and b >= 1");
        details::require(w_ > v_, ErrorCode::InfeasibleParameters,
                         "w = v^2 = " + std::to_string(w_) + " leaves no identity coordinates");
        build_matrix();
        build_degrees();
    }

    const PrimeField& field() const noexcept { return F_; }
    unsigned v() const noexcept { return v_; }
    unsigned w() const noexcept { return w_; }
    unsigned blocks() const noexcept { return b_; }
    std::size_t n() const noexcept { return std::size_t{w_} * b_; }
    std::size_t n1() const noexcept { return std::size_t{w_ - v_} * b_; }
    const Matrix& matrix() const noexcept { return A_; }
    const std::vector<std::uint64_t>& degrees() const noexcept { return degrees_; }

    /// Positions (0-based, within a block) whose degree is coprime to q - 1.
    std::vector<unsigned> coprime_positions() const {
        std::vector<unsigned> J(v_);
        std::iota(J.begin(), J.end(), 0u);
        return J;
    }

    /// f_i evaluated on one block of w coordinates.
    FqVector forms(std::span<const Fq> block) const {
        FqVector out(v_, F_.zero());
        for (unsigned j = 0; j < w_; ++j) {
            const Fq p = F_.pow(block[j], degrees_[j]);
            if (p.v == 0) continue;
            for (unsigned i = 0; i < v_; ++i) out[i] = F_.add(out[i], F_.mul(A_(i, j), p));
        }
        return out;
    }

    bool block_member(std::span<const Fq> block) const {
        for (auto f : forms(block))
            if (f.v != 0) return false;
        return true;
    }

    /// The unique block in V(f_1..f_v) whose identity coordinates are `free`.
    FqVector encode_block(std::span<const Fq> free) const {
        FqVector block(w_, F_.zero());
        std::copy(free.begin(), free.end(), block.begin() + v_);
        FqVector rhs(v_, F_.zero());
        for (unsigned j = v_; j < w_; ++j) {
            const Fq p = F_.pow(block[j], degrees_[j]);
            for (unsigned i = 0; i < v_; ++i) rhs[i] = F_.sub(rhs[i], F_.mul(A_(i, j), p));
        }
        const FqVector y = multiply(F_, solve_inverse_, rhs);
        for (unsigned i = 0; i < v_; ++i) block[i] = dth_root(F_, y[i], degrees_[i]);
        return block;
    }

   private:
    void build_matrix() {
        // Cauchy parameters x_i = i, y_j = v + j (1-based); all sums lie in [v + 2, 2v + w]
        details::require(2ULL * v_ + w_ < F_.order(), ErrorCode::InfeasibleParameters,
                         "field too small for a " + std::to_string(v_) + "x" + std::to_string(w_) +
                             " Cauchy matrix");
        A_ = Matrix(v_, w_);
        for (unsigned i = 0; i < v_; ++i)
            for (unsigned j = 0; j < w_; ++j) A_(i, j) = F_.inv(F_.from(std::int64_t{i + 1} + v_ + j + 1));
        details::require(is_strongly_regular(F_, A_), ErrorCode::InfeasibleParameters,
                         "matrix is not strongly regular");
        std::vector<std::size_t> rows(v_), cols(v_);
        std::iota(rows.begin(), rows.end(), 0);
        std::iota(cols.begin(), cols.end(), 0);
        solve_inverse_ = *inverse(F_, A_.submatrix(rows, cols));
    }

    void build_degrees() {
        // identity positions take w-v+1, ..., 2; solved positions take the v
        // smallest exponents above that range coprime to q - 1 (and below q - 1)
        const std::uint64_t group = F_.order() - 1;
        const std::uint64_t low_top = w_ - v_ + 1;
        std::vector<std::uint64_t> coprime;
        for (std::uint64_t d = low_top + 1; d + 1 < F_.order() && coprime.size() < v_; ++d)
            if (std::gcd(d, group) == 1) coprime.push_back(d);
        details::require(coprime.size() == v_, ErrorCode::InfeasibleParameters,
                         "F_" + std::to_string(F_.order()) + " has fewer than " + std::to_string(v_) +
                             " usable exponents coprime to q - 1");
        degrees_.assign(coprime.rbegin(), coprime.rend());
        for (std::uint64_t d = low_top; d >= 2; --d) degrees_.push_back(d);
    }

    static bool is_strongly_regular(const PrimeField& F, const Matrix& A) {
        for (std::size_t r = 1; r <= A.rows(); ++r) {
            bool ok = true;
            for_each_subset(A.rows(), r, [&](const std::vector<std::size_t>& rows) {
                for_each_subset(A.cols(), r, [&](const std::vector<std::size_t>& cols) {
                    if (ok && determinant(F, A.submatrix(rows, cols)).v == 0) ok = false;
                });
            });
            if (!ok) return false;
        }
        return true;
    }

   public:
    /// Visits every r-subset of {0..n-1} in lexicographic order.
    template <class Visit>
    static void for_each_subset(std::size_t n, std::size_t r, Visit&& visit) {
        if (r > n) return;
        std::vector<std::size_t> idx(r);
        std::iota(idx.begin(), idx.end(), 0);
        for (;;) {
            visit(idx);
            std::size_t i = r;
            while (i > 0 && idx[i - 1] == n - r + i - 1) --i;
            if (i == 0) return;
            ++idx[i - 1];
            for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
        }
    }

    /// Exhaustive check that every r x r minor (r <= v) of A is nonsingular.
    bool strongly_regular() const { return is_strongly_regular(F_, A_); }

   private:
    PrimeField F_;
    unsigned v_, w_, b_;
    Matrix A_;
    Matrix solve_inverse_;  // inverse of A restricted to the coprime columns
    std::vector<std::uint64_t> degrees_;
};

inline EvasiveSystem build_evasive_system(const PrimeField& F, unsigned v, unsigned b) {
    return EvasiveSystem(F, v, b);
}

/// True iff every block of p zeroes all v forms. Wrong-length input is not a member.
inline bool se_member(const EvasiveSystem& sys, std::span<const Fq> p) {
    if (p.size() != sys.n()) return false;
    for (unsigned t = 0; t < sys.blocks(); ++t)
        if (!sys.block_member(p.subspan(std::size_t{t} * sys.w(), sys.w()))) return false;
    return true;
}

inline bool se_member(const EvasiveSystem& sys, const EvasivePoint& p) { return se_member(sys, p.coords); }

/// Bijection F_q^{n1} -> S, block by block.
inline EvasivePoint se_encode(const EvasiveSystem& sys, std::span<const Fq> vec) {
    details::require(vec.size() == sys.n1(), ErrorCode::WrongLength,
                     "expected " + std::to_string(sys.n1()) + " symbols, got " + std::to_string(vec.size()));
    const std::size_t free = sys.w() - sys.v();
    EvasivePoint out;
    out.coords.reserve(sys.n());
    for (unsigned t = 0; t < sys.blocks(); ++t) {
        const FqVector block = sys.encode_block(vec.subspan(t * free, free));
        out.coords.insert(out.coords.end(), block.begin(), block.end());
    }
    return out;
}

/// Inverse of se_encode: reads the identity coordinates of every block.
inline FqVector se_decode(const EvasiveSystem& sys, const EvasivePoint& p) {
    details::require(se_member(sys, p), ErrorCode::NotMember, "point is not in the evasive set");
    FqVector out;
    out.reserve(sys.n1());
    for (unsigned t = 0; t < sys.blocks(); ++t) {
        auto first = p.coords.begin() + static_cast<std::ptrdiff_t>(std::size_t{t} * sys.w());
        out.insert(out.end(), first + sys.v(), first + sys.w());
    }
    return out;
}

namespace details {

// Reparameterizes the columns of `basis` so that the first `rank` columns are
// independent on rows [row0, row0 + count) and the rest vanish there.
inline std::size_t split_columns(const PrimeField& F, Matrix& basis, std::size_t row0, std::size_t count) {
    const std::size_t r = basis.cols();
    if (r == 0) return 0;
    // [block^T | I_r]: row operations here are column operations on the basis
    Matrix aug(r, count + r);
    for (std::size_t c = 0; c < r; ++c) {
        for (std::size_t i = 0; i < count; ++i) aug(c, i) = basis(row0 + i, c);
        aug(c, count + c) = F.one();
    }
    const RowEchelon ech = rref(F, std::move(aug), count);
    Matrix transform(r, r);  // column c of the new basis = sum_l transform(l, c) * old column l
    for (std::size_t c = 0; c < r; ++c)
        for (std::size_t l = 0; l < r; ++l) transform(l, c) = ech.reduced(c, count + l);
    basis = multiply(F, basis, transform);
    return ech.rank();
}

}  // namespace details

/**
 * S intersected with an affine space H of dimension <= v, by the block-recursive
 * procedure: the projection of H onto the next block is enumerated point by
 * point, each point in V(f) fixes that block and lowers the dimension of the
 * remaining space. Results are sorted.
 */
inline std::vector<EvasivePoint> se_intersect(const EvasiveSystem& sys, const AffineSpace& H) {
    details::require(H.ambient() == sys.n(), ErrorCode::WrongLength,
                     "subspace lives in F_q^" + std::to_string(H.ambient()) + ", expected F_q^" +
                         std::to_string(sys.n()));
    details::require(H.dimension() <= sys.v(), ErrorCode::DimensionTooLarge,
                     "dim(H) = " + std::to_string(H.dimension()) + " exceeds v = " + std::to_string(sys.v()));
    std::vector<EvasivePoint> found;
    if (H.empty()) return found;
    const PrimeField& F = sys.field();
    const std::size_t w = sys.w();

    struct Partial {
        Matrix basis;
        FqVector offset;
    };
    std::vector<Partial> frontier{{H.basis, H.offset}};
    for (unsigned t = 0; t < sys.blocks() && !frontier.empty(); ++t) {
        const std::size_t row0 = std::size_t{t} * w;
        std::vector<Partial> next;
        for (auto& part : frontier) {
            const std::size_t rank = details::split_columns(F, part.basis, row0, w);
            const std::size_t rest = part.basis.cols() - rank;
            Matrix rest_basis(part.basis.rows(), rest);
            for (std::size_t i = 0; i < part.basis.rows(); ++i)
                for (std::size_t c = 0; c < rest; ++c) rest_basis(i, c) = part.basis(i, rank + c);
            FqVector coords(rank, F.zero());
            FqVector block(w);
            for (;;) {
                for (std::size_t i = 0; i < w; ++i) {
                    Fq acc = part.offset[row0 + i];
                    for (std::size_t c = 0; c < rank; ++c)
                        acc = F.add(acc, F.mul(part.basis(row0 + i, c), coords[c]));
                    block[i] = acc;
                }
                if (sys.block_member(block)) {
                    FqVector offset = part.offset;
                    for (std::size_t i = 0; i < offset.size(); ++i)
                        for (std::size_t c = 0; c < rank; ++c)
                            offset[i] = F.add(offset[i], F.mul(part.basis(i, c), coords[c]));
                    next.push_back({rest_basis, std::move(offset)});
                }
                std::size_t i = 0;
                while (i < rank && coords[i].v + 1 == F.order()) coords[i++] = F.zero();
                if (i == rank) break;
                coords[i].v += 1;
            }
        }
        frontier = std::move(next);
    }
    for (auto& part : frontier) found.push_back(EvasivePoint{std::move(part.offset)});
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
}

/// Uniformly random affine subspace of F_q^ambient with exactly `dim` independent directions.
inline AffineSpace random_affine_subspace(const PrimeField& F, std::size_t ambient, std::size_t dim, Rng& rng) {
    for (;;) {
        Matrix basis(ambient, dim);
        for (std::size_t i = 0; i < ambient; ++i)
            for (std::size_t j = 0; j < dim; ++j) basis(i, j) = F.uniform(rng);
        if (rank(F, basis) == dim) return {std::move(basis), F.uniform_vector(rng, ambient), true};
    }
}

/// Largest |S ∩ H| over `samples` random affine subspaces of dimension `dim`.
inline std::size_t measure_max_intersection(const EvasiveSystem& sys, std::size_t dim, std::size_t samples, Rng& rng) {
    std::size_t best = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        const AffineSpace H = random_affine_subspace(sys.field(), sys.n(), dim, rng);
        best = std::max(best, se_intersect(sys, H).size());
    }
    return best;
}

}  // namespace awtp

#endif
