#ifndef AWTP_FRS_HPP
#define AWTP_FRS_HPP

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "polynomial.hpp"

namespace awtp {

/// N symbols of u field elements each: an FRS codeword or a received word.
struct FoldedWord {
    std::vector<FqVector> symbols;

    friend bool operator==(const FoldedWord&, const FoldedWord&) = default;
};

using FrsCodeword = FoldedWord;
using ReceivedWord = FoldedWord;

/// Number of symbol positions where a and b differ.
inline std::size_t symbol_distance(const FoldedWord& a, const FoldedWord& b) {
    details::require(a.symbols.size() == b.symbols.size(), ErrorCode::WrongLength, "word lengths differ");
    std::size_t d = 0;
    for (std::size_t j = 0; j < a.symbols.size(); ++j) d += (a.symbols[j] != b.symbols[j]);
    return d;
}

/**
 * u-folded Reed-Solomon code of block length N over F_q: symbol j holds
 * f(gamma^{ju}), ..., f(gamma^{ju+u-1}) for a message polynomial of degree < k.
 * v is the decoding parameter of the linear-algebraic list decoder.
 */
class FrsParams {
   public:
    FrsParams(PrimeField F, unsigned u, unsigned N, unsigned k, unsigned v, Fq gamma)
        : F_(F), u_(u), N_(N), k_(k), v_(v), gamma_(gamma) {
        details::require(u_ >= 1 && N_ >= 1 && k_ >= 1, ErrorCode::InfeasibleParameters, "need u, N, k >= 1");
        details::require(std::uint64_t{F_.order()} > std::uint64_t{N_} * u_, ErrorCode::InfeasibleParameters,
                         "need q > N u");
        details::require(v_ >= 1 && v_ <= u_, ErrorCode::InfeasibleParameters, "need 1 <= v <= u");
        details::require(k_ <= u_ * N_, ErrorCode::InfeasibleParameters, "need k <= u N");
        details::require(F_.order() == 2 || F_.multiplicative_order(gamma_) == F_.order() - 1,
                         ErrorCode::InfeasibleParameters, "gamma must generate F_q^*");
        points_.resize(std::size_t{u_} * N_);
        Fq x = F_.one();
        for (auto& p : points_) {
            p = x;
            x = F_.mul(x, gamma_);
        }
    }

    const PrimeField& field() const noexcept { return F_; }
    unsigned u() const noexcept { return u_; }
    unsigned N() const noexcept { return N_; }
    unsigned k() const noexcept { return k_; }
    unsigned v() const noexcept { return v_; }
    Fq gamma() const noexcept { return gamma_; }

    /// gamma^i for i < uN; position s of symbol j is point(j u + s).
    Fq point(std::size_t i) const { return points_[i]; }

    /// Number of window constraints (u - v + 1) N.
    std::size_t window_count() const noexcept { return std::size_t{u_ - v_ + 1} * N_; }

    /// Interpolation degree D = floor((n0 - k + 1) / (v + 1)), at least 0.
    unsigned interpolation_degree() const noexcept {
        const long long num = static_cast<long long>(window_count()) - k_ + 1;
        return num <= 0 ? 0u : static_cast<unsigned>(num / (v_ + 1));
    }

   private:
    PrimeField F_;
    unsigned u_, N_, k_, v_;
    Fq gamma_;
    FqVector points_;
};

inline FrsCodeword frs_encode(const FrsParams& p, std::span<const Fq> coeffs) {
    details::require(coeffs.size() == p.k(), ErrorCode::WrongLength,
                     "expected " + std::to_string(p.k()) + " coefficients, got " + std::to_string(coeffs.size()));
    const poly::Poly f(coeffs.begin(), coeffs.end());
    FrsCodeword c;
    c.symbols.resize(p.N(), FqVector(p.u()));
    for (unsigned j = 0; j < p.N(); ++j)
        for (unsigned s = 0; s < p.u(); ++s) c.symbols[j][s] = poly::eval(p.field(), f, p.point(std::size_t{j} * p.u() + s));
    return c;
}

/// Agreement requirement t* > N (1/(v+1) + v/(v+1) * uR/(u-v+1)), R = k/(uN).
struct AgreementThreshold {
    std::uint64_t bound_num;  // the right-hand side as an exact fraction
    std::uint64_t bound_den;
    unsigned t_star;          // smallest integer strictly above the bound
    int max_errors;           // N - t*; negative when no error pattern is decodable
};

inline AgreementThreshold frs_agreement_threshold(const FrsParams& p) {
    const std::uint64_t window = p.u() - p.v() + 1;
    const std::uint64_t num = std::uint64_t{p.N()} * window + std::uint64_t{p.v()} * p.k();
    const std::uint64_t den = std::uint64_t{p.v() + 1} * window;
    const auto t_star = static_cast<unsigned>(num / den + 1);
    return {num, den, t_star, static_cast<int>(p.N()) - static_cast<int>(t_star)};
}

/// Nonzero interpolation polynomial Q = A_0 + A_1 Y_1 + ... + A_v Y_v.
struct Interpolant {
    std::vector<poly::Poly> A;  // A[0] has degree <= D + k - 1, A[i] degree <= D (i >= 1)
};

/// Interpolation step: Q vanishing on all sliding v-windows of every symbol.
inline Interpolant frs_interpolate(const FrsParams& p, const ReceivedWord& y) {
    details::require(y.symbols.size() == p.N(), ErrorCode::WrongLength, "received word has wrong length");
    for (const auto& s : y.symbols)
        details::require(s.size() == p.u(), ErrorCode::WrongLength, "received symbol has wrong width");
    const PrimeField& F = p.field();
    const std::size_t D = p.interpolation_degree();
    const std::size_t deg0 = D + p.k();  // number of A_0 coefficients
    const std::size_t unknowns = deg0 + std::size_t{p.v()} * (D + 1);
    Matrix M(p.window_count(), unknowns);
    std::size_t row = 0;
    for (unsigned j = 0; j < p.N(); ++j) {
        for (unsigned s = 0; s + p.v() <= p.u(); ++s, ++row) {
            const Fq alpha = p.point(std::size_t{j} * p.u() + s);
            Fq power = F.one();
            for (std::size_t e = 0; e < deg0; ++e) {
                M(row, e) = power;
                if (e <= D)
                    for (unsigned i = 0; i < p.v(); ++i) M(row, deg0 + i * (D + 1) + e) = F.mul(y.symbols[j][s + i], power);
                power = F.mul(power, alpha);
            }
        }
    }
    const auto kernel = nullspace(F, M);
    details::require(!kernel.empty(), ErrorCode::InterpolationFailed, "only the zero polynomial fits the constraints");
    const FqVector& q = kernel.front();
    Interpolant Q;
    Q.A.emplace_back(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(deg0));
    for (unsigned i = 0; i < p.v(); ++i) {
        auto first = q.begin() + static_cast<std::ptrdiff_t>(deg0 + i * (D + 1));
        Q.A.emplace_back(first, first + static_cast<std::ptrdiff_t>(D + 1));
    }
    return Q;
}

/// Q(alpha, y_1, ..., y_v).
inline Fq evaluate_interpolant(const PrimeField& F, const Interpolant& Q, Fq alpha, std::span<const Fq> ys) {
    Fq acc = poly::eval(F, Q.A[0], alpha);
    for (std::size_t i = 1; i < Q.A.size(); ++i) acc = F.add(acc, F.mul(poly::eval(F, Q.A[i], alpha), ys[i - 1]));
    return acc;
}

/**
 * Message-finding step: every f of degree < k with
 * A_0(X) + sum_i A_i(X) f(gamma^{i-1} X) = 0 satisfies the lower-triangular
 * system T f = -(a_{0,0}, ..., a_{0,k-1}) with T(i, j) = B_{i-j}(gamma^j),
 * B_l(X) = sum_i a_{i,l} X^{i-1}. A common factor X^r of A_1..A_v is divided
 * out first so that B_0 is nonzero.
 */
inline AffineSpace frs_solve_messages(const FrsParams& p, Interpolant Q) {
    const PrimeField& F = p.field();
    const std::size_t k = p.k();
    std::size_t shift = SIZE_MAX;
    for (std::size_t i = 1; i < Q.A.size(); ++i)
        for (std::size_t e = 0; e < Q.A[i].size(); ++e)
            if (Q.A[i][e].v != 0) {
                shift = std::min(shift, e);
                break;
            }
    if (shift == SIZE_MAX) return AffineSpace::empty_space(k);  // Q = A_0(X) cannot vanish identically
    for (std::size_t e = 0; e < shift && e < Q.A[0].size(); ++e)
        if (Q.A[0][e].v != 0) return AffineSpace::empty_space(k);
    for (auto& a : Q.A) a.erase(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(std::min(shift, a.size())));

    auto coeff = [&](std::size_t i, std::size_t l) { return l < Q.A[i].size() ? Q.A[i][l] : F.zero(); };
    // B_l(gamma^j) for l < k, j < k
    Matrix T(k, k);
    FqVector rhs(k);
    Fq gamma_j = F.one();
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t l = 0; l + j < k; ++l) {
            Fq acc = F.zero();
            Fq power = F.one();
            for (std::size_t i = 1; i <= p.v(); ++i) {
                acc = F.add(acc, F.mul(coeff(i, l), power));
                power = F.mul(power, gamma_j);
            }
            T(j + l, j) = acc;
        }
        gamma_j = F.mul(gamma_j, p.gamma());
    }
    for (std::size_t i = 0; i < k; ++i) rhs[i] = F.neg(coeff(0, i));
    return solve_affine(F, T, rhs);
}

/// Linear-algebraic list decoding: an affine space of dimension <= v - 1
/// containing every message whose codeword agrees with y in >= t* symbols.
inline AffineSpace frs_list_decode(const FrsParams& p, const ReceivedWord& y) {
    return frs_solve_messages(p, frs_interpolate(p, y));
}

/// Points of `space` whose codewords lie within `radius` symbols of y, sorted.
inline std::vector<FqVector> frs_filter_list(const FrsParams& p, const AffineSpace& space, const ReceivedWord& y,
                                             std::size_t radius) {
    std::vector<FqVector> out;
    space.for_each_point(p.field(), [&](FqVector f) {
        if (symbol_distance(frs_encode(p, f), y) <= radius) out.push_back(std::move(f));
    });
    std::sort(out.begin(), out.end());
    return out;
}

/// Test oracle: every coefficient vector within `radius` of y, by exhaustive enumeration.
inline std::vector<FqVector> brute_force_list(const FrsParams& p, const ReceivedWord& y, std::size_t radius) {
    const std::uint64_t q = p.field().order();
    std::uint64_t total = 1;
    for (unsigned i = 0; i < p.k(); ++i) {
        total *= q;
        details::require(total <= 1'000'000, ErrorCode::TooLarge, "q^k exceeds 10^6");
    }
    std::vector<FqVector> out;
    FqVector f(p.k(), p.field().zero());
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t rem = idx;
        for (auto& c : f) {
            c = Fq{static_cast<std::uint32_t>(rem % q)};
            rem /= q;
        }
        if (symbol_distance(frs_encode(p, f), y) <= radius) out.push_back(f);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace awtp

#endif
