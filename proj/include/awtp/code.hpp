#ifndef AWTP_CODE_HPP
#define AWTP_CODE_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "amd.hpp"
#include "evasive.hpp"
#include "frs.hpp"

namespace awtp {

/**
 * Full parameter tuple of the wiretap code. rho_r N and rho_w N must be
 * integers; k = n + u rho_r N is derived.
 */
struct AwtpParams {
    std::uint32_t q = 0;
    unsigned u = 0;
    unsigned v = 0;
    unsigned N = 0;
    unsigned mu = 1;
    unsigned d = 0;
    unsigned w = 0;
    unsigned b = 0;
    Rational rho_r = 0;
    Rational rho_w = 0;
    std::uint64_t seed = 0;

    /// Read budget rho_r N (truncated when not integral; check_params flags that).
    unsigned reads() const { return budget(rho_r); }
    unsigned writes() const { return budget(rho_w); }
    std::size_t n() const noexcept { return std::size_t{w} * b; }
    std::size_t n1() const noexcept { return w >= v ? std::size_t{w - v} * b : 0; }
    std::size_t filler() const { return std::size_t{u} * reads(); }
    std::size_t k() const { return n() + filler(); }
    std::size_t amd_length() const noexcept { return std::size_t{d + 2} * mu; }
    std::size_t message_length() const noexcept { return std::size_t{d} * mu; }

    friend bool operator==(const AwtpParams&, const AwtpParams&) = default;

   private:
    unsigned budget(const Rational& rho) const {
        const Rational x = rho * N;
        return static_cast<unsigned>(BigInt(boost::multiprecision::numerator(x) / boost::multiprecision::denominator(x)));
    }
};

struct FeasibilityReport {
    std::vector<std::string> structural_failures;
    bool operative_ok = false;   // rho_w N <= N - t*
    unsigned t_star = 0;
    int max_errors = 0;
    std::optional<Rational> asymptotic_bound;  // right side of the sufficient condition on rho_w (v >= 2)
    bool asymptotic_ok = false;                // informational only

    bool structural_ok() const noexcept { return structural_failures.empty(); }
    bool feasible() const noexcept { return structural_ok() && operative_ok; }
};

/// Message rate d mu / (u N).
inline Rational rate(const AwtpParams& p) {
    if (p.u == 0 || p.N == 0) return Rational(0);
    return Rational(BigInt(p.d) * p.mu, BigInt(p.u) * p.N);
}

/// Right side of the asymptotic sufficient condition
/// rho_w < v/(v+1) - v/(v+1) * (v/(v-1) (uR + 3) + u rho_r) / (u - v + 1).
inline std::optional<Rational> asymptotic_write_bound(const AwtpParams& p) {
    if (p.v < 2 || p.u + 1 <= p.v || p.N == 0) return std::nullopt;
    const Rational v(p.v), u(p.u);
    const Rational uR = rate(p) * u;
    const Rational frac = v / (v + 1);
    return frac - frac * ((v / (v - 1)) * (uR + 3) + u * p.rho_r) / (u - v + 1);
}

inline FeasibilityReport check_params(const AwtpParams& p) {
    FeasibilityReport rep;
    auto fail = [&](std::string msg) { rep.structural_failures.push_back(std::move(msg)); };
    if (!details::is_prime(p.q) || p.q >= (1U << 31)) fail("q = " + std::to_string(p.q) + " is not a desk-scale prime");
    if (p.u < 1 || p.N < 1 || p.mu < 1 || p.b < 1) fail("u, N, mu and b must be >= 1");
    if (p.d < 1) fail("d must be >= 1");
    if (p.v < 1 || p.v > p.u) fail("need 1 <= v <= u");
    if (std::uint64_t{p.q} <= std::uint64_t{p.N} * p.u) fail("need q > N u");
    if (p.w != p.v * p.v) fail("need w = v^2");
    for (const auto& [name, rho] : {std::pair{"rho_r", p.rho_r}, std::pair{"rho_w", p.rho_w}}) {
        if (rho < 0 || rho > 1) fail(std::string(name) + " must lie in [0, 1]");
        else if (boost::multiprecision::denominator(Rational(rho * p.N)) != 1)
            fail(std::string(name) + " N must be an integer");
    }
    if (p.n1() < p.amd_length())
        fail("n1 = " + std::to_string(p.n1()) + " is smaller than the AMD codeword length " +
             std::to_string(p.amd_length()));
    if (p.k() > std::size_t{p.u} * p.N) fail("k = " + std::to_string(p.k()) + " exceeds u N");
    if (p.q >= 2 && (p.d + 2) % p.q == 0) fail("d + 2 must not be divisible by q");
    if (rep.structural_ok()) {
        try {
            EvasiveSystem sys(PrimeField(p.q), p.v, p.b);
        } catch (const Error& e) {
            fail(std::string("evasive set: ") + e.what());
        }
    }
    if (rep.structural_ok()) {
        const PrimeField F(p.q);
        const FrsParams frs(F, p.u, p.N, static_cast<unsigned>(p.k()), p.v, find_generator(F));
        const auto thr = frs_agreement_threshold(frs);
        rep.t_star = thr.t_star;
        rep.max_errors = thr.max_errors;
        rep.operative_ok = thr.max_errors >= 0 && p.writes() <= static_cast<unsigned>(thr.max_errors);
    }
    rep.asymptotic_bound = asymptotic_write_bound(p);
    rep.asymptotic_ok = rep.asymptotic_bound && p.rho_w < *rep.asymptotic_bound;
    return rep;
}

/// Secrecy-capacity upper bound; for eps = 0 this is 1 - rho_r - rho_w.
inline double capacity_bound(double rho_r, double rho_w, double eps, double sigma_size) {
    details::require(rho_r >= 0 && rho_w >= 0 && eps >= 0 && eps < 1 && sigma_size >= 2, ErrorCode::DomainError,
                     "need rho_r, rho_w >= 0, 0 <= eps < 1, |Sigma| >= 2");
    const double base = 1.0 - (rho_r + rho_w);
    if (eps == 0) return base;
    return base + 2 * eps * rho_r * (1 + std::log2(1 / eps) / std::log2(sigma_size));
}

/// Rate of the capacity-approaching family, 1 - rho_r - rho_w - xi.
inline double family_rate(double rho_r, double rho_w, double xi) { return 1.0 - (rho_r + rho_w) - xi; }

struct DecodeOutcome {
    enum class Kind { Message, Ambiguous, NoCandidate };

    Kind kind = Kind::NoCandidate;
    std::vector<ExtElem> message;   // set for Kind::Message
    std::size_t valid = 0;          // candidates passing AMD verification
    std::size_t list_size = 0;      // |S ∩ H|
    std::size_t space_dimension = 0;
    bool randomly_selected = false;

    bool ok() const noexcept { return kind == Kind::Message; }
};

inline std::string to_string(DecodeOutcome::Kind k) {
    switch (k) {
        case DecodeOutcome::Kind::Message: return "message";
        case DecodeOutcome::Kind::Ambiguous: return "ambiguous";
        case DecodeOutcome::Kind::NoCandidate: return "no-candidate";
    }
    return "unknown";
}

struct DecodeOptions {
    /// Output a uniformly random valid candidate when several verify, instead of Ambiguous.
    bool random_select = false;
    std::uint64_t select_seed = 0;
};

/// Intermediate values of one encoding, stage by stage.
struct EncodeTrace {
    AmdCodeword amd;
    FqVector padded;   // AMD symbols followed by zeros, length n1
    EvasivePoint s;
    FqVector filler;   // u rho_r N uniform coefficients
    FqVector coeffs;   // s || filler
    FrsCodeword codeword;
};

/// A validated code instance: AMD layer, evasive set and FRS code.
class AwtpCode {
   public:
    explicit AwtpCode(const AwtpParams& p)
        : params_(validated(p)),
          F_(p.q),
          gamma_(find_generator(F_)),
          amd_(ExtField(F_, p.mu), p.d),
          evasive_(F_, p.v, p.b),
          frs_(F_, p.u, p.N, static_cast<unsigned>(p.k()), p.v, gamma_) {}

    const AwtpParams& params() const noexcept { return params_; }
    const PrimeField& field() const noexcept { return F_; }
    Fq gamma() const noexcept { return gamma_; }
    const AmdParams& amd() const noexcept { return amd_; }
    const EvasiveSystem& evasive() const noexcept { return evasive_; }
    const FrsParams& frs() const noexcept { return frs_; }

    /// (d + 1) / q^mu: the forgery probability of one wrong list candidate.
    Rational forgery_bound() const { return amd_failure_bound(amd_); }

    /// Union bound ell (d + 1) / q^mu over ell wrong candidates, capped at 1.
    Rational decoding_error_bound(std::size_t ell) const {
        Rational b = forgery_bound() * ell;
        return b > 1 ? Rational(1) : b;
    }

   private:
    static const AwtpParams& validated(const AwtpParams& p) {
        const FeasibilityReport rep = check_params(p);
        if (!rep.structural_ok()) details::fail(ErrorCode::InfeasibleParameters, rep.structural_failures.front());
        if (!rep.operative_ok)
            details::fail(ErrorCode::InfeasibleParameters,
                          "rho_w N = " + std::to_string(p.writes()) + " exceeds N - t* = " +
                              std::to_string(rep.max_errors));
        return p;
    }

    AwtpParams params_;
    PrimeField F_;
    Fq gamma_;
    AmdParams amd_;
    EvasiveSystem evasive_;
    FrsParams frs_;
};

inline EncodeTrace awtp_encode_traced(const AwtpCode& code, std::span<const ExtElem> message, Rng& rng) {
    const AwtpParams& p = code.params();
    EncodeTrace tr;
    tr.amd = amd_encode(code.amd(), message, rng);
    tr.padded = amd_to_symbols(code.amd(), tr.amd);
    tr.padded.resize(p.n1(), code.field().zero());
    tr.s = se_encode(code.evasive(), tr.padded);
    tr.filler = code.field().uniform_vector(rng, p.filler());
    tr.coeffs = tr.s.coords;
    tr.coeffs.insert(tr.coeffs.end(), tr.filler.begin(), tr.filler.end());
    tr.codeword = frs_encode(code.frs(), tr.coeffs);
    return tr;
}

/// AMD-encode, pad and map into S, append uniform filler, FRS-encode.
inline FrsCodeword awtp_encode(const AwtpCode& code, std::span<const ExtElem> message, Rng& rng) {
    return awtp_encode_traced(code, message, rng).codeword;
}

/// Same, with the message given as d mu base-field symbols.
inline FrsCodeword awtp_encode_symbols(const AwtpCode& code, std::span<const Fq> message, Rng& rng) {
    const auto blocks = blocks_from_symbols(code.amd(), message);
    return awtp_encode(code, blocks, rng);
}

/**
 * List-decode, keep the first n coordinates of the affine space, intersect
 * with S and verify each candidate's AMD codeword (padding must be zero).
 */
inline DecodeOutcome awtp_decode(const AwtpCode& code, const ReceivedWord& y, const DecodeOptions& opts = {}) {
    const AwtpParams& p = code.params();
    details::require(y.symbols.size() == p.N, ErrorCode::WrongLength, "received word has wrong length");
    DecodeOutcome out;
    const AffineSpace space = frs_list_decode(code.frs(), y);
    if (space.empty()) return out;
    out.space_dimension = space.dimension();
    const AffineSpace H = space.leading(code.field(), p.n());
    const auto candidates = se_intersect(code.evasive(), H);
    out.list_size = candidates.size();
    std::vector<std::vector<ExtElem>> valid;
    for (const auto& s : candidates) {
        const FqVector vec = se_decode(code.evasive(), s);
        bool padded_zero = true;
        for (std::size_t i = p.amd_length(); i < vec.size(); ++i) padded_zero &= (vec[i].v == 0);
        if (!padded_zero) continue;
        const auto cw = amd_from_symbols(code.amd(), std::span<const Fq>(vec).first(p.amd_length()));
        if (auto msg = amd_verify(code.amd(), cw)) valid.push_back(std::move(*msg));
    }
    out.valid = valid.size();
    if (valid.size() == 1) {
        out.kind = DecodeOutcome::Kind::Message;
        out.message = std::move(valid.front());
    } else if (valid.size() > 1) {
        out.kind = DecodeOutcome::Kind::Ambiguous;
        if (opts.random_select) {
            Rng pick(opts.select_seed);
            out.kind = DecodeOutcome::Kind::Message;
            out.message = std::move(valid[pick.below(valid.size())]);
            out.randomly_selected = true;
        }
    }
    return out;
}

}  // namespace awtp

#endif
