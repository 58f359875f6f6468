#ifndef AWTP_SMT_HPP
#define AWTP_SMT_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "channel.hpp"

namespace awtp {

/// One-round symmetric SMT over N wires: wire j carries one codeword component.
struct SmtProtocol {
    AwtpParams params;
    unsigned N = 0;
    unsigned t = 0;           // corruption threshold rho N
    BigInt alphabet_size = 0; // |V| = q^u
};

/// Requires a restricted instance (rho_r = rho_w); callers wanting a general
/// instance set both to max(rho_r, rho_w) first.
inline SmtProtocol smt_from_awtp(const AwtpParams& p) {
    details::require(p.rho_r == p.rho_w, ErrorCode::NotRestricted, "SMT needs rho_r = rho_w");
    details::require(boost::multiprecision::denominator(Rational(p.rho_r * p.N)) == 1, ErrorCode::InfeasibleParameters,
                     "rho N must be an integer");
    return {p, p.N, p.reads(), boost::multiprecision::pow(BigInt(p.q), p.u)};
}

inline ChannelSpec smt_channel(const SmtProtocol& s) { return {s.N, s.params.u, s.params.q, s.t, s.t, true}; }

/// N log|V| / log|M| = 1 / R.
inline Rational transmission_rate(const SmtProtocol& s) {
    const Rational r = rate(s.params);
    details::require(r != 0, ErrorCode::DomainError, "rate is zero");
    return 1 / r;
}

/// tau_R >= N / (N - 2t + 2 t eps (1 + log_sigma(1/eps))).
inline double smt_lower_bound(unsigned N, unsigned t, double eps, double sigma_size) {
    details::require(N >= 1 && eps >= 0 && eps < 1 && sigma_size >= 2, ErrorCode::DomainError,
                     "need N >= 1, 0 <= eps < 1, |V| >= 2");
    if (t == 0) return 1.0;
    double den = static_cast<double>(N) - 2.0 * t;
    if (eps > 0) den += 2.0 * t * eps * (1 + std::log(1 / eps) / std::log(sigma_size));
    details::require(den > 0, ErrorCode::DomainError, "bound undefined: N - 2t + 2t eps(...) <= 0");
    return static_cast<double>(N) / den;
}

/// The same bound per unit of N, for a corruption fraction rho = t / N; nullopt where undefined.
inline std::optional<double> smt_rate_bound(double rho, double eps, double sigma_size) {
    details::require(rho >= 0 && rho <= 1 && eps >= 0 && eps < 1 && sigma_size >= 2, ErrorCode::DomainError,
                     "need 0 <= rho <= 1, 0 <= eps < 1, |V| >= 2");
    if (rho == 0) return 1.0;
    double den = 1.0 - 2.0 * rho;
    if (eps > 0) den += 2.0 * rho * eps * (1 + std::log(1 / eps) / std::log(sigma_size));
    if (den <= 0) return std::nullopt;
    return 1.0 / den;
}

/// perm[j] is the wire carrying component j; identity when empty.
using WirePermutation = std::vector<unsigned>;

namespace details {

inline void check_permutation(const WirePermutation& perm, unsigned N) {
    if (perm.empty()) return;
    require(perm.size() == N, ErrorCode::WrongLength, "permutation length differs from N");
    std::vector<bool> seen(N, false);
    for (auto w : perm) {
        require(w < N && !seen[w], ErrorCode::InvalidSets, "not a permutation of the wires");
        seen[w] = true;
    }
}

}  // namespace details

/// Wire values for a message: the AWTP codeword laid out by `perm`.
inline FoldedWord smt_send(const AwtpCode& code, std::span<const ExtElem> message, Rng& rng,
                           const WirePermutation& perm = {}) {
    const FrsCodeword c = awtp_encode(code, message, rng);
    if (perm.empty()) return c;
    details::check_permutation(perm, code.params().N);
    FoldedWord wires;
    wires.symbols.resize(c.symbols.size());
    for (std::size_t j = 0; j < c.symbols.size(); ++j) wires.symbols[perm[j]] = c.symbols[j];
    return wires;
}

inline DecodeOutcome smt_receive(const AwtpCode& code, const FoldedWord& wires, const WirePermutation& perm = {},
                                 const DecodeOptions& opts = {}) {
    if (perm.empty()) return awtp_decode(code, wires, opts);
    details::check_permutation(perm, code.params().N);
    details::require(wires.symbols.size() == perm.size(), ErrorCode::WrongLength, "wire count differs from N");
    ReceivedWord y;
    y.symbols.resize(perm.size());
    for (std::size_t j = 0; j < perm.size(); ++j) y.symbols[j] = wires.symbols[perm[j]];
    return awtp_decode(code, y, opts);
}

/// Failure campaign against threshold-t wire replacement on a restricted channel.
inline ReliabilityReport smt_simulate(const SmtProtocol& s, const AwtpCode& code, std::size_t trials,
                                      std::uint64_t seed) {
    WireReplacement adversary;
    return reliability_estimate(code, smt_channel(s), adversary, trials, seed);
}

}  // namespace awtp

#endif
