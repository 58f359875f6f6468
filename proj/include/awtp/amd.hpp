#ifndef AWTP_AMD_HPP
#define AWTP_AMD_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "extension.hpp"

namespace awtp {

using Rational = boost::multiprecision::cpp_rational;

/// Systematic AMD code over F_{q^mu} with d message blocks.
class AmdParams {
   public:
    AmdParams(ExtField field, unsigned d) : field_(std::move(field)), d_(d) {
        details::require(d_ >= 1, ErrorCode::InfeasibleParameters, "AMD code needs d >= 1");
        details::require((d_ + 2) % field_.base().order() != 0, ErrorCode::InfeasibleParameters,
                         "d + 2 must not be divisible by q");
    }

    const ExtField& field() const noexcept { return field_; }
    unsigned blocks() const noexcept { return d_; }
    unsigned mu() const noexcept { return field_.degree(); }

    /// Length of a codeword (x, r, t) over the base field: (d + 2) mu.
    std::size_t symbol_length() const noexcept { return std::size_t{d_ + 2} * mu(); }

   private:
    ExtField field_;
    unsigned d_;
};

struct AmdCodeword {
    std::vector<ExtElem> x;
    ExtElem r;
    ExtElem t;

    friend bool operator==(const AmdCodeword&, const AmdCodeword&) = default;
};

/// f(x, r) = r^{d+2} + sum_{i=1..d} x_i r^i, evaluated by Horner's rule.
inline ExtElem amd_tag(const AmdParams& p, std::span<const ExtElem> x, const ExtElem& r) {
    details::require(x.size() == p.blocks(), ErrorCode::WrongLength,
                     "expected " + std::to_string(p.blocks()) + " message blocks, got " + std::to_string(x.size()));
    const ExtField& E = p.field();
    // coefficient sequence from r^{d+2} down: 1, 0, x_d, ..., x_1, 0
    ExtElem acc = r;
    for (std::size_t i = x.size(); i > 0; --i) acc = E.add(E.mul(acc, r), x[i - 1]);
    return E.mul(acc, r);
}

inline AmdCodeword amd_encode(const AmdParams& p, std::span<const ExtElem> x, Rng& rng) {
    details::require(x.size() == p.blocks(), ErrorCode::WrongLength,
                     "expected " + std::to_string(p.blocks()) + " message blocks, got " + std::to_string(x.size()));
    ExtElem r = p.field().uniform(rng);
    ExtElem t = amd_tag(p, x, r);
    return {std::vector<ExtElem>(x.begin(), x.end()), std::move(r), std::move(t)};
}

/// The message blocks when t = f(x, r); nullopt (reject) otherwise.
inline std::optional<std::vector<ExtElem>> amd_verify(const AmdParams& p, const AmdCodeword& c) {
    if (c.x.size() != p.blocks()) return std::nullopt;
    if (amd_tag(p, c.x, c.r) != c.t) return std::nullopt;
    return c.x;
}

/// Forgery bound (d + 1) / q^mu for an oblivious additive adversary.
inline Rational amd_failure_bound(const AmdParams& p) {
    return Rational(BigInt(p.blocks() + 1), p.field().order());
}

/// Flattens (x, r, t) to (d + 2) mu base-field symbols through phi.
inline FqVector amd_to_symbols(const AmdParams& p, const AmdCodeword& c) {
    FqVector out;
    out.reserve(p.symbol_length());
    auto append = [&](const ExtElem& e) {
        const auto& v = p.field().to_vector(e);
        out.insert(out.end(), v.begin(), v.end());
    };
    for (const auto& xi : c.x) append(xi);
    append(c.r);
    append(c.t);
    return out;
}

inline AmdCodeword amd_from_symbols(const AmdParams& p, std::span<const Fq> symbols) {
    details::require(symbols.size() == p.symbol_length(), ErrorCode::WrongLength,
                     "expected " + std::to_string(p.symbol_length()) + " symbols, got " +
                         std::to_string(symbols.size()));
    const std::size_t mu = p.mu();
    auto block = [&](std::size_t i) { return p.field().from_vector(symbols.subspan(i * mu, mu)); };
    AmdCodeword c;
    for (std::size_t i = 0; i < p.blocks(); ++i) c.x.push_back(block(i));
    c.r = block(p.blocks());
    c.t = block(p.blocks() + 1);
    return c;
}

/// Groups d mu base-field symbols into d extension-field message blocks.
inline std::vector<ExtElem> blocks_from_symbols(const AmdParams& p, std::span<const Fq> symbols) {
    details::require(symbols.size() == std::size_t{p.blocks()} * p.mu(), ErrorCode::WrongLength,
                     "expected " + std::to_string(p.blocks() * p.mu()) + " message symbols, got " +
                         std::to_string(symbols.size()));
    std::vector<ExtElem> out;
    for (std::size_t i = 0; i < p.blocks(); ++i) out.push_back(p.field().from_vector(symbols.subspan(i * p.mu(), p.mu())));
    return out;
}

inline FqVector blocks_to_symbols(const AmdParams& p, std::span<const ExtElem> blocks) {
    FqVector out;
    for (const auto& b : blocks) {
        const auto& v = p.field().to_vector(b);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

}  // namespace awtp

#endif
