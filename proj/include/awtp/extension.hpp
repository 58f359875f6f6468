#ifndef AWTP_EXTENSION_HPP
#define AWTP_EXTENSION_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <utility>

#include "fields.hpp"
#include "polynomial.hpp"

namespace awtp {

using BigInt = boost::multiprecision::cpp_int;

/// Element of F_{q^mu}: coefficient vector (length mu, low degree first) modulo the field modulus.
struct ExtElem {
    FqVector coeffs;

    friend bool operator==(const ExtElem&, const ExtElem&) = default;
};

/**
 * The extension field F_{q^mu} = F_q[X]/(m(X)).
 *
 * The modulus is the first monic irreducible polynomial of degree mu when the
 * lower coefficients (c_0, ..., c_{mu-1}) are enumerated as the base-q integer
 * c_0 + c_1 q + ... (c_0 fastest). The vector/field bijection is coefficient
 * identification: phi(c_0, ..., c_{mu-1}) = c_0 + c_1 X + ... .
 */
class ExtField {
   public:
    ExtField(PrimeField base, unsigned mu) : base_(base), mu_(mu) {
        details::require(mu >= 1, ErrorCode::DomainError, "extension degree must be >= 1");
        modulus_ = search_modulus();
    }

    const PrimeField& base() const noexcept { return base_; }
    unsigned degree() const noexcept { return mu_; }
    const poly::Poly& modulus() const noexcept { return modulus_; }

    BigInt order() const {
        BigInt out = 1;
        for (unsigned i = 0; i < mu_; ++i) out *= base_.order();
        return out;
    }

    ExtElem zero() const { return ExtElem{FqVector(mu_, base_.zero())}; }
    ExtElem one() const {
        ExtElem e = zero();
        e.coeffs[0] = base_.one();
        return e;
    }

    /// phi^{-1}: length-mu vector over F_q to field element.
    ExtElem from_vector(std::span<const Fq> v) const {
        details::require(v.size() == mu_, ErrorCode::WrongLength,
                         "expected " + std::to_string(mu_) + " coordinates, got " + std::to_string(v.size()));
        return ExtElem{FqVector(v.begin(), v.end())};
    }

    /// phi: field element to its length-mu coordinate vector.
    const FqVector& to_vector(const ExtElem& a) const { return a.coeffs; }

    ExtElem add(const ExtElem& a, const ExtElem& b) const {
        ExtElem out = zero();
        for (unsigned i = 0; i < mu_; ++i) out.coeffs[i] = base_.add(a.coeffs[i], b.coeffs[i]);
        return out;
    }

    ExtElem sub(const ExtElem& a, const ExtElem& b) const {
        ExtElem out = zero();
        for (unsigned i = 0; i < mu_; ++i) out.coeffs[i] = base_.sub(a.coeffs[i], b.coeffs[i]);
        return out;
    }

    ExtElem mul(const ExtElem& a, const ExtElem& b) const {
        return embed(poly::mulmod(base_, poly::trimmed(a.coeffs), poly::trimmed(b.coeffs), modulus_));
    }

    ExtElem pow(ExtElem a, std::uint64_t e) const {
        ExtElem result = one();
        while (e > 0) {
            if (e & 1) result = mul(result, a);
            a = mul(a, a);
            e >>= 1;
        }
        return result;
    }

    ExtElem pow(ExtElem a, BigInt e) const {
        ExtElem result = one();
        while (e > 0) {
            if (bit_test(e, 0)) result = mul(result, a);
            a = mul(a, a);
            e >>= 1;
        }
        return result;
    }

    /// Inverse via the extended Euclidean algorithm in F_q[X].
    ExtElem inv(const ExtElem& a) const {
        poly::Poly r0 = modulus_, r1 = poly::trimmed(a.coeffs);
        details::require(!poly::is_zero(r1), ErrorCode::DomainError, "inverse of zero");
        poly::Poly s0{}, s1{base_.one()};
        while (!poly::is_zero(r1)) {
            auto [quot, rem] = poly::divmod(base_, r0, r1);
            poly::Poly s2 = poly::sub(base_, s0, poly::mul(base_, quot, s1));
            r0 = std::move(r1);
            r1 = std::move(rem);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        // r0 is a nonzero constant since the modulus is irreducible
        return embed(poly::scale(base_, s0, base_.inv(r0[0])));
    }

    ExtElem uniform(Rng& rng) const { return ExtElem{base_.uniform_vector(rng, mu_)}; }

    /// Element whose coordinate vector is the base-q digit expansion of index (index < q^mu).
    ExtElem from_index(std::uint64_t index) const {
        ExtElem out = zero();
        for (unsigned i = 0; i < mu_; ++i) {
            out.coeffs[i] = Fq{static_cast<std::uint32_t>(index % base_.order())};
            index /= base_.order();
        }
        return out;
    }

   private:
    ExtElem embed(poly::Poly p) const {
        p.resize(mu_, base_.zero());
        return ExtElem{std::move(p)};
    }

    poly::Poly search_modulus() const {
        if (mu_ == 1) return poly::Poly{base_.zero(), base_.one()};  // X: F_q itself, phi = identity
        poly::Poly candidate(mu_ + 1, base_.zero());
        candidate[mu_] = base_.one();
        for (;;) {
            if (poly::is_irreducible(base_, candidate)) return candidate;
            // next candidate: increment base-q counter over the low coefficients
            unsigned i = 0;
            while (i < mu_ && candidate[i].v + 1 == base_.order()) candidate[i++] = base_.zero();
            details::require(i < mu_, ErrorCode::DomainError, "no irreducible polynomial found");
            candidate[i].v += 1;
        }
    }

    PrimeField base_;
    unsigned mu_;
    poly::Poly modulus_;
};

inline ExtField make_extension_field(const PrimeField& F, unsigned mu) { return ExtField(F, mu); }

/// d-th root in F_{q^mu} for gcd(d, q^mu - 1) = 1.
inline ExtElem dth_root(const ExtField& E, const ExtElem& y, std::uint64_t d) {
    const BigInt group = E.order() - 1;
    if (group <= 1) return y;
    BigInt dd = d;
    details::require(d > 0 && boost::multiprecision::gcd(dd, group) == 1, ErrorCode::ExponentNotCoprime,
                     "exponent not coprime to the multiplicative group order");
    // inverse of d modulo the group order
    BigInt t = 0, new_t = 1, r = group, new_r = dd % group;
    while (new_r != 0) {
        BigInt quot = r / new_r;
        BigInt tmp = t - quot * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - quot * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (t < 0) t += group;
    return E.pow(y, t);
}

}  // namespace awtp

#endif
