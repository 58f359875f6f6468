#ifndef AWTP_POLYNOMIAL_HPP
#define AWTP_POLYNOMIAL_HPP

#include <algorithm>
#include <cstdint>
#include <utility>

#include "fields.hpp"

// Dense univariate polynomials over F_q, stored low degree first.
// A trimmed polynomial has a nonzero leading coefficient; zero is empty.

namespace awtp::poly {

using Poly = FqVector;

inline void trim(Poly& p) {
    while (!p.empty() && p.back().v == 0) p.pop_back();
}

inline Poly trimmed(Poly p) {
    trim(p);
    return p;
}

/// Degree of p, or -1 for the zero polynomial.
inline int degree(const Poly& p) {
    for (std::size_t i = p.size(); i > 0; --i)
        if (p[i - 1].v != 0) return static_cast<int>(i - 1);
    return -1;
}

inline bool is_zero(const Poly& p) { return degree(p) < 0; }

/// Horner evaluation.
inline Fq eval(const PrimeField& F, const Poly& p, Fq x) {
    Fq acc = F.zero();
    for (std::size_t i = p.size(); i > 0; --i) acc = F.add(F.mul(acc, x), p[i - 1]);
    return acc;
}

inline Poly add(const PrimeField& F, const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size()), F.zero());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = F.add(out[i], b[i]);
    trim(out);
    return out;
}

inline Poly sub(const PrimeField& F, const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size()), F.zero());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = F.sub(out[i], b[i]);
    trim(out);
    return out;
}

inline Poly scale(const PrimeField& F, const Poly& a, Fq c) {
    Poly out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = F.mul(a[i], c);
    trim(out);
    return out;
}

inline Poly mul(const PrimeField& F, const Poly& a, const Poly& b) {
    if (is_zero(a) || is_zero(b)) return {};
    Poly out(a.size() + b.size() - 1, F.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].v == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
    }
    trim(out);
    return out;
}

/// Quotient and remainder of a by a nonzero b.
inline std::pair<Poly, Poly> divmod(const PrimeField& F, const Poly& a, const Poly& b) {
    const int db = degree(b);
    details::require(db >= 0, ErrorCode::DomainError, "polynomial division by zero");
    Poly rem = trimmed(a);
    const int da = degree(rem);
    if (da < db) return {Poly{}, rem};
    Poly quot(static_cast<std::size_t>(da - db + 1), F.zero());
    const Fq lead_inv = F.inv(b[static_cast<std::size_t>(db)]);
    for (int i = da; i >= db; --i) {
        const Fq c = F.mul(rem[static_cast<std::size_t>(i)], lead_inv);
        quot[static_cast<std::size_t>(i - db)] = c;
        if (c.v == 0) continue;
        for (int j = 0; j <= db; ++j) {
            auto& slot = rem[static_cast<std::size_t>(i - db + j)];
            slot = F.sub(slot, F.mul(c, b[static_cast<std::size_t>(j)]));
        }
    }
    trim(rem);
    trim(quot);
    return {quot, rem};
}

inline Poly mod(const PrimeField& F, const Poly& a, const Poly& b) { return divmod(F, a, b).second; }

/// Monic greatest common divisor (zero if both inputs are zero).
inline Poly gcd(const PrimeField& F, Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!is_zero(b)) {
        Poly r = mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (is_zero(a)) return a;
    return scale(F, a, F.inv(a.back()));
}

inline Poly mulmod(const PrimeField& F, const Poly& a, const Poly& b, const Poly& m) {
    return mod(F, mul(F, a, b), m);
}

inline Poly powmod(const PrimeField& F, Poly base, std::uint64_t e, const Poly& m) {
    Poly result = mod(F, Poly{F.one()}, m);
    base = mod(F, base, m);
    while (e > 0) {
        if (e & 1) result = mulmod(F, result, base, m);
        base = mulmod(F, base, base, m);
        e >>= 1;
    }
    return result;
}

/// Monic irreducibility test: gcd(X^(q^i) - X, m) = 1 for every i <= deg(m)/2.
inline bool is_irreducible(const PrimeField& F, const Poly& m) {
    const int deg = degree(m);
    if (deg <= 0) return false;
    if (deg == 1) return true;
    const Poly x{F.zero(), F.one()};
    Poly frob = x;  // X^(q^i) mod m
    for (int i = 1; i <= deg / 2; ++i) {
        frob = powmod(F, frob, F.order(), m);
        if (degree(gcd(F, sub(F, frob, x), m)) != 0) return false;
    }
    return true;
}

/// Shift f(X) -> f(c X).
inline Poly dilate(const PrimeField& F, const Poly& p, Fq c) {
    Poly out(p.size());
    Fq power = F.one();
    for (std::size_t i = 0; i < p.size(); ++i) {
        out[i] = F.mul(p[i], power);
        power = F.mul(power, c);
    }
    trim(out);
    return out;
}

}  // namespace awtp::poly

#endif
