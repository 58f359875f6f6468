#ifndef AWTP_FIELDS_HPP
#define AWTP_FIELDS_HPP

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "error.hpp"
#include "random.hpp"

namespace awtp {

/// Canonical representative of an element of F_q, always in [0, q).
struct Fq {
    std::uint32_t v = 0;

    friend constexpr auto operator<=>(Fq, Fq) = default;
    friend std::ostream& operator<<(std::ostream& os, Fq a) { return os << a.v; }
};

using FqVector = std::vector<Fq>;

namespace details {

constexpr bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

}  // namespace details

/// Distinct prime divisors of n in increasing order.
inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

/// Modular inverse of a modulo m, assuming gcd(a, m) == 1.
inline std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
    while (new_r != 0) {
        const std::int64_t quot = r / new_r;
        std::tie(t, new_t) = std::make_pair(new_t, t - quot * new_t);
        std::tie(r, new_r) = std::make_pair(new_r, r - quot * new_r);
    }
    if (t < 0) t += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(t) % m;
}

/**
 * Arithmetic context for the prime field F_q (desk scale, q < 2^31).
 * Elements are plain Fq values; the field is immutable after construction.
 */
class PrimeField {
   public:
    explicit PrimeField(std::uint64_t q) : q_(static_cast<std::uint32_t>(q)) {
        details::require(q >= 2 && q < (1ULL << 31), ErrorCode::DomainError,
                         "field order " + std::to_string(q) + " outside [2, 2^31)");
        details::require(details::is_prime(q), ErrorCode::NotPrime, std::to_string(q) + " is not prime");
    }

    std::uint32_t order() const noexcept { return q_; }

    Fq zero() const noexcept { return Fq{0}; }
    Fq one() const noexcept { return Fq{1 % q_}; }

    /// Reduces any signed integer into its canonical representative.
    Fq from(std::int64_t x) const noexcept {
        std::int64_t r = x % static_cast<std::int64_t>(q_);
        if (r < 0) r += q_;
        return Fq{static_cast<std::uint32_t>(r)};
    }

    bool contains(std::uint64_t x) const noexcept { return x < q_; }

    Fq add(Fq a, Fq b) const noexcept {
        std::uint64_t s = std::uint64_t{a.v} + b.v;
        return Fq{static_cast<std::uint32_t>(s >= q_ ? s - q_ : s)};
    }
    Fq sub(Fq a, Fq b) const noexcept { return Fq{a.v >= b.v ? a.v - b.v : a.v + q_ - b.v}; }
    Fq neg(Fq a) const noexcept { return Fq{a.v == 0 ? 0 : q_ - a.v}; }
    Fq mul(Fq a, Fq b) const noexcept {
        return Fq{static_cast<std::uint32_t>(std::uint64_t{a.v} * b.v % q_)};
    }

    Fq pow(Fq a, std::uint64_t e) const noexcept {
        Fq result = one();
        while (e > 0) {
            if (e & 1) result = mul(result, a);
            a = mul(a, a);
            e >>= 1;
        }
        return result;
    }

    Fq inv(Fq a) const {
        details::require(a.v != 0, ErrorCode::DomainError, "inverse of zero");
        return Fq{static_cast<std::uint32_t>(inverse_mod(a.v, q_))};
    }

    Fq div(Fq a, Fq b) const { return mul(a, inv(b)); }

    Fq uniform(Rng& rng) const { return Fq{static_cast<std::uint32_t>(rng.below(q_))}; }

    Fq uniform_nonzero(Rng& rng) const { return Fq{static_cast<std::uint32_t>(1 + rng.below(q_ - 1))}; }

    FqVector uniform_vector(Rng& rng, std::size_t len) const {
        FqVector out(len);
        for (auto& x : out) x = uniform(rng);
        return out;
    }

    /// Multiplicative order of a nonzero element.
    std::uint64_t multiplicative_order(Fq a) const {
        details::require(a.v != 0, ErrorCode::DomainError, "order of zero");
        std::uint64_t order = q_ - 1;
        for (auto p : prime_factors(q_ - 1)) {
            while (order % p == 0 && pow(a, order / p) == one()) order /= p;
        }
        return order;
    }

    friend bool operator==(const PrimeField& a, const PrimeField& b) noexcept { return a.q_ == b.q_; }

   private:
    std::uint32_t q_;
};

inline PrimeField make_prime_field(std::uint64_t q) { return PrimeField(q); }

/// Smallest generator of F_q^* in integer order.
inline Fq find_generator(const PrimeField& F) {
    const std::uint64_t group = F.order() - 1;
    if (group <= 1) return F.one();
    const auto factors = prime_factors(group);
    for (std::uint32_t g = 2; g < F.order(); ++g) {
        bool ok = true;
        for (auto p : factors) {
            if (F.pow(Fq{g}, group / p) == F.one()) {
                ok = false;
                break;
            }
        }
        if (ok) return Fq{g};
    }
    return F.one();  // unreachable for prime q
}

/// The unique x with x^d = y, for gcd(d, q-1) = 1.
inline Fq dth_root(const PrimeField& F, Fq y, std::uint64_t d) {
    const std::uint64_t group = F.order() - 1;
    if (group == 0 || group == 1) return y;
    details::require(d > 0 && std::gcd(d, group) == 1, ErrorCode::ExponentNotCoprime,
                     "gcd(" + std::to_string(d) + ", " + std::to_string(group) + ") != 1");
    return F.pow(y, inverse_mod(d % group, group));
}

}  // namespace awtp

#endif
