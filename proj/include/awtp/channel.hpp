#ifndef AWTP_CHANNEL_HPP
#define AWTP_CHANNEL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "code.hpp"

namespace awtp {

/// The (rho_r, rho_w) adversarial wiretap channel over length-N words of F_q^u symbols.
struct ChannelSpec {
    unsigned N = 0;
    unsigned u = 0;
    std::uint32_t q = 0;
    unsigned reads = 0;   // rho_r N
    unsigned writes = 0;  // rho_w N
    bool restricted = false;

    static ChannelSpec from(const AwtpParams& p, bool restricted = false) {
        return {p.N, p.u, p.q, p.reads(), p.writes(), restricted};
    }
};

struct ReadRequest {
    unsigned position;
};
struct WriteRequest {
    unsigned position;
    FqVector delta;  // added to the symbol, componentwise over F_q
};
struct DoneRequest {};

using Request = std::variant<ReadRequest, WriteRequest, DoneRequest>;

/// What an adversary has learned so far.
struct AdversaryView {
    std::vector<std::pair<unsigned, FqVector>> reads;  // (position, symbol) in request order

    const FqVector* symbol_at(unsigned pos) const {
        for (const auto& [p, s] : reads)
            if (p == pos) return &s;
        return nullptr;
    }
};

/// Read-only state handed to a strategy before each request.
struct AdversaryContext {
    const ChannelSpec& spec;
    const AdversaryView& view;
    const std::set<unsigned>& read_set;
    const std::set<unsigned>& write_set;
    bool last_granted;
};

/**
 * Adaptive adversary: issues one request at a time and may condition each
 * request on everything granted so far. begin() is called once per transmission.
 */
class Adversary {
   public:
    virtual ~Adversary() = default;
    virtual std::string name() const = 0;
    virtual void begin(const ChannelSpec&, Rng&) {}
    virtual Request next(const AdversaryContext& ctx, Rng& rng) = 0;
};

struct ActionRecord {
    enum class Kind { Read, Write };
    Kind kind;
    unsigned position;
    FqVector value;  // symbol returned for a read, delta for a write
    bool granted;
    std::string note;  // refusal reason

    friend bool operator==(const ActionRecord&, const ActionRecord&) = default;
};

struct Transcript {
    std::string adversary;
    std::uint64_t seed = 0;
    std::vector<ActionRecord> actions;
    std::set<unsigned> read_set;
    std::set<unsigned> write_set;
    FoldedWord error;     // e
    FoldedWord received;  // y = c + e

    std::size_t refused() const {
        return static_cast<std::size_t>(std::count_if(actions.begin(), actions.end(), [](const auto& a) { return !a.granted; }));
    }

    std::set<unsigned> error_support() const {
        std::set<unsigned> out;
        for (unsigned j = 0; j < error.symbols.size(); ++j)
            for (auto x : error.symbols[j])
                if (x.v != 0) {
                    out.insert(j);
                    break;
                }
        return out;
    }

    friend bool operator==(const Transcript&, const Transcript&) = default;
};

/**
 * Runs the request/grant protocol between a codeword and a strategy. Requests
 * over budget (or, on a restricted channel, writes outside the read set) are
 * refused and logged; the strategy continues. The adversary's randomness is
 * `rng`, whose seed is recorded in the transcript.
 */
inline std::pair<ReceivedWord, Transcript> transmit(const FrsCodeword& c, const ChannelSpec& spec, Adversary& adversary,
                                                    Rng& rng) {
    details::require(c.symbols.size() == spec.N, ErrorCode::WrongLength, "codeword length differs from N");
    const PrimeField F(spec.q);
    Transcript tr;
    tr.adversary = adversary.name();
    tr.seed = rng.seed();
    tr.error.symbols.assign(spec.N, FqVector(spec.u, F.zero()));
    AdversaryView view;
    adversary.begin(spec, rng);
    bool last_granted = true;
    const std::size_t step_limit = 4 * std::size_t{spec.N} + 64;
    for (std::size_t step = 0; step < step_limit; ++step) {
        const AdversaryContext ctx{spec, view, tr.read_set, tr.write_set, last_granted};
        Request req = adversary.next(ctx, rng);
        if (std::holds_alternative<DoneRequest>(req)) break;
        if (auto* r = std::get_if<ReadRequest>(&req)) {
            ActionRecord rec{ActionRecord::Kind::Read, r->position, {}, false, {}};
            if (r->position >= spec.N) {
                rec.note = "position out of range";
            } else if (!tr.read_set.contains(r->position) && tr.read_set.size() >= spec.reads) {
                rec.note = "read budget exhausted";
            } else {
                rec.granted = true;
                rec.value = c.symbols[r->position];
                tr.read_set.insert(r->position);
                view.reads.emplace_back(r->position, rec.value);
            }
            last_granted = rec.granted;
            tr.actions.push_back(std::move(rec));
        } else {
            auto& w = std::get<WriteRequest>(req);
            ActionRecord rec{ActionRecord::Kind::Write, w.position, w.delta, false, {}};
            if (w.position >= spec.N) {
                rec.note = "position out of range";
            } else if (w.delta.size() != spec.u ||
                       std::any_of(w.delta.begin(), w.delta.end(), [&](Fq x) { return !F.contains(x.v); })) {
                rec.note = "malformed symbol";
            } else if (spec.restricted && !tr.read_set.contains(w.position)) {
                rec.note = "restricted channel: write outside read set";
            } else if (!tr.write_set.contains(w.position) && tr.write_set.size() >= spec.writes) {
                rec.note = "write budget exhausted";
            } else {
                rec.granted = true;
                tr.write_set.insert(w.position);
                auto& e = tr.error.symbols[w.position];
                for (unsigned i = 0; i < spec.u; ++i) e[i] = F.add(e[i], w.delta[i]);
            }
            last_granted = rec.granted;
            tr.actions.push_back(std::move(rec));
        }
    }
    ReceivedWord y = c;
    for (unsigned j = 0; j < spec.N; ++j)
        for (unsigned i = 0; i < spec.u; ++i) y.symbols[j][i] = F.add(y.symbols[j][i], tr.error.symbols[j][i]);
    tr.received = y;
    return {std::move(y), std::move(tr)};
}

namespace details {

inline std::vector<unsigned> random_positions(unsigned N, unsigned count, Rng& rng) {
    std::vector<unsigned> all(N);
    for (unsigned i = 0; i < N; ++i) all[i] = i;
    for (unsigned i = 0; i < count && i < N; ++i) std::swap(all[i], all[i + rng.below(N - i)]);
    all.resize(std::min(count, N));
    return all;
}

inline FqVector random_symbol(const ChannelSpec& spec, Rng& rng, bool nonzero) {
    const PrimeField F(spec.q);
    FqVector s(spec.u);
    do {
        for (auto& x : s) x = F.uniform(rng);
    } while (nonzero && std::all_of(s.begin(), s.end(), [](Fq x) { return x.v == 0; }));
    return s;
}

}  // namespace details

/// Immediately done: y = c.
class NullAdversary final : public Adversary {
   public:
    std::string name() const override { return "null"; }
    Request next(const AdversaryContext&, Rng&) override { return DoneRequest{}; }
};

/**
 * Reads rho_r N random positions, then adds uniform nonzero symbols on
 * rho_w N random positions (drawn from the read set on a restricted channel).
 */
class RandomWriter : public Adversary {
   public:
    std::string name() const override { return "random-writer"; }

    void begin(const ChannelSpec& spec, Rng& rng) override {
        plan_.clear();
        const auto reads = details::random_positions(spec.N, spec.reads, rng);
        for (auto p : reads) plan_.push_back(ReadRequest{p});
        std::vector<unsigned> writes;
        if (spec.restricted) {
            auto order = details::random_positions(static_cast<unsigned>(reads.size()), spec.writes, rng);
            for (auto i : order) writes.push_back(reads[i]);
        } else {
            writes = details::random_positions(spec.N, spec.writes, rng);
        }
        for (auto p : writes) plan_.push_back(WriteRequest{p, details::random_symbol(spec, rng, true)});
        for (std::size_t i = 0; i < extra_writes_; ++i)
            plan_.push_back(WriteRequest{static_cast<unsigned>(rng.below(spec.N)), details::random_symbol(spec, rng, true)});
        cursor_ = 0;
    }

    Request next(const AdversaryContext&, Rng&) override {
        if (cursor_ >= plan_.size()) return DoneRequest{};
        return plan_[cursor_++];
    }

   protected:
    std::size_t extra_writes_ = 0;

   private:
    std::vector<Request> plan_;
    std::size_t cursor_ = 0;
};

/// Random writer that attempts one write beyond its budget, at a fresh position.
class OverBudgetWriter final : public RandomWriter {
   public:
    std::string name() const override { return "over-budget"; }

    void begin(const ChannelSpec& spec, Rng& rng) override {
        RandomWriter::begin(spec, rng);
        written_ = 0;
        spec_ = spec;
    }

    Request next(const AdversaryContext& ctx, Rng& rng) override {
        Request r = RandomWriter::next(ctx, rng);
        if (!std::holds_alternative<DoneRequest>(r) || extra_sent_) {
            if (std::holds_alternative<DoneRequest>(r)) extra_sent_ = false;
            return r;
        }
        extra_sent_ = true;
        for (unsigned p = 0; p < spec_.N; ++p)
            if (!ctx.write_set.contains(p) && (!spec_.restricted || ctx.read_set.contains(p)))
                return WriteRequest{p, details::random_symbol(spec_, rng, true)};
        return WriteRequest{0, details::random_symbol(spec_, rng, true)};
    }

   private:
    ChannelSpec spec_{};
    std::size_t written_ = 0;
    bool extra_sent_ = false;
};

/// Reads position 0, then writes the symbol it saw back onto position 0 (y_0 = 2 c_0).
class AdaptiveEcho final : public Adversary {
   public:
    std::string name() const override { return "adaptive-echo"; }
    void begin(const ChannelSpec&, Rng&) override { stage_ = 0; }
    Request next(const AdversaryContext& ctx, Rng&) override {
        switch (stage_++) {
            case 0: return ReadRequest{0};
            case 1:
                if (const FqVector* s = ctx.view.symbol_at(0)) return WriteRequest{0, *s};
                return DoneRequest{};
            default: return DoneRequest{};
        }
    }

   private:
    int stage_ = 0;
};

/**
 * Picks one of two (read set, write set) pairs with probability 1/2, reads its
 * read set and adds a uniformly random error on its write set. Requires
 * |S_r^i| = rho_r N, |S_w^i| = rho_w N and S_r^1 ∩ S_w^2 = ∅.
 */
class TwoPairStrategy final : public Adversary {
   public:
    struct Pair {
        std::vector<unsigned> read_set;
        std::vector<unsigned> write_set;
    };

    TwoPairStrategy(const ChannelSpec& spec, Pair first, Pair second) : pairs_{std::move(first), std::move(second)} {
        for (const auto& pr : pairs_) {
            details::require(distinct_in_range(pr.read_set, spec.N) && pr.read_set.size() == spec.reads,
                             ErrorCode::InvalidSets, "read set must hold rho_r N distinct positions");
            details::require(distinct_in_range(pr.write_set, spec.N) && pr.write_set.size() == spec.writes,
                             ErrorCode::InvalidSets, "write set must hold rho_w N distinct positions");
        }
        for (auto p : pairs_[0].read_set)
            details::require(std::find(pairs_[1].write_set.begin(), pairs_[1].write_set.end(), p) ==
                                 pairs_[1].write_set.end(),
                             ErrorCode::InvalidSets, "S_r^1 and S_w^2 must be disjoint");
    }

    /// S_r^1 = S_w^1 = the first positions, S_r^2 the next ones, S_w^2 the last ones.
    static TwoPairStrategy standard(const ChannelSpec& spec) {
        auto range = [](unsigned from, unsigned count) {
            std::vector<unsigned> out;
            for (unsigned i = 0; i < count; ++i) out.push_back(from + i);
            return out;
        };
        Pair first{range(0, spec.reads), range(0, spec.writes)};
        const unsigned second_read_start = std::min(spec.reads, spec.N - spec.reads);
        Pair second{range(second_read_start, spec.reads), range(spec.N - spec.writes, spec.writes)};
        return TwoPairStrategy(spec, std::move(first), std::move(second));
    }

    std::string name() const override { return "two-pair"; }

    void begin(const ChannelSpec& spec, Rng& rng) override {
        choice_ = rng.coin() ? 1 : 0;
        plan_.clear();
        for (auto p : pairs_[choice_].read_set) plan_.push_back(ReadRequest{p});
        for (auto p : pairs_[choice_].write_set) plan_.push_back(WriteRequest{p, details::random_symbol(spec, rng, false)});
        cursor_ = 0;
    }

    Request next(const AdversaryContext&, Rng&) override {
        if (cursor_ >= plan_.size()) return DoneRequest{};
        return plan_[cursor_++];
    }

    /// Index (0 or 1) of the pair used in the latest transmission.
    int last_choice() const noexcept { return choice_; }
    const Pair& pair(int i) const { return pairs_[i]; }

   private:
    static bool distinct_in_range(const std::vector<unsigned>& s, unsigned N) {
        std::set<unsigned> seen(s.begin(), s.end());
        return seen.size() == s.size() && (s.empty() || *seen.rbegin() < N);
    }

    Pair pairs_[2];
    int choice_ = 0;
    std::vector<Request> plan_;
    std::size_t cursor_ = 0;
};

/// Threshold wire corruption: reads t random wires and overwrites each with a uniformly random symbol.
class WireReplacement final : public Adversary {
   public:
    std::string name() const override { return "wire-replace"; }

    void begin(const ChannelSpec& spec, Rng& rng) override {
        const unsigned t = std::min(spec.reads, spec.writes);
        targets_ = details::random_positions(spec.N, t, rng);
        replacements_.clear();
        for (unsigned i = 0; i < t; ++i) replacements_.push_back(details::random_symbol(spec, rng, false));
        cursor_ = 0;
        q_ = spec.q;
    }

    Request next(const AdversaryContext& ctx, Rng&) override {
        const std::size_t t = targets_.size();
        if (cursor_ < t) return ReadRequest{targets_[cursor_++]};
        if (cursor_ < 2 * t) {
            const std::size_t i = cursor_++ - t;
            const FqVector* seen = ctx.view.symbol_at(targets_[i]);
            if (!seen) return DoneRequest{};
            const PrimeField F(q_);
            FqVector delta(seen->size());
            for (std::size_t j = 0; j < delta.size(); ++j) delta[j] = F.sub(replacements_[i][j], (*seen)[j]);
            return WriteRequest{targets_[i], std::move(delta)};
        }
        return DoneRequest{};
    }

    const std::vector<unsigned>& targets() const noexcept { return targets_; }
    const std::vector<FqVector>& replacements() const noexcept { return replacements_; }

   private:
    std::vector<unsigned> targets_;
    std::vector<FqVector> replacements_;
    std::size_t cursor_ = 0;
    std::uint32_t q_ = 2;
};

inline const std::vector<std::string>& adversary_names() {
    static const std::vector<std::string> names{"null",         "random-writer", "two-pair",
                                                "adaptive-echo", "over-budget",   "wire-replace"};
    return names;
}

inline std::unique_ptr<Adversary> make_adversary(const std::string& name, const ChannelSpec& spec) {
    if (name == "null") return std::make_unique<NullAdversary>();
    if (name == "random-writer") return std::make_unique<RandomWriter>();
    if (name == "two-pair") return std::make_unique<TwoPairStrategy>(TwoPairStrategy::standard(spec));
    if (name == "adaptive-echo") return std::make_unique<AdaptiveEcho>();
    if (name == "over-budget") return std::make_unique<OverBudgetWriter>();
    if (name == "wire-replace") return std::make_unique<WireReplacement>();
    details::fail(ErrorCode::ParseError, "unknown adversary '" + name + "'");
}

// ---------------------------------------------------------------------------
// Secrecy auditors

/**
 * The coefficient layout seen by an eavesdropper at the FRS layer: n message
 * coefficients and `filler` uniform ones, filler placed after (or before) the
 * message. gamma is the evaluation base, normally a generator.
 */
struct FrsSecrecyLayout {
    std::uint32_t q;
    unsigned u;
    unsigned N;
    std::size_t message_len;
    std::size_t filler_len;
    std::uint32_t gamma;
    bool filler_first = false;

    std::size_t k() const noexcept { return message_len + filler_len; }
    std::size_t filler_offset() const noexcept { return filler_first ? 0 : message_len; }
    std::size_t message_offset() const noexcept { return filler_first ? filler_len : 0; }

    static FrsSecrecyLayout from(const AwtpParams& p) {
        const PrimeField F(p.q);
        return {p.q, p.u, p.N, p.n(), p.filler(), find_generator(F).v, false};
    }
};

struct RankAuditReport {
    bool perfect = false;         // no checked read set's view depends on the message
    bool uniform = false;         // every filler evaluation matrix has full row rank
    bool sampled = false;         // read sets were sampled instead of enumerated
    std::size_t sets_checked = 0;
    std::size_t singular_sets = 0;  // filler matrix V not of full row rank
    std::size_t leaking_sets = 0;   // message columns outside the column space of V
    std::vector<unsigned> first_singular;
    std::vector<unsigned> first_leaking;
};

namespace details {

inline std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t r, std::uint64_t cap) {
    if (r > n) return 0;
    r = std::min(r, n - r);
    long double acc = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        acc = acc * static_cast<long double>(n - r + i) / static_cast<long double>(i);
        if (acc > static_cast<long double>(cap)) return cap + 1;
    }
    return static_cast<std::uint64_t>(std::llround(acc));
}

/// Rows: evaluation points of the read symbols; columns: monomials X^first .. X^{first+count-1}.
inline Matrix view_matrix(const PrimeField& F, const FrsSecrecyLayout& L, const std::vector<unsigned>& read_set,
                          std::size_t first, std::size_t count) {
    Matrix M(read_set.size() * L.u, count);
    std::size_t row = 0;
    for (auto pos : read_set)
        for (unsigned s = 0; s < L.u; ++s, ++row) {
            const Fq alpha = F.pow(Fq{L.gamma}, std::uint64_t{pos} * L.u + s);
            for (std::size_t c = 0; c < count; ++c) M(row, c) = F.pow(alpha, first + c);
        }
    return M;
}

inline Matrix filler_view_matrix(const PrimeField& F, const FrsSecrecyLayout& L, const std::vector<unsigned>& read_set) {
    return view_matrix(F, L, read_set, L.filler_offset(), L.filler_len);
}

inline Matrix message_view_matrix(const PrimeField& F, const FrsSecrecyLayout& L, const std::vector<unsigned>& read_set) {
    return view_matrix(F, L, read_set, L.message_offset(), L.message_len);
}

}  // namespace details

/**
 * For each read set the view is W s + V a, with a uniform filler. It is
 * uniform whenever V has full row rank (the square invertible case of the
 * construction), and in general its law is independent of s iff every column
 * of W lies in the column space of V, i.e. rank [V | W] = rank V. Both are
 * reported; `perfect` uses the exact condition.
 * Exhaustive over read sets below 10^5 of them, otherwise 10^4 sampled sets.
 */
inline RankAuditReport secrecy_audit_rank(const FrsSecrecyLayout& L, unsigned reads, std::uint64_t sample_seed = 0,
                                          std::uint64_t exhaustive_limit = 100'000, std::size_t samples = 10'000) {
    const PrimeField F(L.q);
    RankAuditReport rep;
    auto check = [&](const std::vector<unsigned>& read_set) {
        ++rep.sets_checked;
        const Matrix V = details::filler_view_matrix(F, L, read_set);
        const Matrix W = details::message_view_matrix(F, L, read_set);
        Matrix VW(V.rows(), V.cols() + W.cols());
        for (std::size_t i = 0; i < V.rows(); ++i) {
            for (std::size_t c = 0; c < V.cols(); ++c) VW(i, c) = V(i, c);
            for (std::size_t c = 0; c < W.cols(); ++c) VW(i, V.cols() + c) = W(i, c);
        }
        const std::size_t rv = rank(F, V);
        if (rv < V.rows() && rep.singular_sets++ == 0) rep.first_singular = read_set;
        if (rank(F, VW) > rv && rep.leaking_sets++ == 0) rep.first_leaking = read_set;
    };
    if (reads == 0) {
        rep.perfect = rep.uniform = true;
        return rep;
    }
    if (details::binomial_capped(L.N, reads, exhaustive_limit) <= exhaustive_limit) {
        EvasiveSystem::for_each_subset(L.N, reads, [&](const std::vector<std::size_t>& idx) {
            check(std::vector<unsigned>(idx.begin(), idx.end()));
        });
    } else {
        rep.sampled = true;
        Rng rng(sample_seed);
        for (std::size_t i = 0; i < samples; ++i) {
            auto s = details::random_positions(L.N, reads, rng);
            std::sort(s.begin(), s.end());
            check(s);
        }
    }
    rep.perfect = rep.leaking_sets == 0;
    rep.uniform = rep.singular_sets == 0;
    return rep;
}

inline RankAuditReport secrecy_audit_rank(const AwtpParams& p, std::uint64_t sample_seed = 0) {
    return secrecy_audit_rank(FrsSecrecyLayout::from(p), p.reads(), sample_seed);
}

/**
 * Exact statistical distance between the views of read set S_r for two fixed
 * message vectors, by enumerating every filler vector.
 */
inline Rational secrecy_audit_exhaustive(const FrsSecrecyLayout& L, std::span<const Fq> s0, std::span<const Fq> s1,
                                         const std::vector<unsigned>& read_set) {
    details::require(s0.size() == L.message_len && s1.size() == L.message_len, ErrorCode::WrongLength,
                     "message vectors must have length n");
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < L.filler_len; ++i) {
        total *= L.q;
        details::require(total <= 1'000'000, ErrorCode::TooLarge, "q^filler exceeds 10^6");
    }
    const PrimeField F(L.q);
    FqVector points;
    for (auto pos : read_set) {
        details::require(pos < L.N, ErrorCode::InvalidSets, "read position out of range");
        for (unsigned s = 0; s < L.u; ++s) points.push_back(F.pow(Fq{L.gamma}, std::uint64_t{pos} * L.u + s));
    }
    auto view_of = [&](std::span<const Fq> msg, const FqVector& filler) {
        poly::Poly f(L.k(), F.zero());
        std::copy(msg.begin(), msg.end(), f.begin() + static_cast<std::ptrdiff_t>(L.message_offset()));
        std::copy(filler.begin(), filler.end(), f.begin() + static_cast<std::ptrdiff_t>(L.filler_offset()));
        FqVector view(points.size());
        for (std::size_t i = 0; i < points.size(); ++i) view[i] = poly::eval(F, f, points[i]);
        return view;
    };
    std::map<FqVector, std::int64_t> diff;  // count under s0 minus count under s1
    FqVector filler(L.filler_len, F.zero());
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t rem = idx;
        for (auto& a : filler) {
            a = Fq{static_cast<std::uint32_t>(rem % L.q)};
            rem /= L.q;
        }
        ++diff[view_of(s0, filler)];
        --diff[view_of(s1, filler)];
    }
    std::int64_t l1 = 0;
    for (const auto& [view, c] : diff) l1 += c < 0 ? -c : c;
    return Rational(BigInt(l1), BigInt(2) * total);
}

inline Rational secrecy_audit_exhaustive(const AwtpParams& p, const EvasivePoint& s0, const EvasivePoint& s1,
                                         const std::vector<unsigned>& read_set) {
    return secrecy_audit_exhaustive(FrsSecrecyLayout::from(p), s0.coords, s1.coords, read_set);
}

// ---------------------------------------------------------------------------
// Reliability

struct ReliabilityReport {
    std::size_t trials = 0;
    std::size_t failures = 0;     // outcomes other than the sent message
    std::size_t ambiguous = 0;
    std::size_t no_candidate = 0;
    std::size_t wrong_message = 0;
    std::size_t refused_requests = 0;
    std::size_t max_list_size = 0;
    std::size_t max_error_weight = 0;
    double frequency = 0;
    double wilson_low = 0;
    double wilson_high = 0;
    Rational bound = 0;           // ell (d+1)/q^mu with ell the largest list size seen

    bool within_bound() const { return wilson_low <= static_cast<double>(bound); }
};

/// Wilson score interval at 95% confidence.
inline std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials) {
    if (trials == 0) return {0.0, 1.0};
    constexpr double z = 1.959963984540054;
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double denom = 1 + z * z / n;
    const double centre = (phat + z * z / (2 * n)) / denom;
    const double half = z * std::sqrt(phat * (1 - phat) / n + z * z / (4 * n * n)) / denom;
    return {successes == 0 ? 0.0 : std::max(0.0, centre - half), successes == trials ? 1.0 : std::min(1.0, centre + half)};
}

/// Per-trial hook: (trial index, transcript, outcome).
using TrialObserver = std::function<void(std::size_t, const Transcript&, const DecodeOutcome&)>;

/**
 * encode -> transmit -> decode with a uniformly random message per trial.
 * Trial i draws everything from Rng(seed).fork(i), so results depend on the
 * seed and trial index only.
 */
inline ReliabilityReport reliability_estimate(const AwtpCode& code, const ChannelSpec& spec, Adversary& adversary,
                                              std::size_t trials, std::uint64_t seed,
                                              const TrialObserver& observe = {}) {
    const Rng master(seed);
    ReliabilityReport rep;
    rep.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng trial = master.fork(t);
        Rng enc = trial.fork(0), chan = trial.fork(1), msg_rng = trial.fork(2);
        std::vector<ExtElem> msg;
        for (unsigned i = 0; i < code.amd().blocks(); ++i) msg.push_back(code.amd().field().uniform(msg_rng));
        const FrsCodeword c = awtp_encode(code, msg, enc);
        auto [y, tr] = transmit(c, spec, adversary, chan);
        const DecodeOutcome out = awtp_decode(code, y);
        rep.refused_requests += tr.refused();
        rep.max_list_size = std::max(rep.max_list_size, out.list_size);
        rep.max_error_weight = std::max(rep.max_error_weight, tr.error_support().size());
        if (!out.ok() || out.message != msg) {
            ++rep.failures;
            if (out.kind == DecodeOutcome::Kind::Ambiguous) ++rep.ambiguous;
            else if (out.kind == DecodeOutcome::Kind::NoCandidate) ++rep.no_candidate;
            else ++rep.wrong_message;
        }
        if (observe) observe(t, tr, out);
    }
    rep.frequency = trials ? static_cast<double>(rep.failures) / static_cast<double>(trials) : 0.0;
    std::tie(rep.wilson_low, rep.wilson_high) = wilson_interval(rep.failures, trials);
    rep.bound = code.decoding_error_bound(rep.max_list_size);
    return rep;
}

}  // namespace awtp

#endif
