// Acceptance suite: one PASS/FAIL line per criterion, tolerances fixed below.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>

#include "awtp/awtp.hpp"

using namespace awtp;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
    bool pass = true;
    std::string detail;
};

int failed = 0;

void criterion(int id, const char* title, double time_limit_s, const std::function<Verdict()>& body) {
    const auto start = Clock::now();
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    const bool in_time = secs < time_limit_s;
    const bool pass = v.pass && in_time;
    failed += !pass;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs/%.0fs", secs, time_limit_s);
    std::cout << "criterion " << id << ": " << (pass ? "PASS" : "FAIL") << "  " << title << "  [" << v.detail
              << (in_time ? "" : "; over time limit") << "; " << timing << "]" << std::endl;
}

AwtpParams reference() { return AwtpParams{37, 6, 2, 6, 1, 2, 4, 2, Rational(1, 6), Rational(1, 3), 1}; }

std::vector<ExtElem> random_message(const AwtpCode& code, Rng& rng) {
    std::vector<ExtElem> m;
    for (unsigned i = 0; i < code.amd().blocks(); ++i) m.push_back(code.amd().field().uniform(rng));
    return m;
}

FoldedWord with_errors(const FrsParams& p, FoldedWord c, std::size_t count, Rng& rng) {
    for (auto j : details::random_positions(p.N(), static_cast<unsigned>(count), rng)) {
        FqVector delta;
        do {
            delta = p.field().uniform_vector(rng, p.u());
        } while (std::all_of(delta.begin(), delta.end(), [](Fq x) { return x.v == 0; }));
        for (unsigned s = 0; s < p.u(); ++s) c.symbols[j][s] = p.field().add(c.symbols[j][s], delta[s]);
    }
    return c;
}

// q = 13, u = 2, N = 3, one readable symbol; filler 0 is the k = n negative control
FrsSecrecyLayout secrecy_layout(std::size_t filler) {
    const PrimeField F(13);
    return {13, 2, 3, 2, filler, find_generator(F).v, false};
}

std::string run_cli(const std::string& args) {
    const std::string cmd = std::string(AWTP_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {};
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int status = pclose(pipe);
    out += "\nexit=" + std::to_string(WIFEXITED(status) ? WEXITSTATUS(status) : -1);
    return out;
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t q) {
    std::uint64_t r = 1;
    for (a %= q; e; e >>= 1, a = a * a % q)
        if (e & 1) r = r * a % q;
    return r;
}

bool naive_member(const EvasiveSystem& sys, const FqVector& p) {
    const std::uint64_t q = sys.field().order();
    for (unsigned t = 0; t < sys.blocks(); ++t)
        for (unsigned i = 0; i < sys.v(); ++i) {
            std::uint64_t acc = 0;
            for (unsigned j = 0; j < sys.w(); ++j)
                acc = (acc + std::uint64_t{sys.matrix()(i, j).v} * powmod(p[t * sys.w() + j].v, sys.degrees()[j], q)) % q;
            if (acc != 0) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------

Verdict exact_secrecy() {
    const PrimeField F(13);
    const FrsSecrecyLayout L = secrecy_layout(2);
    Rng rng(101);
    Rational worst = 0;
    std::size_t audits = 0;
    for (int i = 0; i < 12; ++i) {
        const FqVector s0 = F.uniform_vector(rng, 2);
        FqVector s1 = F.uniform_vector(rng, 2);
        if (s0 == s1) s1[0] = F.add(s1[0], F.one());
        for (unsigned j = 0; j < L.N; ++j) {
            worst = std::max(worst, secrecy_audit_exhaustive(L, s0, s1, {j}));
            ++audits;
        }
    }
    const Rational control = secrecy_audit_exhaustive(secrecy_layout(0), FqVector{Fq{3}, Fq{4}}, FqVector{Fq{0}, Fq{0}}, {1});
    std::ostringstream d;
    d << audits << " audits, max SD " << rational_string(worst) << "; filler-removed control SD "
      << rational_string(control);
    return {worst == 0 && control > 0, d.str()};
}

Verdict rank_equivalence() {
    const RankAuditReport main = secrecy_audit_rank(secrecy_layout(2), 1);
    const RankAuditReport control = secrecy_audit_rank(secrecy_layout(0), 1);
    std::ostringstream d;
    d << "instance perfect=" << main.perfect << " (" << main.sets_checked << " sets, exhaustive=" << !main.sampled
      << "); control perfect=" << control.perfect << " leaking " << control.leaking_sets << "/" << control.sets_checked;
    return {main.perfect && !main.sampled && main.sets_checked == 3 && !control.perfect && control.leaking_sets == 3,
            d.str()};
}

std::pair<std::size_t, std::size_t> oracle_run(const FrsParams& p, std::size_t words, std::uint64_t seed) {
    const PrimeField& F = p.field();
    const auto radius = static_cast<std::size_t>(frs_agreement_threshold(p).max_errors);
    Rng rng(seed);
    std::size_t mismatches = 0;
    for (std::size_t it = 0; it < words; ++it) {
        FoldedWord y;
        if (it % 2 == 0) {
            y = with_errors(p, frs_encode(p, F.uniform_vector(rng, p.k())), rng.below(radius + 1), rng);
        } else {
            for (unsigned j = 0; j < p.N(); ++j) y.symbols.push_back(F.uniform_vector(rng, p.u()));
        }
        mismatches += frs_filter_list(p, frs_list_decode(p, y), y, radius) != brute_force_list(p, y, radius);
    }
    return {mismatches, radius};
}

Verdict list_decoder_oracle() {
    const PrimeField F(13);
    const FrsParams small_instance(F, 2, 3, 2, 2, find_generator(F));
    // the instance above has N - t* = 0; a second shape exercises a nonzero radius
    const FrsParams wider(F, 3, 4, 3, 2, find_generator(F));
    const auto [m1, r1] = oracle_run(small_instance, 240, 31);
    const auto [m2, r2] = oracle_run(wider, 240, 32);
    std::ostringstream d;
    d << "240 words radius " << r1 << ": " << m1 << " mismatches; 240 words (u=3,N=4,k=3) radius " << r2 << ": " << m2
      << " mismatches";
    return {m1 == 0 && m2 == 0 && r2 >= 1, d.str()};
}

Verdict containment() {
    const PrimeField F(37);
    const FrsParams p(F, 6, 6, 14, 2, find_generator(F));
    const auto thr = frs_agreement_threshold(p);
    Rng rng(41);
    std::size_t contained = 0, max_dim = 0;
    const std::size_t trials = 1000;
    for (std::size_t i = 0; i < trials; ++i) {
        const FqVector f = F.uniform_vector(rng, 14);
        const auto y = with_errors(p, frs_encode(p, f), rng.below(thr.max_errors + 1), rng);
        const AffineSpace S = frs_list_decode(p, y);
        contained += !S.empty() && S.contains(F, f);
        if (!S.empty()) max_dim = std::max(max_dim, S.dimension());
    }
    std::ostringstream d;
    d << contained << "/" << trials << " contained, N - t* = " << thr.max_errors << ", max dim " << max_dim;
    return {contained == trials && thr.max_errors == 2 && max_dim <= 1, d.str()};
}

Verdict reliability() {
    const AwtpParams p = reference();
    const AwtpCode code(p);
    const ChannelSpec spec = ChannelSpec::from(p, false);
    RandomWriter writer;
    TwoPairStrategy pairs = TwoPairStrategy::standard(spec);
    const std::size_t trials = 10'000;
    const ReliabilityReport a = reliability_estimate(code, spec, writer, trials, 501);
    const ReliabilityReport b = reliability_estimate(code, spec, pairs, trials, 502);
    auto ok = [](const ReliabilityReport& r) {
        return r.no_candidate == 0 && r.wrong_message == 0 && r.failures == r.ambiguous && r.within_bound();
    };
    std::ostringstream d;
    d << "random-writer " << a.failures << "/" << a.trials << " failures (max wt " << a.max_error_weight << ", l "
      << a.max_list_size << "), two-pair " << b.failures << "/" << b.trials << " (l " << b.max_list_size
      << "), bound " << rational_string(a.bound);
    return {ok(a) && ok(b) && a.max_error_weight == 2, d.str()};
}

Verdict amd_forgery() {
    // exhaustive over r at q = 13, d = 1
    const ExtField E1(PrimeField(13), 1);
    const AmdParams p1(E1, 1);
    Rng rng(61);
    std::uint64_t worst = 0;
    for (int i = 0; i < 100; ++i) {
        const std::vector<ExtElem> x{E1.uniform(rng)};
        const ExtElem dx = E1.uniform(rng), dr = E1.uniform(rng);
        ExtElem dt = E1.uniform(rng);
        if (dx == E1.zero() && dr == E1.zero() && dt == E1.zero()) dt = E1.one();
        std::uint64_t accepted = 0;
        for (std::uint32_t r = 0; r < 13; ++r) {
            const ExtElem rr = E1.from_vector(FqVector{Fq{r}});
            const AmdCodeword c{x, rr, amd_tag(p1, x, rr)};
            const AmdCodeword forged{{E1.add(x[0], dx)}, E1.add(c.r, dr), E1.add(c.t, dt)};
            accepted += amd_verify(p1, forged).has_value();
        }
        worst = std::max(worst, accepted);
    }
    // Monte Carlo at q = 13, mu = 2, d = 2
    const ExtField E2(PrimeField(13), 2);
    const AmdParams p2(E2, 2);
    const std::size_t trials = 100'000;
    std::size_t forged = 0;
    for (std::size_t i = 0; i < trials; ++i) {
        const std::vector<ExtElem> x{E2.uniform(rng), E2.uniform(rng)};
        const AmdCodeword c = amd_encode(p2, x, rng);
        std::vector<ExtElem> dx{E2.uniform(rng), E2.uniform(rng)};
        const ExtElem dr = E2.uniform(rng);
        ExtElem dt = E2.uniform(rng);
        if (dx[0] == E2.zero() && dx[1] == E2.zero() && dr == E2.zero() && dt == E2.zero()) dt = E2.one();
        const AmdCodeword y{{E2.add(c.x[0], dx[0]), E2.add(c.x[1], dx[1])}, E2.add(c.r, dr), E2.add(c.t, dt)};
        forged += amd_verify(p2, y).has_value();
    }
    const double bound = 3.0 / 169, freq = static_cast<double>(forged) / trials;
    const double limit = bound + 3 * std::sqrt(bound * (1 - bound) / trials);
    std::ostringstream d;
    d << "q=13 d=1 worst " << worst << "/13 (limit 2); q=13^2 d=2 " << forged << "/" << trials << " = " << freq
      << " (limit " << limit << ")";
    return {worst <= 2 && freq <= limit, d.str()};
}

Verdict bound_calculators() {
    const double a = capacity_bound(0.3, 0.2, 0, 2);
    const double b = capacity_bound(0.25, 0.25, 1.0 / 16, 256);
    const double c = smt_lower_bound(5, 2, 0, 2);
    std::ostringstream d;
    d.precision(17);
    d << "capacity(0.3,0.2,0)=" << a << ", capacity(0.25,0.25,1/16,256)=" << b << ", smt(5,2,0)=" << c;
    return {a == 0.5 && b == 0.546875 && c == 5.0, d.str()};
}

Verdict evasive_correctness() {
    const EvasiveSystem sys(PrimeField(13), 2, 2);
    const PrimeField& F = sys.field();
    Rng rng(81);
    std::size_t roundtrip = 0;
    for (int i = 0; i < 1000; ++i) {
        const FqVector v = F.uniform_vector(rng, sys.n1());
        const EvasivePoint p = se_encode(sys, v);
        roundtrip += naive_member(sys, p.coords) && se_decode(sys, p) == v;
    }
    std::size_t agree = 0, nonempty = 0;
    const int subspaces = 1000;
    for (int it = 0; it < subspaces; ++it) {
        const std::size_t dim = rng.below(sys.v() + 1);
        AffineSpace H = random_affine_subspace(F, sys.n(), dim, rng);
        if (it % 2 == 0 && dim >= 1) {
            const EvasivePoint s1 = se_encode(sys, F.uniform_vector(rng, sys.n1()));
            const EvasivePoint s2 = se_encode(sys, F.uniform_vector(rng, sys.n1()));
            FqVector dir(sys.n());
            for (std::size_t i = 0; i < sys.n(); ++i) dir[i] = F.sub(s2.coords[i], s1.coords[i]);
            // keep the direction independent from the remaining basis columns
            Matrix trial = H.basis;
            for (std::size_t i = 0; i < sys.n(); ++i) trial(i, 0) = dir[i];
            if (rank(F, trial) == dim) {
                H.offset = s1.coords;
                H.basis = trial;
            }
        }
        std::vector<EvasivePoint> scan;
        H.for_each_point(F, [&](FqVector x) {
            if (naive_member(sys, x)) scan.push_back(EvasivePoint{std::move(x)});
        });
        std::sort(scan.begin(), scan.end());
        const auto got = se_intersect(sys, H);
        agree += got == scan;
        nonempty += !scan.empty();
    }
    // every square minor of A is nonzero, from naive 1x1 and 2x2 determinants
    const Matrix& A = sys.matrix();
    bool regular = true;
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) regular &= A(i, j).v != 0;
    for (std::size_t c1 = 0; c1 < A.cols(); ++c1)
        for (std::size_t c2 = c1 + 1; c2 < A.cols(); ++c2) {
            const std::uint64_t det =
                (std::uint64_t{A(0, c1).v} * A(1, c2).v + 13 * 13 - std::uint64_t{A(0, c2).v} * A(1, c1).v % 13) % 13;
            regular &= det != 0;
        }
    std::ostringstream d;
    d << "round trips " << roundtrip << "/1000, intersections " << agree << "/" << subspaces << " (" << nonempty
      << " nonempty), all minors nonzero " << regular;
    return {roundtrip == 1000 && agree == static_cast<std::size_t>(subspaces) && regular && sys.strongly_regular(),
            d.str()};
}

Verdict smt_wrapper() {
    const std::vector<AwtpParams> instances{
        AwtpParams{37, 6, 2, 6, 1, 2, 4, 2, Rational(1, 6), Rational(1, 6), 0},
        AwtpParams{37, 6, 2, 6, 1, 2, 4, 2, Rational(1, 3), Rational(1, 3), 0},
        AwtpParams{41, 4, 2, 10, 1, 2, 4, 2, Rational(1, 10), Rational(1, 10), 0},
        AwtpParams{101, 6, 2, 8, 2, 1, 4, 3, Rational(1, 8), Rational(1, 8), 0}};
    std::size_t rate_ok = 0, bound_ok = 0, secure = 0;
    for (const auto& p : instances) {
        const SmtProtocol s = smt_from_awtp(p);
        rate_ok += transmission_rate(s) * rate(p) == 1;
        if (secrecy_audit_rank(p).perfect && 2 * s.t < s.N) {
            ++secure;
            const Rational lower(s.N, s.N - 2 * s.t);
            bound_ok += transmission_rate(s) >= lower;
        }
    }
    const AwtpCode code(instances.front());
    Rng rng(91);
    std::size_t invariant = 0;
    const int perms = 100;
    for (int i = 0; i < perms; ++i) {
        std::vector<unsigned> perm(6);
        std::iota(perm.begin(), perm.end(), 0u);
        for (unsigned j = 5; j > 0; --j) std::swap(perm[j], perm[rng.below(j + 1)]);
        const auto m = random_message(code, rng);
        const std::uint64_t seed = rng.next();
        Rng r1(seed), r2(seed);
        FoldedWord plain = smt_send(code, m, r1), wires = smt_send(code, m, r2, perm);
        bool laid_out = true;
        for (unsigned j = 0; j < 6; ++j) laid_out &= wires.symbols[perm[j]] == plain.symbols[j];
        const unsigned comp = static_cast<unsigned>(rng.below(6));
        const FqVector junk = code.field().uniform_vector(rng, 6);
        plain.symbols[comp] = junk;
        wires.symbols[perm[comp]] = junk;
        const DecodeOutcome a = smt_receive(code, plain), b = smt_receive(code, wires, perm);
        invariant += laid_out && a.kind == b.kind && a.message == b.message && b.ok() && b.message == m;
    }
    std::ostringstream d;
    d << "rate identity " << rate_ok << "/" << instances.size() << ", permutations " << invariant << "/" << perms
      << ", rate >= N/(N-2t) on " << bound_ok << "/" << secure << " secure instances";
    return {rate_ok == instances.size() && invariant == static_cast<std::size_t>(perms) && secure > 0 &&
                bound_ok == secure,
            d.str()};
}

Verdict determinism() {
    const std::string params = std::string(AWTP_TEST_DATA) + "/reference_params.json";
    const std::vector<std::string> commands{
        "params check --params " + params,
        "simulate --params " + params + " --adversary random-writer --trials 200 --transcripts",
        "simulate --params " + params + " --adversary two-pair --trials 200",
        "audit-secrecy --params " + params,
        "bounds --grid 'rho_r=0:1/2:1/10;rho_w=0|1/5;eps=0|1/16;sigma=256'",
        "oracle --trials 100",
        "trace --params " + params + " --message '5 7'"};
    std::size_t same = 0;
    for (const auto& c : commands) {
        const std::string a = run_cli(c), b = run_cli(c);
        same += a == b && a.size() > 8;
    }
    std::ostringstream d;
    d << same << "/" << commands.size() << " commands byte-identical across two runs";
    return {same == commands.size(), d.str()};
}

}  // namespace

int main() {
    criterion(1, "exact secrecy at the FRS layer", 10, exact_secrecy);
    criterion(2, "rank audit matches exhaustive audit", 5, rank_equivalence);
    criterion(3, "list decoder equals brute force", 60, list_decoder_oracle);
    criterion(4, "affine space contains the sent polynomial", 120, containment);
    criterion(5, "end-to-end reliability", 600, reliability);
    criterion(6, "AMD forgery bound", 60, amd_forgery);
    criterion(7, "bound calculators", 1, bound_calculators);
    criterion(8, "subspace-evasive correctness", 120, evasive_correctness);
    criterion(9, "SMT wrapper", 60, smt_wrapper);
    criterion(10, "deterministic CLI reports", 60, determinism);
    std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << std::endl;
    return failed == 0 ? 0 : 1;
}
