// awtp: command-line front end for the wiretap code library.
//
// Reports are JSON lines: a header record (schema version, command, parameters,
// seed) followed by result records. Exit codes: 0 success, 2 configuration
// error, 3 infeasible parameters, 4 audit failure, 5 oracle mismatch.

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "awtp/awtp.hpp"

using namespace awtp;

namespace {

enum Exit : int { kOk = 0, kConfig = 2, kInfeasible = 3, kAuditFailure = 4, kOracleMismatch = 5 };

struct Options {
    std::string params_path;
    std::optional<std::uint64_t> seed;
    std::size_t trials = 1000;
    std::string out;
    std::string in;
    std::string grid;
    std::string adversary = "random-writer";
    bool restricted = false;
    bool transcripts = false;
    bool random_select = false;
    std::size_t pairs = 10;
    // oracle
    std::uint32_t q = 13;
    unsigned u = 2, N = 3, v = 2, k = 2;
    // trace
    std::string message;
};

class Output {
   public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) details::fail(ErrorCode::ParseError, "cannot write '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
    void record(const Json& j) { stream() << j.dump() << '\n'; }

   private:
    std::ofstream file_;
};

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

Json rational_json(const Rational& r) { return rational_string(r); }

Json header(const std::string& command, const std::optional<AwtpParams>& p, std::uint64_t seed) {
    Json h;
    h["schema_version"] = kSchemaVersion;
    h["record"] = "header";
    h["command"] = command;
    h["params"] = p ? params_to_json(*p) : Json(nullptr);
    h["seed"] = seed;
    return h;
}

AwtpParams load(const Options& o) {
    if (o.params_path.empty()) details::fail(ErrorCode::ParseError, "--params is required");
    AwtpParams p = load_params(o.params_path);
    if (o.seed) p.seed = *o.seed;
    return p;
}

Json feasibility_json(const FeasibilityReport& rep) {
    Json j;
    j["record"] = "feasibility";
    j["feasible"] = rep.feasible();
    j["structural_ok"] = rep.structural_ok();
    j["structural_failures"] = rep.structural_failures;
    j["operative_ok"] = rep.operative_ok;
    j["t_star"] = rep.t_star;
    j["max_errors"] = rep.max_errors;
    j["asymptotic_bound"] = rep.asymptotic_bound ? rational_json(*rep.asymptotic_bound) : Json(nullptr);
    j["asymptotic_ok"] = rep.asymptotic_ok;
    return j;
}

Json reliability_json(const ReliabilityReport& r) {
    Json j;
    j["record"] = "reliability";
    j["trials"] = r.trials;
    j["failures"] = r.failures;
    j["ambiguous"] = r.ambiguous;
    j["no_candidate"] = r.no_candidate;
    j["wrong_message"] = r.wrong_message;
    j["refused_requests"] = r.refused_requests;
    j["max_list_size"] = r.max_list_size;
    j["max_error_weight"] = r.max_error_weight;
    j["frequency"] = r.frequency;
    j["wilson_low"] = r.wilson_low;
    j["wilson_high"] = r.wilson_high;
    j["delta_bound"] = rational_json(r.bound);
    j["within_bound"] = r.within_bound();
    return j;
}

std::vector<ExtElem> to_blocks(const AwtpCode& code, const FqVector& symbols) {
    return blocks_from_symbols(code.amd(), symbols);
}

// ---------------------------------------------------------------------------

int cmd_params_check(const Options& o) {
    const AwtpParams p = load(o);
    Output out(o.out);
    out.record(header("params check", p, p.seed));
    const FeasibilityReport rep = check_params(p);
    Json j = feasibility_json(rep);
    j["n"] = p.n();
    j["n1"] = p.n1();
    j["k"] = p.k();
    j["reads"] = p.reads();
    j["writes"] = p.writes();
    j["rate"] = rational_json(rate(p));
    out.record(j);
    return rep.feasible() ? kOk : kInfeasible;
}

int cmd_encode(const Options& o) {
    const AwtpParams p = load(o);
    const AwtpCode code(p);
    std::ifstream in(o.in);
    if (!in) details::fail(ErrorCode::ParseError, "cannot open message file '" + o.in + "'");
    const auto messages = read_messages(in, code.field(), p.message_length());
    const Rng master(p.seed);
    std::vector<FoldedWord> words;
    for (std::size_t i = 0; i < messages.size(); ++i) {
        Rng rng = master.fork(i);
        words.push_back(awtp_encode(code, to_blocks(code, messages[i]), rng));
    }
    Output out(o.out);
    write_codewords(out.stream(), words);
    return kOk;
}

int cmd_decode(const Options& o) {
    const AwtpParams p = load(o);
    const AwtpCode code(p);
    std::ifstream in(o.in);
    if (!in) details::fail(ErrorCode::ParseError, "cannot open codeword file '" + o.in + "'");
    const auto words = read_codewords(in, code.field(), p.N, p.u);
    Output out(o.out);
    out.record(header("decode", p, p.seed));
    const Rng master(p.seed);
    for (std::size_t i = 0; i < words.size(); ++i) {
        DecodeOptions opts;
        opts.random_select = o.random_select;
        opts.select_seed = master.fork(i).next();
        const DecodeOutcome d = awtp_decode(code, words[i], opts);
        Json j;
        j["record"] = "decode";
        j["index"] = i;
        j["outcome"] = to_string(d.kind);
        j["message"] = d.ok() ? symbols_to_json(blocks_to_symbols(code.amd(), d.message)) : Json(nullptr);
        j["valid_candidates"] = d.valid;
        j["list_size"] = d.list_size;
        j["space_dimension"] = d.space_dimension;
        j["randomly_selected"] = d.randomly_selected;
        out.record(j);
    }
    return kOk;
}

int cmd_simulate(const Options& o) {
    AwtpParams p = load(o);
    const AwtpCode code(p);
    const ChannelSpec spec = ChannelSpec::from(p, o.restricted);
    auto adversary = make_adversary(o.adversary, spec);
    Output out(o.out);
    Json h = header("simulate", p, p.seed);
    h["adversary"] = o.adversary;
    h["restricted"] = o.restricted;
    h["trials"] = o.trials;
    out.record(h);
    TrialObserver observe;
    if (o.transcripts)
        observe = [&](std::size_t t, const Transcript& tr, const DecodeOutcome& d) {
            Json j;
            j["record"] = "trial";
            j["index"] = t;
            j["outcome"] = to_string(d.kind);
            j["transcript"] = transcript_to_json(tr);
            out.record(j);
        };
    const ReliabilityReport rep = reliability_estimate(code, spec, *adversary, o.trials, p.seed, observe);
    out.record(reliability_json(rep));
    return rep.within_bound() ? kOk : kAuditFailure;
}

int cmd_audit_secrecy(const Options& o) {
    const AwtpParams p = load(o);
    const AwtpCode code(p);
    Output out(o.out);
    out.record(header("audit-secrecy", p, p.seed));
    const RankAuditReport rank = secrecy_audit_rank(p, p.seed);
    Json r;
    r["record"] = "rank_audit";
    r["perfect"] = rank.perfect;
    r["uniform_views"] = rank.uniform;
    r["certification"] = rank.sampled ? "sampled" : "exhaustive";
    r["sets_checked"] = rank.sets_checked;
    r["singular_sets"] = rank.singular_sets;
    r["leaking_sets"] = rank.leaking_sets;
    r["first_leaking"] = rank.first_leaking;
    out.record(r);
    bool ok = rank.perfect;

    Json e;
    e["record"] = "exhaustive_audit";
    try {
        Rng rng(Rng::derive_seed(p.seed, 1));
        const FrsSecrecyLayout L = FrsSecrecyLayout::from(p);
        Rational worst = 0;
        std::size_t sets = 0;
        const unsigned reads = p.reads();
        std::vector<std::vector<unsigned>> read_sets;
        EvasiveSystem::for_each_subset(p.N, reads, [&](const std::vector<std::size_t>& idx) {
            if (read_sets.size() < 64) read_sets.emplace_back(idx.begin(), idx.end());
        });
        for (std::size_t i = 0; i < o.pairs; ++i) {
            const EvasivePoint s0 = se_encode(code.evasive(), code.field().uniform_vector(rng, p.n1()));
            const EvasivePoint s1 = se_encode(code.evasive(), code.field().uniform_vector(rng, p.n1()));
            for (const auto& S : read_sets) {
                worst = std::max(worst, secrecy_audit_exhaustive(L, s0.coords, s1.coords, S));
                ++sets;
            }
        }
        e["ran"] = true;
        e["pairs"] = o.pairs;
        e["read_sets"] = read_sets.size();
        e["max_statistical_distance"] = rational_json(worst);
        ok = ok && worst == 0;
    } catch (const Error& err) {
        if (err.code() != ErrorCode::TooLarge) throw;
        e["ran"] = false;
        e["reason"] = err.what();
    }
    out.record(e);
    return ok ? kOk : kAuditFailure;
}

// grid: key=a:b:step or key=x|y|z, entries separated by ';'
std::map<std::string, std::vector<Rational>> parse_grid(const std::string& spec) {
    std::map<std::string, std::vector<Rational>> g{{"rho_r", {Rational(3, 10)}},
                                                    {"rho_w", {Rational(1, 5)}},
                                                    {"eps", {Rational(0)}},
                                                    {"sigma", {Rational(256)}}};
    auto number = [](const std::string& s, const std::string& key) {
        const Json j = s.find('/') != std::string::npos ? Json(s) : Json::parse(s, nullptr, false);
        if (j.is_discarded()) details::fail(ErrorCode::ParseError, key + ": bad number '" + s + "'");
        return details::parse_rational(j, key);
    };
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) details::fail(ErrorCode::ParseError, "grid entry '" + item + "' lacks '='");
        const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        if (!g.contains(key)) details::fail(ErrorCode::ParseError, "unknown grid key '" + key + "'");
        std::vector<Rational> values;
        if (std::count(val.begin(), val.end(), ':') == 2) {
            const auto c1 = val.find(':'), c2 = val.rfind(':');
            const Rational a = number(val.substr(0, c1), key), b = number(val.substr(c1 + 1, c2 - c1 - 1), key),
                           step = number(val.substr(c2 + 1), key);
            if (step <= 0) details::fail(ErrorCode::ParseError, key + ": step must be positive");
            for (Rational x = a; x <= b && values.size() <= 10000; x += step) values.push_back(x);
        } else {
            std::stringstream vs(val);
            std::string tok;
            while (std::getline(vs, tok, '|')) values.push_back(number(tok, key));
        }
        if (values.empty()) details::fail(ErrorCode::ParseError, key + ": empty value list");
        g[key] = std::move(values);
    }
    return g;
}

int cmd_bounds(const Options& o) {
    const auto g = parse_grid(o.grid);
    Output out(o.out);
    out.stream() << "rho_r,rho_w,eps,sigma,capacity,smt_lower_bound\n";
    for (const auto& rr : g.at("rho_r"))
        for (const auto& rw : g.at("rho_w"))
            for (const auto& eps : g.at("eps"))
                for (const auto& sigma : g.at("sigma")) {
                    const double drr = static_cast<double>(rr), drw = static_cast<double>(rw),
                                 deps = static_cast<double>(eps), dsig = static_cast<double>(sigma);
                    const double cap = capacity_bound(drr, drw, deps, dsig);
                    const auto smt = smt_rate_bound(std::max(drr, drw), deps, dsig);
                    out.stream() << rational_string(rr) << ',' << rational_string(rw) << ',' << rational_string(eps)
                                 << ',' << rational_string(sigma) << ',' << format_double(cap) << ','
                                 << (smt ? format_double(*smt) : std::string()) << '\n';
                }
    return kOk;
}

int cmd_smt(const Options& o) {
    const AwtpParams p = load(o);
    const SmtProtocol s = smt_from_awtp(p);
    const AwtpCode code(p);
    Output out(o.out);
    out.record(header("smt", p, p.seed));
    Json j;
    j["record"] = "protocol";
    j["wires"] = s.N;
    j["threshold"] = s.t;
    j["alphabet_size"] = s.alphabet_size.str();
    j["transmission_rate"] = rational_json(transmission_rate(s));
    j["lower_bound"] = 2 * s.t < s.N ? Json(smt_lower_bound(s.N, s.t, 0, 2)) : Json(nullptr);
    out.record(j);
    const ReliabilityReport rep = smt_simulate(s, code, o.trials, p.seed);
    Json r = reliability_json(rep);
    r["adversary"] = "wire-replace";
    out.record(r);
    return rep.within_bound() ? kOk : kAuditFailure;
}

int cmd_oracle(const Options& o) {
    const PrimeField F(o.q);
    const FrsParams fp(F, o.u, o.N, o.k, o.v, find_generator(F));
    const auto thr = frs_agreement_threshold(fp);
    if (thr.max_errors < 0) details::fail(ErrorCode::InfeasibleParameters, "no decodable radius");
    const auto radius = static_cast<std::size_t>(thr.max_errors);
    const std::uint64_t seed = o.seed.value_or(0);
    const Rng master(seed);
    const std::size_t trials = o.trials;
    std::size_t mismatches = 0, max_list = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = master.fork(t);
        FoldedWord y;
        if (t % 2 == 0) {
            y = frs_encode(fp, F.uniform_vector(rng, o.k));
            const std::size_t errs = rng.below(radius + 1);
            for (auto j : details::random_positions(o.N, static_cast<unsigned>(errs), rng))
                y.symbols[j] = F.uniform_vector(rng, o.u);
        } else {
            for (unsigned j = 0; j < o.N; ++j) y.symbols.push_back(F.uniform_vector(rng, o.u));
        }
        const auto fast = frs_filter_list(fp, frs_list_decode(fp, y), y, radius);
        const auto slow = brute_force_list(fp, y, radius);
        mismatches += fast != slow;
        max_list = std::max(max_list, slow.size());
    }
    const bool pass = mismatches == 0;
    Output out(o.out);
    Json h = header("oracle", std::nullopt, seed);
    h["frs"] = {{"q", o.q}, {"u", o.u}, {"N", o.N}, {"v", o.v}, {"k", o.k}};
    out.record(h);
    Json j;
    j["record"] = "oracle";
    j["trials"] = trials;
    j["radius"] = radius;
    j["mismatches"] = mismatches;
    j["max_list_size"] = max_list;
    j["verdict"] = pass ? "PASS" : "FAIL";
    out.record(j);
    std::cout << "list-decode matches brute force: " << (pass ? "PASS" : "FAIL") << '\n';
    return pass ? kOk : kOracleMismatch;
}

// Stage-by-stage trace of one encoding, for independent recomputation.
int cmd_trace(const Options& o) {
    const AwtpParams p = load(o);
    const AwtpCode code(p);
    FqVector msg;
    {
        std::istringstream in(o.message);
        auto msgs = read_messages(in, code.field(), p.message_length());
        if (msgs.size() != 1) details::fail(ErrorCode::ParseError, "--message must hold one message");
        msg = msgs.front();
    }
    Rng rng(p.seed);
    const EncodeTrace tr = awtp_encode_traced(code, to_blocks(code, msg), rng);
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["params"] = params_to_json(p);
    j["gamma"] = code.gamma().v;
    Json A = Json::array();
    for (std::size_t i = 0; i < code.evasive().matrix().rows(); ++i) A.push_back(symbols_to_json(code.evasive().matrix().row(i)));
    j["evasive_matrix"] = A;
    j["degrees"] = code.evasive().degrees();
    j["message"] = symbols_to_json(msg);
    j["amd_r"] = symbols_to_json(code.amd().field().to_vector(tr.amd.r));
    j["amd_t"] = symbols_to_json(code.amd().field().to_vector(tr.amd.t));
    j["padded"] = symbols_to_json(tr.padded);
    j["evasive_point"] = symbols_to_json(tr.s.coords);
    j["filler"] = symbols_to_json(tr.filler);
    j["coefficients"] = symbols_to_json(tr.coeffs);
    j["codeword"] = word_to_json(tr.codeword);
    Output out(o.out);
    out.stream() << j.dump(2) << '\n';
    return kOk;
}

int exit_code_for(ErrorCode c) {
    switch (c) {
        case ErrorCode::InfeasibleParameters:
        case ErrorCode::NotPrime:
        case ErrorCode::NotRestricted:
        case ErrorCode::ExponentNotCoprime: return kInfeasible;
        default: return kConfig;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adversarial wiretap codes: encode, decode, simulate, audit"};
    app.require_subcommand(1);
    Options o;

    auto add_params = [&](CLI::App* c) {
        c->add_option("--params", o.params_path, "parameter document (JSON)")->required();
        c->add_option("--seed", o.seed, "master seed (overrides the document)");
        c->add_option("--out", o.out, "output path (default stdout)");
    };

    auto* params = app.add_subcommand("params", "parameter documents");
    params->require_subcommand(1);
    auto* check = params->add_subcommand("check", "feasibility report");
    add_params(check);

    auto* encode = app.add_subcommand("encode", "message file -> codeword file");
    add_params(encode);
    encode->add_option("--in", o.in, "message file")->required();

    auto* decode = app.add_subcommand("decode", "codeword file -> decode report");
    add_params(decode);
    decode->add_option("--in", o.in, "codeword file")->required();
    decode->add_flag("--random-select", o.random_select, "output a random valid candidate instead of ambiguous");

    auto* simulate = app.add_subcommand("simulate", "reliability campaign");
    add_params(simulate);
    simulate->add_option("--trials", o.trials, "number of trials");
    simulate->add_option("--adversary", o.adversary, "strategy")
        ->check(CLI::IsMember(adversary_names()));
    simulate->add_flag("--restricted", o.restricted, "restricted channel (writes only on read positions)");
    simulate->add_flag("--transcripts", o.transcripts, "emit one record per trial with its transcript");

    auto* audit = app.add_subcommand("audit-secrecy", "rank and exhaustive secrecy audits");
    add_params(audit);
    audit->add_option("--pairs", o.pairs, "message pairs for the exhaustive audit");

    auto* bounds = app.add_subcommand("bounds", "capacity and SMT bound table (CSV)");
    bounds->add_option("--grid", o.grid, "e.g. 'rho_r=0:1/2:1/10;rho_w=1/5;eps=0|1/16;sigma=256'");
    bounds->add_option("--out", o.out, "output path (default stdout)");

    auto* smt = app.add_subcommand("smt", "wrap as an SMT protocol and simulate wire replacement");
    add_params(smt);
    smt->add_option("--trials", o.trials, "number of trials");

    auto* oracle = app.add_subcommand("oracle", "list decoder against brute-force enumeration");
    oracle->add_option("--q", o.q);
    oracle->add_option("--u", o.u);
    oracle->add_option("--N", o.N);
    oracle->add_option("--v", o.v);
    oracle->add_option("--k", o.k);
    o.trials = 1000;
    oracle->add_option("--trials", o.trials, "received words to test");
    oracle->add_option("--seed", o.seed);
    oracle->add_option("--out", o.out);

    auto* trace = app.add_subcommand("trace", "stage-by-stage trace of one encoding (JSON)");
    add_params(trace);
    trace->add_option("--message", o.message, "d mu space-separated field elements")->required();

    // --adversary and --restricted are accepted where they make sense only
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kConfig;
    }

    try {
        if (*check) return cmd_params_check(o);
        if (*encode) return cmd_encode(o);
        if (*decode) return cmd_decode(o);
        if (*simulate) return cmd_simulate(o);
        if (*audit) return cmd_audit_secrecy(o);
        if (*bounds) return cmd_bounds(o);
        if (*smt) return cmd_smt(o);
        if (*oracle) return cmd_oracle(o);
        if (*trace) return cmd_trace(o);
    } catch (const Error& e) {
        std::cerr << "awtp: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "awtp: " << e.what() << '\n';
        return kConfig;
    }
    return kConfig;
}
