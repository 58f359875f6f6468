#ifndef AWTP_PARAMS_IO_HPP
#define AWTP_PARAMS_IO_HPP

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "channel.hpp"

namespace awtp {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline std::string rational_string(const Rational& r) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(r);
    if (boost::multiprecision::denominator(r) != 1) os << '/' << boost::multiprecision::denominator(r);
    return os.str();
}

namespace details {

/// Base-10 only: cpp_int's string constructor would read "010" as octal.
inline BigInt decimal_integer(std::string s, const std::string& key) {
    const auto b = s.find_first_not_of(" \t"), e = s.find_last_not_of(" \t");
    s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
    const bool negative = !s.empty() && s[0] == '-';
    if (negative || (!s.empty() && s[0] == '+')) s.erase(0, 1);
    require(!s.empty() && s.find_first_not_of("0123456789") == std::string::npos, ErrorCode::ParseError,
            key + ": '" + s + "' is not a decimal integer");
    s.erase(0, std::min(s.find_first_not_of('0'), s.size() - 1));
    const BigInt v(s);
    return negative ? BigInt(-v) : v;
}

inline Rational parse_rational(const Json& j, const std::string& key) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number_float()) {
        // the shortest decimal form is taken at face value: 0.25 -> 1/4
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof buf, j.get<double>());
        const std::string text(buf, res.ptr);
        const auto epos = text.find_first_of("eE");
        const std::string mant = text.substr(0, epos);
        const long exp10 = epos == std::string::npos ? 0 : std::stol(text.substr(epos + 1));
        const bool negative = !mant.empty() && mant[0] == '-';
        std::string digits;
        long frac = 0;
        bool after_dot = false;
        for (char c : mant) {
            if (c == '.') after_dot = true;
            else if (c >= '0' && c <= '9') {
                digits += c;
                frac += after_dot;
            }
        }
        digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size()));
        BigInt num(digits.empty() ? "0" : digits.c_str());
        BigInt den = 1;
        for (long e = exp10 - frac; e > 0; --e) num *= 10;
        for (long e = frac - exp10; e > 0; --e) den *= 10;
        return Rational(negative ? BigInt(-num) : num, den);
    }
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        try {
            const auto slash = s.find('/');
            if (slash == std::string::npos) return Rational(decimal_integer(s, key));
            const BigInt den = decimal_integer(s.substr(slash + 1), key);
            require(den != 0, ErrorCode::ParseError, "zero denominator in " + key);
            return Rational(decimal_integer(s.substr(0, slash), key), den);
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            fail(ErrorCode::ParseError, key + ": cannot parse '" + s + "' as a fraction");
        }
    }
    fail(ErrorCode::ParseError, key + " must be a number or an \"a/b\" string");
}

template <class T>
T parse_unsigned(const Json& j, const std::string& key, std::uint64_t max) {
    require(j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0), ErrorCode::ParseError,
            key + " must be a non-negative integer");
    const auto v = j.get<std::uint64_t>();
    require(v <= max, ErrorCode::ParseError, key + " is out of range");
    return static_cast<T>(v);
}

}  // namespace details

inline const std::vector<std::string>& params_keys() {
    static const std::vector<std::string> keys{"q", "u", "v", "N", "mu", "d", "w", "b", "rho_r", "rho_w", "seed"};
    return keys;
}

inline Json params_to_json(const AwtpParams& p) {
    Json j;
    j["q"] = p.q;
    j["u"] = p.u;
    j["v"] = p.v;
    j["N"] = p.N;
    j["mu"] = p.mu;
    j["d"] = p.d;
    j["w"] = p.w;
    j["b"] = p.b;
    j["rho_r"] = rational_string(p.rho_r);
    j["rho_w"] = rational_string(p.rho_w);
    j["seed"] = p.seed;
    return j;
}

/// Every key of params_keys() is required; any other key is rejected.
inline AwtpParams params_from_json(const Json& j) {
    details::require(j.is_object(), ErrorCode::ParseError, "parameter document must be a JSON object");
    const auto& keys = params_keys();
    for (const auto& [k, _] : j.items())
        details::require(std::find(keys.begin(), keys.end(), k) != keys.end(), ErrorCode::ParseError,
                         "unknown key '" + k + "'");
    for (const auto& k : keys) details::require(j.contains(k), ErrorCode::ParseError, "missing key '" + k + "'");
    constexpr std::uint64_t u32 = UINT32_MAX;
    AwtpParams p;
    p.q = details::parse_unsigned<std::uint32_t>(j["q"], "q", u32);
    p.u = details::parse_unsigned<unsigned>(j["u"], "u", u32);
    p.v = details::parse_unsigned<unsigned>(j["v"], "v", u32);
    p.N = details::parse_unsigned<unsigned>(j["N"], "N", u32);
    p.mu = details::parse_unsigned<unsigned>(j["mu"], "mu", u32);
    p.d = details::parse_unsigned<unsigned>(j["d"], "d", u32);
    p.w = details::parse_unsigned<unsigned>(j["w"], "w", u32);
    p.b = details::parse_unsigned<unsigned>(j["b"], "b", u32);
    p.rho_r = details::parse_rational(j["rho_r"], "rho_r");
    p.rho_w = details::parse_rational(j["rho_w"], "rho_w");
    p.seed = details::parse_unsigned<std::uint64_t>(j["seed"], "seed", UINT64_MAX);
    return p;
}

inline AwtpParams params_from_string(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        details::fail(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
    }
    return params_from_json(j);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    details::require(static_cast<bool>(in), ErrorCode::ParseError, "cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline AwtpParams load_params(const std::string& path) { return params_from_string(read_file(path)); }

inline Json symbols_to_json(std::span<const Fq> s) {
    Json a = Json::array();
    for (auto x : s) a.push_back(x.v);
    return a;
}

inline Json word_to_json(const FoldedWord& w) {
    Json a = Json::array();
    for (const auto& s : w.symbols) a.push_back(symbols_to_json(s));
    return a;
}

inline FoldedWord word_from_json(const Json& j, const PrimeField& F, unsigned N, unsigned u) {
    details::require(j.is_array() && j.size() == N, ErrorCode::ParseError, "codeword must be an array of N symbols");
    FoldedWord w;
    for (const auto& s : j) {
        details::require(s.is_array() && s.size() == u, ErrorCode::ParseError, "each symbol must hold u integers");
        FqVector sym;
        for (const auto& x : s) {
            const auto v = details::parse_unsigned<std::uint32_t>(x, "symbol entry", UINT32_MAX);
            details::require(F.contains(v), ErrorCode::ParseError, "entry " + std::to_string(v) + " is not in F_q");
            sym.push_back(Fq{v});
        }
        w.symbols.push_back(std::move(sym));
    }
    return w;
}

inline Json transcript_to_json(const Transcript& tr) {
    Json j;
    j["adversary"] = tr.adversary;
    j["seed"] = tr.seed;
    Json actions = Json::array();
    for (const auto& a : tr.actions) {
        Json r;
        r["op"] = a.kind == ActionRecord::Kind::Read ? "read" : "write";
        r["pos"] = a.position;
        r["value"] = symbols_to_json(a.value);
        r["granted"] = a.granted;
        if (!a.granted) r["reason"] = a.note;
        actions.push_back(std::move(r));
    }
    j["actions"] = std::move(actions);
    j["read_set"] = std::vector<unsigned>(tr.read_set.begin(), tr.read_set.end());
    j["write_set"] = std::vector<unsigned>(tr.write_set.begin(), tr.write_set.end());
    j["error"] = word_to_json(tr.error);
    j["received"] = word_to_json(tr.received);
    return j;
}

// ---------------------------------------------------------------------------
// Plain-text message and codeword files

namespace details {

inline std::vector<std::vector<std::uint64_t>> read_integer_lines(std::istream& in, bool keep_blank) {
    std::vector<std::vector<std::uint64_t>> lines;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<std::uint64_t> row;
        std::string tok;
        while (ls >> tok) {
            require(tok.find_first_not_of("0123456789") == std::string::npos, ErrorCode::ParseError,
                    "'" + tok + "' is not a non-negative integer");
            try {
                row.push_back(std::stoull(tok));
            } catch (const std::exception&) {
                fail(ErrorCode::ParseError, "'" + tok + "' is out of range");
            }
        }
        if (!row.empty() || keep_blank) lines.push_back(std::move(row));
    }
    return lines;
}

inline FqVector to_field(const PrimeField& F, const std::vector<std::uint64_t>& row) {
    FqVector out;
    for (auto x : row) {
        require(x < F.order(), ErrorCode::ParseError, std::to_string(x) + " is not in F_q");
        out.push_back(Fq{static_cast<std::uint32_t>(x)});
    }
    return out;
}

}  // namespace details

/// One message per line, `len` space-separated field elements.
inline std::vector<FqVector> read_messages(std::istream& in, const PrimeField& F, std::size_t len) {
    std::vector<FqVector> out;
    for (const auto& row : details::read_integer_lines(in, false)) {
        details::require(row.size() == len, ErrorCode::ParseError,
                         "message line has " + std::to_string(row.size()) + " entries, expected " + std::to_string(len));
        out.push_back(details::to_field(F, row));
    }
    return out;
}

inline void write_messages(std::ostream& out, const std::vector<FqVector>& messages) {
    for (const auto& m : messages) {
        for (std::size_t i = 0; i < m.size(); ++i) out << (i ? " " : "") << m[i].v;
        out << '\n';
    }
}

/// Codewords as N lines of u integers, separated by blank lines.
inline std::vector<FoldedWord> read_codewords(std::istream& in, const PrimeField& F, unsigned N, unsigned u) {
    std::vector<FoldedWord> out;
    FoldedWord cur;
    auto flush = [&] {
        if (cur.symbols.empty()) return;
        details::require(cur.symbols.size() == N, ErrorCode::ParseError,
                         "codeword has " + std::to_string(cur.symbols.size()) + " lines, expected " + std::to_string(N));
        out.push_back(std::move(cur));
        cur = {};
    };
    for (const auto& row : details::read_integer_lines(in, true)) {
        if (row.empty()) {
            flush();
            continue;
        }
        details::require(row.size() == u, ErrorCode::ParseError, "codeword line must hold u integers");
        cur.symbols.push_back(details::to_field(F, row));
        if (cur.symbols.size() == N) flush();
    }
    flush();
    return out;
}

inline void write_codewords(std::ostream& out, const std::vector<FoldedWord>& words) {
    for (std::size_t w = 0; w < words.size(); ++w) {
        if (w) out << '\n';
        for (const auto& s : words[w].symbols) {
            for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s[i].v;
            out << '\n';
        }
    }
}

}  // namespace awtp

#endif
