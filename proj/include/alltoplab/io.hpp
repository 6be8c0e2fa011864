#pragma once

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>

#include <json.hpp>

#include "alltoplab/signal.hpp"

namespace alltoplab {

using Json = nlohmann::json;

namespace detail {

inline const Json& jfield(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end())
        throw ParseError(std::string("missing field \"") + key + "\"");
    return *it;
}

/// num/den in lowest terms; the den is never 0.
inline std::string rational_str(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

} // namespace detail

/// "p^r" or bare "p" (r = 1). Anything else is a ParseError.
inline std::pair<uint32_t, uint32_t> parse_field_literal(const std::string& s) {
    auto bad = [&] {
        return ParseError("field spec \"" + s + "\" is not of the form p^r");
    };
    size_t caret = s.find('^');
    std::string ps = s.substr(0, caret == std::string::npos ? s.size() : caret);
    std::string rs = caret == std::string::npos ? "1" : s.substr(caret + 1);
    if (ps.empty() || rs.empty()) throw bad();
    for (char c : ps + rs)
        if (!std::isdigit(static_cast<unsigned char>(c))) throw bad();
    unsigned long p = 0, r = 0;
    try {
        p = std::stoul(ps);
        r = std::stoul(rs);
    } catch (const std::exception&) {
        throw bad();
    }
    if (p == 0 || r == 0 || p > 0xffff || r > 16) throw bad();
    return {uint32_t(p), uint32_t(r)};
}

inline Json field_to_json(const Field& F) {
    return Json{{"p", F->p()}, {"r", F->r()}, {"modulus", F->modulus()}};
}

inline Field field_from_json(const Json& j) {
    try {
        uint32_t p = detail::jfield(j, "p").get<uint32_t>();
        uint32_t r = detail::jfield(j, "r").get<uint32_t>();
        auto mod = detail::jfield(j, "modulus").get<std::vector<uint32_t>>();
        return FieldSpec::make(p, r, mod);
    } catch (const Json::exception& e) {
        throw ParseError(std::string("bad field spec: ") + e.what());
    }
}

/// The standard basis is implicit in the export: readers reinsert it, so the
/// file carries exactly the q constructed bases.
inline Json mub_to_json(const MUBCollection& M) {
    Json j = field_to_json(M.field);
    j["construction"] =
        M.construction == Basis::Kind::Planar ? "planar" : "alltop";
    j["function"] = render_poly(M.fn);
    Json bases = Json::array();
    for (size_t i = 1; i < M.bases.size(); ++i) {
        const Basis& B = M.bases[i];
        Json vecs = Json::array();
        for (const auto& v : B.vectors)
            vecs.push_back(Json{{"b", v.b}, {"exponents", v.exps}});
        bases.push_back(Json{{"a", B.a}, {"vectors", std::move(vecs)}});
    }
    j["bases"] = std::move(bases);
    return j;
}

inline MUBCollection mub_from_json(const Json& j) {
    Field F = field_from_json(j);
    const uint32_t q = F->q();
    const uint32_t p = F->p();
    try {
        std::string tag = detail::jfield(j, "construction").get<std::string>();
        Basis::Kind kind;
        if (tag == "planar") kind = Basis::Kind::Planar;
        else if (tag == "alltop") kind = Basis::Kind::Alltop;
        else throw ParseError("unknown construction \"" + tag + "\"");
        PolyFn fn = parse_poly(detail::jfield(j, "function").get<std::string>(), F);
        const Json& bases = detail::jfield(j, "bases");
        if (!bases.is_array() || bases.size() != q)
            throw ParseError("expected exactly q = " + std::to_string(q) +
                             " constructed bases");
        MUBCollection M{F, kind, std::move(fn), {}};
        M.bases.push_back(Basis{Basis::Kind::Standard, 0, {}});
        for (const Json& jb : bases) {
            Basis B{kind, detail::jfield(jb, "a").get<ElemIndex>(), {}};
            if (B.a >= q) throw ParseError("basis label a out of range");
            const Json& vecs = detail::jfield(jb, "vectors");
            if (!vecs.is_array() || vecs.size() != q)
                throw ParseError("every basis needs exactly q vectors");
            for (const Json& jv : vecs) {
                ExponentVector v{p, B.a,
                                 detail::jfield(jv, "b").get<ElemIndex>(),
                                 detail::jfield(jv, "exponents")
                                     .get<std::vector<uint8_t>>()};
                if (v.b >= q || v.exps.size() != q)
                    throw ParseError("vector label or length out of range");
                for (uint8_t e : v.exps)
                    if (e >= p) throw ParseError("exponent entry not in [0, p)");
                B.vectors.push_back(std::move(v));
            }
            M.bases.push_back(std::move(B));
        }
        return M;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("bad MUB export: ") + e.what());
    }
}

inline Json signal_to_json(const SignalSet& S) {
    Json j{{"name", S.name}, {"K", S.K}};
    if (S.p != 0) j["p"] = S.p;
    Json vecs = Json::array();
    for (const auto& v : S.vectors) {
        switch (v.kind) {
        case SignalVector::Kind::StandardBasis:
            vecs.push_back(Json{{"unit", v.unit}});
            break;
        case SignalVector::Kind::Exponent:
            vecs.push_back(Json{{"exponents", v.exps}});
            break;
        case SignalVector::Kind::Dense: {
            Json entries = Json::array();
            for (auto c : v.entries)
                entries.push_back(Json::array({c.real(), c.imag()}));
            vecs.push_back(Json{{"entries", std::move(entries)}});
            break;
        }
        }
    }
    j["vectors"] = std::move(vecs);
    return j;
}

inline SignalSet signal_from_json(const Json& j) {
    SignalSet S;
    try {
        S.name = j.value("name", "signal-set");
        S.K = detail::jfield(j, "K").get<uint64_t>();
        S.p = j.value("p", 0u);
        if (S.K == 0) throw ParseError("K must be positive");
        const Json& vecs = detail::jfield(j, "vectors");
        if (!vecs.is_array() || vecs.empty())
            throw ParseError("a signal set needs at least one vector");
        for (const Json& jv : vecs) {
            SignalVector v;
            if (jv.contains("unit")) {
                v.kind = SignalVector::Kind::StandardBasis;
                v.unit = jv["unit"].get<ElemIndex>();
                if (v.unit >= S.K) throw ParseError("unit index out of range");
            } else if (jv.contains("exponents")) {
                v.kind = SignalVector::Kind::Exponent;
                v.exps = jv["exponents"].get<std::vector<uint8_t>>();
                if (S.p < 2)
                    throw ParseError("exponent vectors need a root order p");
                if (v.exps.size() != S.K)
                    throw ParseError("exponent vector length != K");
                for (uint8_t e : v.exps)
                    if (e >= S.p) throw ParseError("exponent entry not in [0, p)");
            } else if (jv.contains("entries")) {
                v.kind = SignalVector::Kind::Dense;
                double nrm = 0;
                for (const Json& c : jv["entries"]) {
                    if (!c.is_array() || c.size() != 2)
                        throw ParseError("dense entries are [re, im] pairs");
                    v.entries.emplace_back(c[0].get<double>(), c[1].get<double>());
                    nrm += std::norm(v.entries.back());
                }
                if (v.entries.size() != S.K)
                    throw ParseError("dense vector length != K");
                if (std::abs(nrm - 1.0) > 1e-9)
                    throw ParseError("dense vector is not unit norm");
            } else {
                throw ParseError(
                    "vector needs one of \"unit\", \"exponents\", \"entries\"");
            }
            S.vectors.push_back(std::move(v));
        }
    } catch (const Json::exception& e) {
        throw ParseError(std::string("bad signal set: ") + e.what());
    }
    return S;
}

inline constexpr const char* correlation_csv_header =
    "name,N,K,i_rms_sq_num,i_rms_sq_den,i_max_sq_num,i_max_sq_den,"
    "welch_sq,levenstein_sq,meets_welch_rms,meets_levenstein";

/// One CSV data row. The four num/den columns are exact integers (dyadic and
/// wide when the report came off the float path); welch/levenstein print as
/// num/den fractions, levenstein blank when N <= K^2.
inline std::string correlation_csv_row(const std::string& name,
                                       const CorrelationReport& rep) {
    std::string safe = name;
    for (char& c : safe)
        if (c == ',' || c == '"' || c == '\n' || c == '\r') c = '_';
    std::ostringstream os;
    os << safe << ',' << rep.N << ',' << rep.K << ','
       << numerator(rep.i_rms_sq) << ',' << denominator(rep.i_rms_sq) << ','
       << numerator(rep.i_max_sq) << ',' << denominator(rep.i_max_sq) << ','
       << detail::rational_str(rep.welch_rms_sq) << ','
       << (rep.levenstein_applicable ? detail::rational_str(rep.levenstein_sq)
                                     : std::string())
       << ',' << (rep.meets_welch_rms ? "true" : "false") << ','
       << (rep.meets_levenstein ? "true" : "false");
    return os.str();
}

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << j.dump(2) << '\n';
}

} // namespace alltoplab
