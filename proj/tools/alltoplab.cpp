#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "alltoplab/alltoplab.hpp"

using namespace alltoplab;

namespace {

struct Common {
    std::string field_lit;
    std::string modulus_csv;
    unsigned threads = 1;
    bool as_json = false;
    bool allow_large = false;
};

void add_common(CLI::App* sub, Common& c, bool with_field = true) {
    if (with_field) {
        sub->add_option("--field", c.field_lit, "field as p^r (e.g. 5^2)")
            ->required();
        sub->add_option("--modulus", c.modulus_csv,
                        "modulus coefficients c0,c1,...,cr (low to high; "
                        "default: built-in table)");
    }
    sub->add_option("--threads", c.threads, "worker count, 0 = all cores");
    sub->add_flag("--json", c.as_json, "machine-readable output");
    sub->add_flag("--allow-large", c.allow_large, "lift the field-size cap");
}

uint64_t size_cap() {
    if (const char* env = std::getenv("ALLTOPLAB_MAX_Q")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0' || v < 2)
            throw Error("ALLTOPLAB_MAX_Q must be an integer >= 2");
        return v;
    }
    return 625;
}

std::vector<uint32_t> parse_modulus_csv(const std::string& csv) {
    std::vector<uint32_t> out;
    std::istringstream in(csv);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            size_t used = 0;
            unsigned long v = std::stoul(item, &used);
            if (used != item.size() || v > 0xffff)
                throw std::invalid_argument(item);
            out.push_back(uint32_t(v));
        } catch (const std::exception&) {
            throw ParseError("bad modulus coefficient \"" + item + "\"");
        }
    }
    if (out.empty()) throw ParseError("empty modulus list");
    return out;
}

Field make_field(const Common& c) {
    auto [p, r] = parse_field_literal(c.field_lit);
    uint64_t q = 1;
    for (uint32_t i = 0; i < r && q <= (uint64_t(1) << 32); ++i) q *= p;
    if (!c.allow_large && q > size_cap())
        throw Error("q = " + std::to_string(q) + " exceeds the cap " +
                    std::to_string(size_cap()) +
                    " (pass --allow-large or set ALLTOPLAB_MAX_Q)");
    if (c.modulus_csv.empty()) return FieldSpec::make(p, r);
    return FieldSpec::make(p, r, parse_modulus_csv(c.modulus_csv));
}

std::string field_name(const Field& F) {
    return "F_" + std::to_string(F->q());
}

std::string planar_witness_text(const PlanarFailure& w) {
    if (w.kind == PlanarFailure::Kind::DeltaCollision)
        return "delta in direction a=" + std::to_string(w.a) + " maps x=" +
               std::to_string(w.x) + " and y=" + std::to_string(w.y) +
               " to the same value";
    return "symmetric form vanishes at x=" + std::to_string(w.x) +
           ", y=" + std::to_string(w.y);
}

Json planar_witness_json(const PlanarFailure& w) {
    return Json{{"kind", w.kind == PlanarFailure::Kind::DeltaCollision
                             ? "delta-collision"
                             : "dform-zero"},
                {"a", w.a},
                {"x", w.x},
                {"y", w.y}};
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    Common common;
    std::string fn_lit, property;
};

int cmd_verify(const VerifyArgs& args) {
    Field F = make_field(args.common);
    PolyFn f = parse_poly(args.fn_lit, F);
    const unsigned threads = args.common.threads;

    bool pass = false;
    std::string witness;
    Json jwitness;
    if (args.property == "planar") {
        auto fail = planar_failure(f, threads);
        pass = !fail.has_value();
        if (fail) {
            witness = planar_witness_text(*fail);
            jwitness = planar_witness_json(*fail);
        }
    } else if (args.property == "alltop") {
        auto fail = alltop_failure(f, threads);
        pass = !fail.has_value();
        if (fail) {
            witness = "delta in direction a=" + std::to_string(fail->a) +
                      " is not planar (" + planar_witness_text(fail->inner) + ")";
            jwitness = Json{{"a", fail->a},
                            {"inner", planar_witness_json(fail->inner)}};
        }
    } else if (args.property == "additive") {
        pass = is_additive(f);
    } else if (args.property == "permutation") {
        try {
            pass = is_additive_permutation(f);
        } catch (const NotAdditive&) {
            pass = false;
            witness = "function is not additive";
        }
    } else { // do-shape, enforced by the option check
        pass = is_do_shape(f);
    }

    if (args.common.as_json) {
        Json out{{"function", render_poly(f)},
                 {"field", field_name(F)},
                 {"property", args.property},
                 {"verdict", pass ? "PASS" : "FAIL"}};
        if (!jwitness.is_null()) out["witness"] = jwitness;
        std::cout << out.dump(2) << "\n";
    } else if (pass) {
        std::cout << "PASS: " << render_poly(f) << " is " << args.property
                  << " on " << field_name(F) << "\n";
    } else {
        std::cout << "FAIL: " << render_poly(f) << " is not " << args.property
                  << " on " << field_name(F) << "\n";
        if (!witness.empty()) std::cout << "witness: " << witness << "\n";
    }
    return pass ? 0 : 1;
}

// -------------------------------------------------------------- gen-mubs

struct GenMubsArgs {
    Common common;
    std::string fn_lit, construction, out_path;
    uint64_t max_cross = 0; // 0: full for q <= 25, sampled 500000 above
    bool max_cross_set = false;
};

int cmd_gen_mubs(const GenMubsArgs& args) {
    Field F = make_field(args.common);
    PolyFn f = parse_poly(args.fn_lit, F);
    const unsigned threads = args.common.threads;

    std::optional<MUBCollection> built;
    try {
        built = args.construction == "planar" ? build_planar_mubs(f, threads)
                                              : build_alltop_mubs(f, threads);
    } catch (const NotPlanar& e) {
        std::cerr << "FAIL: " << e.what() << "\n";
        return 1;
    } catch (const NotAlltop& e) {
        std::cerr << "FAIL: " << e.what() << "\n";
        return 1;
    }
    MUBCollection& M = *built;

    uint64_t max_cross = args.max_cross;
    if (!args.max_cross_set && F->q() > 25) max_cross = 500000;
    auto rep = verify_mub_collection(M, max_cross, threads);
    if (!rep.pass) {
        std::cerr << "FAIL: verification rejected the collection: "
                  << rep.failure->reason << " (bases " << rep.failure->basis_u
                  << "/" << rep.failure->basis_v << ", vectors "
                  << rep.failure->u << "/" << rep.failure->v << ")\n";
        return 1;
    }
    save_json_file(args.out_path, mub_to_json(M));

    if (args.common.as_json) {
        std::cout << Json{{"out", args.out_path},
                          {"bases", M.bases.size()},
                          {"field", field_name(F)},
                          {"construction", args.construction},
                          {"function", render_poly(f)},
                          {"intra_pairs", rep.intra_checked},
                          {"cross_pairs", rep.cross_checked},
                          {"standard_pairs_reported", rep.standard_reported},
                          {"sampled", rep.sampled}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "wrote " << args.out_path << ": " << M.bases.size()
                  << " bases over " << field_name(F) << " ("
                  << args.construction << " construction, function "
                  << render_poly(f) << ")\n";
        std::cout << "verified exactly: " << rep.intra_checked
                  << " intra-basis pairs, " << rep.cross_checked
                  << " cross-basis pairs"
                  << (rep.sampled ? " (deterministic sample)" : "") << "; "
                  << rep.standard_reported
                  << " standard-basis pairs exact by construction\n";
    }
    return 0;
}

// --------------------------------------------------------------- analyze

struct AnalyzeArgs {
    Common common;
    std::string in_path, name, csv_path;
};

int cmd_analyze(const AnalyzeArgs& args) {
    Json j = load_json_file(args.in_path);
    SignalSet S = j.contains("bases") ? to_signal_set(mub_from_json(j))
                                      : signal_from_json(j);
    if (!args.name.empty()) S.name = args.name;
    auto rep = correlation_report(S, args.common.threads);

    const std::string row = correlation_csv_row(S.name, rep);
    if (args.common.as_json) {
        Json out{{"name", S.name},
                 {"N", rep.N},
                 {"K", rep.K},
                 {"exact", rep.exact},
                 {"i_rms_sq", detail::rational_str(rep.i_rms_sq)},
                 {"i_max_sq", detail::rational_str(rep.i_max_sq)},
                 {"i_max_witness", {rep.max_witness.first, rep.max_witness.second}},
                 {"welch_sq", detail::rational_str(rep.welch_rms_sq)},
                 {"meets_welch_rms", rep.meets_welch_rms},
                 {"meets_welch_max", rep.meets_welch_max},
                 {"levenstein_applicable", rep.levenstein_applicable},
                 {"meets_levenstein", rep.meets_levenstein}};
        if (rep.levenstein_applicable)
            out["levenstein_sq"] = detail::rational_str(rep.levenstein_sq);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << correlation_csv_header << "\n" << row << "\n";
    }
    if (!args.csv_path.empty()) {
        std::ofstream out(args.csv_path);
        if (!out) throw Error("cannot write " + args.csv_path);
        out << correlation_csv_header << "\n" << row << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------- search

struct SearchArgs {
    Common common;
    std::string property;
    uint32_t d_min = 2, d_max = 2;
    bool binomial = false;
};

int cmd_search(const SearchArgs& args) {
    Field F = make_field(args.common);
    const auto prop = args.property == "planar" ? SearchProperty::Planar
                                                : SearchProperty::Alltop;
    if (!args.binomial) {
        auto inv = search_monomials(F, prop, args.d_min, args.d_max,
                                    args.common.threads);
        if (args.common.as_json) {
            std::cout << Json{{"field", field_name(F)},
                              {"property", args.property},
                              {"d_min", args.d_min},
                              {"d_max", args.d_max},
                              {"inventory", inv}}
                             .dump(2)
                      << "\n";
        } else {
            for (uint32_t d : inv) std::cout << "x^" << d << "\n";
            std::cerr << inv.size() << " of " << args.d_max - args.d_min + 1
                      << " monomials are " << args.property << " on "
                      << field_name(F) << "\n";
        }
        return 0;
    }

    const uint64_t cost = binomial_candidate_count(F, args.d_min, args.d_max);
    std::cerr << "binomial search: " << cost << " candidates c1*x^e1 + c2*x^e2 ("
              << args.d_min << " <= e1 < e2 <= " << args.d_max << ", c1, c2 in F_"
              << F->q() << "*)\n";
    auto hits = search_binomials(F, prop, args.d_min, args.d_max,
                                 args.common.threads);
    Json jhits = Json::array();
    for (const auto& h : hits) {
        PolyFn f = PolyFn::monomial(F, h.c1, h.e1) + PolyFn::monomial(F, h.c2, h.e2);
        if (args.common.as_json)
            jhits.push_back(render_poly(f));
        else
            std::cout << render_poly(f) << "\n";
    }
    if (args.common.as_json) {
        std::cout << Json{{"field", field_name(F)},
                          {"property", args.property},
                          {"candidates", cost},
                          {"inventory", std::move(jhits)}}
                         .dump(2)
                  << "\n";
    } else {
        std::cerr << hits.size() << " of " << cost << " binomials are "
                  << args.property << " on " << field_name(F) << "\n";
    }
    return 0;
}

// -------------------------------------------------------------- families

struct FamiliesArgs {
    Common common;
    uint32_t p = 0, r = 0;
};

int families_certificate(const std::string& label, const PolyFn& f,
                         bool planar_family, bool note, unsigned threads,
                         bool as_json) {
    const Field& F = f.field();
    const uint32_t q = F->q();
    // The family constructors guarantee these; re-check so the output is a
    // certificate rather than a promise.
    if (planar_family) {
        if (!is_planar(f, threads)) throw Error("internal: family not planar");
    } else if (!is_alltop(f, threads)) {
        throw Error("internal: family not alltop");
    }
    bool note_ok = true;
    if (note)
        for (ElemIndex a = 1; a < q && note_ok; ++a)
            note_ok = verify_note_identity(F, a);
    if (as_json) {
        Json out{{"family", label},
                 {"function", render_poly(f)},
                 {"field", field_name(F)},
                 {"modulus", F->modulus()},
                 {"property", planar_family ? "planar" : "alltop"},
                 {"directions_certified", q - 1}};
        if (note) out["note_identity_all_a"] = note_ok;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "PASS: " << render_poly(f) << " on " << field_name(F)
                  << " is " << (planar_family ? "planar" : "alltop")
                  << " (certified in all " << q - 1 << " directions)\n";
        if (note)
            std::cout << "note identity holds for all " << q - 1
                      << " nonzero a\n";
    }
    if (note && !note_ok) return 1; // unreachable for valid parameters
    return 0;
}

// ------------------------------------------------------------------ main

template <typename Fn>
void timed(int& rc, Fn&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    rc = fn();
    auto dt = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    std::cerr.precision(1);
    std::cerr << std::fixed << "elapsed: " << dt << " ms\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact planar/Alltop verification, MUB construction, and "
                 "signal-set certification over F_{p^r}"};
    app.require_subcommand(1);
    int rc = 0;

    VerifyArgs vargs;
    auto* verify = app.add_subcommand(
        "verify", "test one function for one property, with witness on FAIL");
    add_common(verify, vargs.common);
    verify->add_option("--fn", vargs.fn_lit, "function literal, e.g. \"x^9\"")
        ->required();
    verify
        ->add_option("--property", vargs.property,
                     "planar | alltop | additive | permutation | do-shape")
        ->required()
        ->check(CLI::IsMember(
            {"planar", "alltop", "additive", "permutation", "do-shape"}));
    verify->callback([&] { timed(rc, [&] { return cmd_verify(vargs); }); });

    GenMubsArgs gargs;
    auto* gen = app.add_subcommand(
        "gen-mubs", "build the q+1 mutually unbiased bases and export JSON");
    add_common(gen, gargs.common);
    gen->add_option("--fn", gargs.fn_lit, "planar or Alltop function literal")
        ->required();
    gen->add_option("--construction", gargs.construction, "planar | alltop")
        ->required()
        ->check(CLI::IsMember({"planar", "alltop"}));
    gen->add_option("--out", gargs.out_path, "output JSON path")->required();
    gen->add_option("--max-cross", gargs.max_cross,
                    "cross-basis pair budget, 0 = exhaustive (default: "
                    "exhaustive up to q=25, 500000 sampled above)")
        ->each([&](const std::string&) { gargs.max_cross_set = true; });
    gen->callback([&] { timed(rc, [&] { return cmd_gen_mubs(gargs); }); });

    AnalyzeArgs aargs;
    auto* analyze = app.add_subcommand(
        "analyze", "correlation report of a MUB or signal-set export");
    add_common(analyze, aargs.common, /*with_field=*/false);
    analyze->add_option("--in", aargs.in_path, "MUB or signal-set JSON file")
        ->required();
    analyze->add_option("--name", aargs.name, "row name (default: from file)");
    analyze->add_option("--csv", aargs.csv_path, "also write the CSV to a file");
    analyze->callback([&] { timed(rc, [&] { return cmd_analyze(aargs); }); });

    SearchArgs sargs;
    auto* search = app.add_subcommand(
        "search", "exhaustive monomial (or binomial) property search");
    add_common(search, sargs.common);
    search->add_option("--property", sargs.property, "planar | alltop")
        ->required()
        ->check(CLI::IsMember({"planar", "alltop"}));
    search->add_option("--d-min", sargs.d_min, "lowest exponent (>= 2)")
        ->required();
    search->add_option("--d-max", sargs.d_max, "highest exponent (< q-1)")
        ->required();
    search->add_flag("--binomial", sargs.binomial,
                     "search c1*x^e1 + c2*x^e2 instead of monomials "
                     "(cost printed before running)");
    search->callback([&] { timed(rc, [&] { return cmd_search(sargs); }); });

    FamiliesArgs fargs;
    auto* families = app.add_subcommand(
        "families", "construct and certify the known function families");
    families->require_subcommand(1);
    auto* quad = families->add_subcommand("quadratic", "x^2, planar on any F_q");
    add_common(quad, fargs.common);
    quad->callback([&] {
        timed(rc, [&] {
            Field F = make_field(fargs.common);
            return families_certificate("quadratic", quadratic_planar(F), true,
                                        false, fargs.common.threads,
                                        fargs.common.as_json);
        });
    });
    auto* cubic = families->add_subcommand("cubic", "x^3, Alltop for p >= 5");
    add_common(cubic, fargs.common);
    cubic->callback([&] {
        timed(rc, [&] {
            Field F = make_field(fargs.common);
            return families_certificate("cubic", cubic_alltop(F), false, false,
                                        fargs.common.threads,
                                        fargs.common.as_json);
        });
    });
    auto* na = families->add_subcommand(
        "new-alltop", "x^(p^r + 2) on F_{p^(2r)}, needs 3 not dividing p^r + 1");
    add_common(na, fargs.common, /*with_field=*/false);
    na->add_option("--p", fargs.p, "odd prime >= 5")->required();
    na->add_option("--r", fargs.r, "half-degree: the field is F_{p^(2r)}")
        ->required();
    na->callback([&] {
        timed(rc, [&] {
            uint64_t q = 1;
            for (uint32_t i = 0; i < 2 * fargs.r && q <= (uint64_t(1) << 32); ++i)
                q *= fargs.p;
            if (!fargs.common.allow_large && q > size_cap())
                throw Error("q = " + std::to_string(q) + " exceeds the cap " +
                            std::to_string(size_cap()) +
                            " (pass --allow-large or set ALLTOPLAB_MAX_Q)");
            PolyFn A = new_alltop(fargs.p, fargs.r);
            return families_certificate("new-alltop", A, false, true,
                                        fargs.common.threads,
                                        fargs.common.as_json);
        });
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
