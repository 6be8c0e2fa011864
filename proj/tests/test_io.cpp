#include <catch2/catch_amalgamated.hpp>

#include <cstdio>

#include "alltoplab/families.hpp"
#include "alltoplab/io.hpp"
#include "testutil.hpp"

using namespace alltoplab;

TEST_CASE("field literals", "[io]") {
    REQUIRE(parse_field_literal("7^2") == std::pair<uint32_t, uint32_t>{7, 2});
    REQUIRE(parse_field_literal("5") == std::pair<uint32_t, uint32_t>{5, 1});
    REQUIRE(parse_field_literal("13^1") == std::pair<uint32_t, uint32_t>{13, 1});
    for (const char* bad : {"", "^", "5^", "^2", "5^2^3", "five", "7^-1",
                            "7.0", " 7", "99999999999^1", "7^99"})
        REQUIRE_THROWS_AS(parse_field_literal(bad), ParseError);
}

TEST_CASE("field specs round-trip through JSON", "[io]") {
    for (auto [p, r] : testutil::small_field_sizes()) {
        auto F = FieldSpec::make(p, r);
        auto G = field_from_json(field_to_json(F));
        REQUIRE(G->same_as(*F));
        REQUIRE(G->modulus() == F->modulus());
    }
    REQUIRE_THROWS_AS(field_from_json(Json{{"p", 5}, {"r", 2}}), ParseError);
    REQUIRE_THROWS_AS(
        field_from_json(Json{{"p", 5}, {"r", "two"}, {"modulus", {2, 4, 1}}}),
        ParseError);
    // Structurally valid JSON, reducible modulus: the field layer rejects it.
    REQUIRE_THROWS_AS(
        field_from_json(Json{{"p", 5}, {"r", 2}, {"modulus", {0, 0, 1}}}),
        Error);
}

TEST_CASE("MUB exports round-trip and stay verifiable", "[io]") {
    auto F = FieldSpec::make(5, 1);
    auto M = build_planar_mubs(quadratic_planar(F));
    Json j = mub_to_json(M);
    REQUIRE(j["construction"] == "planar");
    REQUIRE(j["function"] == "x^2");
    REQUIRE(j["bases"].size() == 5); // standard basis is implicit

    auto M2 = mub_from_json(j);
    REQUIRE(M2.bases.size() == 6);
    REQUIRE(M2.bases[0].kind == Basis::Kind::Standard);
    for (size_t i = 1; i < M.bases.size(); ++i)
        for (ElemIndex b = 0; b < 5; ++b)
            REQUIRE(M2.bases[i].vectors[b].exps == M.bases[i].vectors[b].exps);
    REQUIRE(verify_mub_collection(M2).pass);

    SECTION("alltop construction tag survives") {
        auto A = mub_from_json(mub_to_json(build_alltop_mubs(cubic_alltop(F))));
        REQUIRE(A.construction == Basis::Kind::Alltop);
        REQUIRE(render_poly(A.fn) == "x^3");
        REQUIRE(verify_mub_collection(A).pass);
    }

    SECTION("malformed exports are rejected") {
        Json bad = j;
        bad.erase("bases");
        REQUIRE_THROWS_AS(mub_from_json(bad), ParseError);
        bad = j;
        bad["bases"][2]["vectors"][1]["exponents"] = {0, 1, 2};
        REQUIRE_THROWS_AS(mub_from_json(bad), ParseError);
        bad = j;
        bad["bases"][0]["vectors"][0]["exponents"][3] = 9; // not in [0, 5)
        REQUIRE_THROWS_AS(mub_from_json(bad), ParseError);
        bad = j;
        bad["construction"] = "magic";
        REQUIRE_THROWS_AS(mub_from_json(bad), ParseError);
        bad = j;
        bad["bases"].erase(4);
        REQUIRE_THROWS_AS(mub_from_json(bad), ParseError);
    }

    SECTION("a bumped exponent still parses but fails verification") {
        Json tampered = j;
        int old = tampered["bases"][1]["vectors"][2]["exponents"][3];
        tampered["bases"][1]["vectors"][2]["exponents"][3] = (old + 1) % 5;
        auto Mt = mub_from_json(tampered);
        REQUIRE_FALSE(verify_mub_collection(Mt).pass);
    }
}

TEST_CASE("signal sets round-trip through JSON", "[io]") {
    auto S = to_signal_set(build_planar_mubs(quadratic_planar(FieldSpec::make(5, 1))));
    auto S2 = signal_from_json(signal_to_json(S));
    REQUIRE(S2.name == S.name);
    REQUIRE(S2.K == S.K);
    REQUIRE(S2.p == S.p);
    REQUIRE(S2.N() == S.N());
    auto r1 = correlation_report(S);
    auto r2 = correlation_report(S2);
    REQUIRE(r1.i_rms_sq == r2.i_rms_sq);
    REQUIRE(r1.i_max_sq == r2.i_max_sq);
    REQUIRE(r1.max_witness == r2.max_witness);

    SECTION("dense vectors survive with their entries") {
        SignalSet D;
        D.name = "dense";
        D.K = 2;
        const double s = 1.0 / std::sqrt(2.0);
        D.vectors.push_back({SignalVector::Kind::Dense, 0, {}, {{s, 0}, {0, -s}}});
        D.vectors.push_back({SignalVector::Kind::StandardBasis, 1, {}, {}});
        auto D2 = signal_from_json(signal_to_json(D));
        REQUIRE(D2.vectors[0].entries == D.vectors[0].entries);
        REQUIRE(D2.vectors[1].kind == SignalVector::Kind::StandardBasis);
    }

    SECTION("invalid signal files are rejected") {
        REQUIRE_THROWS_AS(signal_from_json(Json{{"K", 3}}), ParseError);
        REQUIRE_THROWS_AS(
            signal_from_json(Json{{"K", 0}, {"vectors", Json::array()}}),
            ParseError);
        Json j{{"K", 2},
               {"vectors", Json::array({Json{{"entries", {{2.0, 0.0}, {0.0, 0.0}}}}})}};
        REQUIRE_THROWS_MATCHES(signal_from_json(j), ParseError,
                               Catch::Matchers::MessageMatches(
                                   Catch::Matchers::ContainsSubstring("unit norm")));
        Json k{{"K", 2}, {"vectors", Json::array({Json{{"exponents", {0, 1}}}})}};
        REQUIRE_THROWS_AS(signal_from_json(k), ParseError); // no p given
        k["p"] = 5;
        REQUIRE_NOTHROW(signal_from_json(k));
        k["vectors"][0]["exponents"] = {0, 7};
        REQUIRE_THROWS_AS(signal_from_json(k), ParseError);
    }
}

TEST_CASE("correlation CSV rows", "[io]") {
    auto S = to_signal_set(build_planar_mubs(quadratic_planar(FieldSpec::make(5, 1))));
    auto rep = correlation_report(S);
    REQUIRE(std::string(correlation_csv_header) ==
            "name,N,K,i_rms_sq_num,i_rms_sq_den,i_max_sq_num,i_max_sq_den,"
            "welch_sq,levenstein_sq,meets_welch_rms,meets_levenstein");
    REQUIRE(correlation_csv_row("planar-q5", rep) ==
            "planar-q5,30,5,5,29,1,5,5/29,1/5,true,true");

    SECTION("names are sanitized and inapplicable bounds stay blank") {
        SignalSet B;
        B.K = 5;
        for (ElemIndex i = 0; i < 5; ++i)
            B.vectors.push_back({SignalVector::Kind::StandardBasis, i, {}, {}});
        auto r = correlation_report(B);
        REQUIRE(correlation_csv_row("a,b\"c", r) ==
                "a_b_c,5,5,0,1,0,1,0/1,,true,false");
    }
}

TEST_CASE("JSON files on disk", "[io]") {
    const std::string path = "io_roundtrip_tmp.json";
    auto M = build_alltop_mubs(cubic_alltop(FieldSpec::make(7, 1)));
    save_json_file(path, mub_to_json(M));
    auto M2 = mub_from_json(load_json_file(path));
    REQUIRE(M2.bases.size() == 8);
    REQUIRE(verify_mub_collection(M2).pass);
    std::remove(path.c_str());
    REQUIRE_THROWS_AS(load_json_file(path), ParseError);

    const std::string garbled = "io_garbled_tmp.json";
    {
        std::ofstream out(garbled);
        out << "{ not json";
    }
    REQUIRE_THROWS_AS(load_json_file(garbled), ParseError);
    std::remove(garbled.c_str());
}
