// Exercises the shared library strictly through its C interface plus the
// published JSON schema; no internal headers.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <cstring>
#include <string>

#include <chebmod/chebmod.h>

using ojson = nlohmann::ordered_json;

namespace {

struct ResultGuard {
    chebmod_result* r = nullptr;
    ~ResultGuard() { chebmod_result_free(r); }
};

ojson parse_payload(const chebmod_result* r) {
    REQUIRE(r != nullptr);
    const char* payload = chebmod_result_payload(r);
    REQUIRE(payload != nullptr);
    return ojson::parse(payload);
}

}  // namespace

TEST_CASE("version and status names") {
    CHECK(std::string(chebmod_version()) == "0.1.0");
    CHECK(std::string(chebmod_status_name(CHEBMOD_OK)) == "ok");
    CHECK(std::string(chebmod_status_name(CHEBMOD_ERR_DISCREPANCY)) != "");
    CHECK(std::string(chebmod_status_name(CHEBMOD_ERR_INVALID_ARGUMENT)) != "");
    chebmod_result_free(nullptr);  // must be a safe no-op
}

TEST_CASE("fixed-point command end to end") {
    ResultGuard g;
    chebmod_status st = chebmod_fixed(7, 22, 2, 1, 0, &g.r);
    CHECK(st == CHEBMOD_OK);
    CHECK(chebmod_result_status(g.r) == CHEBMOD_OK);
    ojson doc = parse_payload(g.r);

    CHECK(doc["manifest"]["tool"] == "chebmod");
    CHECK(doc["manifest"]["version"] == "0.1.0");
    CHECK(doc["manifest"]["command"] == "fixed");
    CHECK(doc["manifest"]["parameters"]["p"] == 7);
    CHECK(doc["manifest"]["parameters"]["n"] == 22);
    CHECK(doc["manifest"]["parameters"]["k"] == 2);

    const ojson& res = doc["result"];
    CHECK(res["gcds"]["G1"] == 3);
    CHECK(res["gcds"]["G2"] == 1);
    CHECK(res["gcds"]["G3"] == 1);
    CHECK(res["gcds"]["G4"] == 1);
    CHECK(res["delta"] == 1);
    CHECK(res["N1"] == 2);
    CHECK(res["d"] == 2);
    CHECK(res["degenerate_branch"] == "minus");
    CHECK(res["s"] == 1);
    REQUIRE(res["levels"].size() == 2);
    CHECK(res["levels"][0]["k"] == 1);
    CHECK(res["levels"][0]["count"] == 2);
    CHECK(res["levels"][1]["count"] == 14);
    CHECK(res["levels"][1]["method"] == "closed-form");
    REQUIRE(res.contains("enumeration"));
    CHECK(res["enumeration"]["count"] == 14);
    CHECK(res["enumeration"]["agrees"] == true);
    std::vector<int> want = {1, 3, 8, 10, 15, 17, 22, 24, 29, 31, 36, 38, 43, 45};
    CHECK(res["enumeration"]["fixed_points"].get<std::vector<int>>() == want);

    SUBCASE("payload is stable under an ordered re-serialization") {
        std::string payload = chebmod_result_payload(g.r);
        CHECK(ojson::parse(payload).dump() == payload);
    }
}

TEST_CASE("fixed-point command without enumeration omits the cross-check") {
    ResultGuard g;
    REQUIRE(chebmod_fixed(5, 24, 3, 0, 0, &g.r) == CHEBMOD_OK);
    ojson res = parse_payload(g.r)["result"];
    CHECK_FALSE(res.contains("enumeration"));
    CHECK(res["levels"][2]["count"] == 25);
    CHECK(res["s"] == 2);
}

TEST_CASE("infinite s is encoded as null") {
    ResultGuard g;
    REQUIRE(chebmod_fixed(5, 1, 2, 0, 0, &g.r) == CHEBMOD_OK);
    ojson res = parse_payload(g.r)["result"];
    CHECK(res["s"].is_null());
    CHECK(res["levels"][1]["count"] == 25);
}

TEST_CASE("spectrum command, plain and orbitwise") {
    ResultGuard g;
    REQUIRE(chebmod_spectrum(7, 3, 2, 0, 0, &g.r) == CHEBMOD_OK);
    ojson res = parse_payload(g.r)["result"];
    CHECK(res["method"] == "closed-form");
    REQUIRE(res["buckets"].size() == 4);
    CHECK(res["buckets"][0]["period"] == 1);
    CHECK(res["buckets"][0]["count"] == 3);
    CHECK(res["buckets"][3]["period"] == 6);
    CHECK(res["buckets"][3]["count"] == 12);
    CHECK(res["periodic_points"] == 35);
    CHECK_FALSE(res.contains("orbitwise"));

    ResultGuard g2;
    REQUIRE(chebmod_spectrum(7, 3, 2, 1, 0, &g2.r) == CHEBMOD_OK);
    ojson res2 = parse_payload(g2.r)["result"];
    REQUIRE(res2.contains("orbitwise"));
    CHECK(res2["orbitwise"]["spectrum_agrees"] == true);
    REQUIRE(res2["orbitwise"]["rows"].size() == 4);
    CHECK(res2["orbitwise"]["rows"][3]["e"] == 8);
    CHECK(res2["orbitwise"]["rows"][3]["t"] == 2);
    CHECK(res2["orbitwise"]["rows"][3]["kappa"] == 6);
    CHECK(res2["orbitwise"]["rows"][3]["case"] == "hensel-plus-ghosts");

    ResultGuard g3;  // orbitwise needs k = 2
    CHECK(chebmod_spectrum(7, 3, 3, 1, 0, &g3.r) == CHEBMOD_ERR_INVALID_ARGUMENT);
    CHECK(g3.r == nullptr);
}

TEST_CASE("ghost command") {
    ResultGuard g;
    REQUIRE(chebmod_ghost(7, 3, 1, &g.r) == CHEBMOD_OK);
    ojson res = parse_payload(g.r)["result"];
    CHECK(res["e"] == 1);
    CHECK(res["t"] == 1);
    CHECK(res["kappa"] == 3);
    CHECK(res["case"] == "hensel-plus-ghosts");
    CHECK(res["ghost_orbit_count"] == 2);

    ResultGuard g2;
    REQUIRE(chebmod_ghost(11, 21, 1, &g2.r) == CHEBMOD_OK);
    ojson res2 = parse_payload(g2.r)["result"];
    CHECK(res2["case"] == "all-retain");
    CHECK(res2["ghost_orbit_count"] == 0);

    ResultGuard g3;
    CHECK(chebmod_ghost(7, 3, 3, &g3.r) == CHEBMOD_ERR_INVALID_ARGUMENT);
    CHECK(std::string(chebmod_last_error()).find("periodic") != std::string::npos);
}

TEST_CASE("tower command") {
    ResultGuard g;
    REQUIRE(chebmod_tower(5, 2, 1, 4, &g.r) == CHEBMOD_OK);
    ojson res = parse_payload(g.r)["result"];
    CHECK(res["e"] == 1);
    CHECK(res["cord_tower"].get<std::vector<int>>() ==
          std::vector<int>({1, 2, 10, 50}));
    REQUIRE(res["layers"].size() == 4);
    CHECK(res["layers"][0]["tau"] == 1);
    CHECK(res["layers"][0]["count"] == 1);
    CHECK(res["layers"][3]["tau"] == 50);
    CHECK(res["layers"][3]["count"] == 100);
    REQUIRE(res["cycles_above_base_orbit"].size() == 4);
    CHECK(res["cycles_above_base_orbit"][3]["length"] == 50);
    CHECK(res["cycles_above_base_orbit"][3]["count"] == 2);

    ResultGuard g2;  // p = 3 has no tower theory
    CHECK(chebmod_tower(3, 2, 1, 3, &g2.r) == CHEBMOD_ERR_INVALID_ARGUMENT);
}

TEST_CASE("verify command") {
    ResultGuard g;
    chebmod_status st = chebmod_verify(5, 10, 2, 0, 1, &g.r);
    CHECK(st == CHEBMOD_OK);
    ojson res = parse_payload(g.r)["result"];
    CHECK(res["ok"] == true);
    CHECK(res["grid"]["pmax"] == 5);
    CHECK(res["cells_checked"] == 40);  // primes {3, 5} x n 1..10 x k 1..2
    CHECK(res["discrepancies"].empty());
    CHECK(res["checks"].get<int>() > 0);
}

TEST_CASE("error statuses and messages") {
    ResultGuard g;
    CHECK(chebmod_fixed(2, 5, 1, 0, 0, &g.r) == CHEBMOD_ERR_INVALID_ARGUMENT);
    CHECK(g.r == nullptr);
    CHECK(std::strlen(chebmod_last_error()) > 0);

    CHECK(chebmod_fixed(3, 2, 3, 0, 0, &g.r) == CHEBMOD_ERR_UNSUPPORTED_P3_LEVEL);
    CHECK(chebmod_fixed(101, 2, 4, 1, 0, &g.r) == CHEBMOD_ERR_BUDGET_EXCEEDED);
    CHECK(chebmod_spectrum(4, 3, 1, 0, 0, &g.r) == CHEBMOD_ERR_INVALID_ARGUMENT);

    // With enumeration, the p = 3 depth gap is filled by the oracle instead.
    CHECK(chebmod_fixed(3, 2, 3, 1, 0, &g.r) == CHEBMOD_OK);
    ojson res = parse_payload(g.r)["result"];
    CHECK(res["levels"][2]["count"] == 6);
    CHECK(res["levels"][2]["method"] == "oracle");
}

TEST_CASE("graph handle") {
    chebmod_graph* g = nullptr;
    REQUIRE(chebmod_graph_build(7, 3, 2, 0, &g) == CHEBMOD_OK);
    REQUIRE(g != nullptr);
    CHECK(chebmod_graph_size(g) == 49);
    CHECK(chebmod_graph_is_periodic(g, 1) == 1);
    CHECK(chebmod_graph_period(g, 1) == 1);
    // 35 periodic nodes (3 + 2 + 18 + 12), the other 14 are tails.
    int periodic = 0;
    for (uint64_t x = 0; x < 49; ++x) {
        if (chebmod_graph_is_periodic(g, x)) {
            ++periodic;
            CHECK(chebmod_graph_period(g, x) > 0);
        } else {
            CHECK(chebmod_graph_period(g, x) == 0);
        }
    }
    CHECK(periodic == 35);

    SUBCASE("JSON render mirrors the accessors") {
        ResultGuard r;
        REQUIRE(chebmod_graph_render(g, CHEBMOD_GRAPH_FORMAT_JSON, &r.r) ==
                CHEBMOD_OK);
        ojson doc = parse_payload(r.r);
        const ojson& res = doc["result"];
        CHECK(res["modulus"] == 49);
        REQUIRE(res["successor"].size() == 49);
        REQUIRE(res["period"].size() == 49);
        for (uint64_t x = 0; x < 49; ++x) {
            CHECK(res["successor"][x] == chebmod_graph_successor(g, x));
            if (chebmod_graph_is_periodic(g, x))
                CHECK(res["period"][x] == chebmod_graph_period(g, x));
            else
                CHECK(res["period"][x].is_null());
        }
    }

    SUBCASE("DOT render carries periods and tail marks") {
        ResultGuard r;
        REQUIRE(chebmod_graph_render(g, CHEBMOD_GRAPH_FORMAT_DOT, &r.r) ==
                CHEBMOD_OK);
        std::string dot = chebmod_result_payload(r.r);
        CHECK(dot.find("digraph chebmod") != std::string::npos);
        CHECK(dot.find("period=3") != std::string::npos);
        CHECK(dot.find("tail=true") != std::string::npos);
        CHECK(dot.find("n0 -> n") != std::string::npos);
    }

    SUBCASE("bad render format") {
        ResultGuard r;
        CHECK(chebmod_graph_render(g, 7, &r.r) == CHEBMOD_ERR_INVALID_ARGUMENT);
    }

    chebmod_graph_free(g);
    chebmod_graph_free(nullptr);  // safe no-op
}

TEST_CASE("graph build errors") {
    chebmod_graph* g = nullptr;
    CHECK(chebmod_graph_build(2, 3, 1, 0, &g) == CHEBMOD_ERR_INVALID_ARGUMENT);
    CHECK(g == nullptr);
    CHECK(chebmod_graph_build(101, 3, 4, 0, &g) == CHEBMOD_ERR_BUDGET_EXCEEDED);
    CHECK(g == nullptr);
}
