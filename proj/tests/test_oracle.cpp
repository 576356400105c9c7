#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <functional>
#include <random>

#include "cheby.hpp"
#include "oracle.hpp"

using namespace chebmod;

namespace {

errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected a chebmod::Error");
    return errc::internal;
}

using u64 = std::uint64_t;

}  // namespace

TEST_CASE("enumerate_fixed on worked examples") {
    CHECK(enumerate_fixed(PrimePowerModulus(7, 1), 5) ==
          std::vector<u64>({0, 1, 3, 4, 6}));
    CHECK(enumerate_fixed(PrimePowerModulus(7, 2), 22) ==
          std::vector<u64>({1, 3, 8, 10, 15, 17, 22, 24, 29, 31, 36, 38, 43, 45}));
    CHECK(enumerate_fixed(PrimePowerModulus(5, 2), 14) ==
          std::vector<u64>({1, 2, 6, 7, 11, 12, 16, 17, 21, 22}));
    CHECK(enumerate_fixed(PrimePowerModulus(5, 2), 24) ==
          std::vector<u64>({1, 6, 11, 16, 21}));
    CHECK(enumerate_fixed(PrimePowerModulus(3, 3), 2) ==
          std::vector<u64>({1, 4, 10, 13, 19, 22}));
    CHECK(enumerate_fixed(PrimePowerModulus(3, 5), 2) ==
          std::vector<u64>({1, 40, 82, 121, 163, 202}));
}

TEST_CASE("enumerate_fixed is closed under the map and complete") {
    std::mt19937_64 rng(33001);
    for (int trial = 0; trial < 30; ++trial) {
        unsigned long p = std::vector<unsigned long>{3, 5, 7, 11, 13}[rng() % 5];
        unsigned k = 1 + rng() % 3;
        mpz_class n = static_cast<unsigned long>(rng() % 200);
        PrimePowerModulus pp(p, k);
        auto fixed = enumerate_fixed(pp, n);
        std::uint64_t m = mpz_get_ui(pp.modulus.get_mpz_t());
        std::size_t idx = 0;
        for (u64 x = 0; x < m; ++x) {
            bool is_fixed = cheb_T_u64(n, x, m) == x;
            bool listed = idx < fixed.size() && fixed[idx] == x;
            CHECK(is_fixed == listed);
            if (listed) ++idx;
        }
        CHECK(idx == fixed.size());
    }
}

TEST_CASE("oracle budget is enforced and configurable") {
    // 101^4 = 104060401 exceeds the 2^22 default.
    PrimePowerModulus big(101, 4);
    CHECK(code_of([&] { enumerate_fixed(big, 2); }) == errc::oracle_budget_exceeded);
    CHECK(code_of([&] { build_graph(big, 2); }) == errc::oracle_budget_exceeded);
    // An explicit budget below the modulus also refuses.
    CHECK(code_of([&] { enumerate_fixed(PrimePowerModulus(7, 2), 3, 10); }) ==
          errc::oracle_budget_exceeded);
    // An explicit budget above works: T_3 mod 49 has the three fixed points
    // counted by the four-gcd formula (no degenerate branch for n = 3, p = 7).
    CHECK(enumerate_fixed(PrimePowerModulus(7, 2), 3, 49).size() == 3);

    SUBCASE("environment override") {
        CHECK(default_oracle_budget() == kOracleBudgetDefault);
        setenv("CHEBMOD_ORACLE_BUDGET", "123456", 1);
        CHECK(default_oracle_budget() == 123456);
        setenv("CHEBMOD_ORACLE_BUDGET", "not-a-number", 1);
        CHECK(code_of([] { default_oracle_budget(); }) == errc::invalid_argument);
        setenv("CHEBMOD_ORACLE_BUDGET", "99999999999999", 1);  // above ceiling
        CHECK(default_oracle_budget() == kOracleBudgetCeiling);  // clamped, not an error
        unsetenv("CHEBMOD_ORACLE_BUDGET");
        CHECK(default_oracle_budget() == kOracleBudgetDefault);
    }
}

TEST_CASE("build_graph: successors and periods are mutually consistent") {
    std::mt19937_64 rng(33002);
    for (auto [p, k, n] : std::vector<std::tuple<unsigned long, unsigned, unsigned long>>{
             {7, 2, 3}, {5, 3, 2}, {3, 4, 2}, {11, 2, 14}, {13, 1, 6}, {5, 2, 10}}) {
        FunctionalGraph g = build_graph(PrimePowerModulus(p, k), n);
        CHECK(g.modulus == g.successor.size());
        CHECK(g.period.size() == g.successor.size());
        // Spot-check 100 successors against a direct ladder evaluation.
        for (int i = 0; i < 100; ++i) {
            u64 x = rng() % g.modulus;
            CHECK(g.successor[x] == cheb_T_u64(n, x, g.modulus));
        }
        for (u64 x = 0; x < g.modulus; ++x) {
            u64 y = g.successor[x];
            if (g.is_periodic(x)) {
                // Successor of a cycle node is on the same cycle.
                CHECK(g.period[y] == g.period[x]);
                // Walking exactly period[x] steps returns to x...
                u64 z = x;
                for (u64 s = 0; s < g.period[x]; ++s) z = g.successor[z];
                CHECK(z == x);
                // ...and period[x] is minimal: no earlier return.
                z = x;
                for (u64 s = 1; s < g.period[x]; ++s) {
                    z = g.successor[z];
                    CHECK(z != x);
                }
            } else {
                // Tails feed forward into the periodic part eventually; the
                // immediate successor of a tail node is never "behind" it.
                CHECK((g.period[y] != 0 || y != x));
            }
        }
    }
}

TEST_CASE("oracle_spectrum on worked examples") {
    auto spec = [](unsigned long p, unsigned k, unsigned long n) {
        return oracle_spectrum(build_graph(PrimePowerModulus(p, k), n));
    };
    CHECK(spec(7, 1, 5) == std::map<u64, u64>({{1, 5}, {2, 2}}));
    CHECK(spec(7, 2, 3) == std::map<u64, u64>({{1, 3}, {2, 2}, {3, 18}, {6, 12}}));
    CHECK(spec(5, 2, 2) == std::map<u64, u64>({{1, 2}, {2, 4}, {4, 4}}));
    CHECK(spec(3, 4, 2) == std::map<u64, u64>({{1, 6}, {3, 12}, {9, 9}}));
    CHECK(spec(5, 3, 5) == std::map<u64, u64>({{1, 5}}));
    CHECK(spec(5, 2, 10) == std::map<u64, u64>({{1, 2}}));
    CHECK(spec(7, 2, 21) == std::map<u64, u64>({{1, 3}, {2, 2}}));
}

TEST_CASE("lifts_period_profile on worked examples") {
    FunctionalGraph g125 = build_graph(PrimePowerModulus(5, 3), 2);
    LiftsProfile pr = lifts_period_profile(g125, 1);
    CHECK(pr.periods == std::map<u64, u64>({{1, 1}, {2, 4}, {10, 20}}));
    CHECK(pr.non_periodic == 0);

    FunctionalGraph g49 = build_graph(PrimePowerModulus(7, 2), 3);
    auto check49 = [&](u64 a0, std::map<u64, u64> periods, u64 nonper) {
        LiftsProfile q = lifts_period_profile(g49, a0);
        CHECK(q.periods == periods);
        CHECK(q.non_periodic == nonper);
    };
    check49(0, {{1, 1}, {3, 6}}, 0);
    check49(1, {{1, 1}, {3, 6}}, 0);
    check49(2, {{2, 1}, {6, 6}}, 0);
    check49(3, {}, 7);
    check49(4, {}, 7);
    check49(5, {{2, 1}, {6, 6}}, 0);
    check49(6, {{1, 1}, {3, 6}}, 0);

    // Profiles partition the graph: summing over all a0 recovers the spectrum.
    std::map<u64, u64> total;
    u64 total_nonper = 0;
    for (u64 a0 = 0; a0 < 7; ++a0) {
        LiftsProfile q = lifts_period_profile(g49, a0);
        for (auto [r, c] : q.periods) total[r] += c;
        total_nonper += q.non_periodic;
    }
    CHECK(total == oracle_spectrum(g49));
    CHECK(total_nonper == 49 - (3 + 2 + 18 + 12));

    CHECK(code_of([&] { lifts_period_profile(g49, 7); }) == errc::invalid_argument);
}

TEST_CASE("graph construction is deterministic") {
    FunctionalGraph a = build_graph(PrimePowerModulus(11, 2), 14);
    FunctionalGraph b = build_graph(PrimePowerModulus(11, 2), 14);
    CHECK(a.successor == b.successor);
    CHECK(a.period == b.period);
}
