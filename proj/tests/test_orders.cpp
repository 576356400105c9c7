#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <map>

#include "oracle.hpp"
#include "source_orders.hpp"

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

}  // namespace

TEST_CASE("multiplicative order") {
    CHECK(mult_order(3, 7) == 6);
    CHECK(mult_order(2, 7) == 3);
    CHECK(mult_order(2, 25) == 20);
    CHECK(mult_order(9, 1) == 1);
    CHECK(mult_order(1, 100) == 1);
    CHECK(code_of([] { mult_order(3, 9); }) == errc::not_invertible);
    CHECK(code_of([] { mult_order(0, 5); }) == errc::not_invertible);
    // ord of 2 mod 3^16 is 2 * 3^15 = 28697814, above the iteration cap.
    CHECK(code_of([] { mult_order(2, mpz_class(43046721)); }) ==
          errc::order_budget_exceeded);
}

TEST_CASE("Chebyshev order cord") {
    CHECK(cord(3, 7) == 3);     // 3^3 = 27 = -1 (mod 7)
    CHECK(cord(2, 5) == 2);     // 2^2 = -1 (mod 5)
    CHECK(cord(2, 25) == 10);
    CHECK(cord(2, 125) == 50);
    CHECK(cord(7, 1) == 1);
    CHECK(cord(9, 2) == 1);
    CHECK(cord(4, 15) == 2);    // 4^2 = 16 = 1, and 4 != +-1 (mod 15)

    SUBCASE("cord is ord or ord/2, and is the minimal +-1 exponent") {
        for (unsigned long e = 1; e <= 200; ++e) {
            for (unsigned long n = 1; n <= 50; ++n) {
                if (gcd(n, e) != 1) continue;
                mpz_class c = cord(n, e);
                mpz_class ord = mult_order(n, e);
                CHECK((c == ord || c * 2 == ord));
                // Brute scan for the least r with n^r = +-1.
                mpz_class acc = 1, want = -1;
                for (unsigned long r = 1; r <= 400; ++r) {
                    acc = acc * n % e;
                    if (acc == 1 % e || acc == (e - 1) % e) { want = r; break; }
                }
                CHECK(c == want);
            }
        }
    }
}

TEST_CASE("source classification on worked residues") {
    SourceDescriptor s = source_of(1, 7);
    CHECK(s.branch == SourceBranch::boundary_plus);
    CHECK(s.e == 1);

    s = source_of(6, 7);
    CHECK(s.branch == SourceBranch::boundary_minus);
    CHECK(s.e == 2);

    s = source_of(3, 7);  // 3^2 - 1 = 8 = 1 (mod 7), square: split
    CHECK(s.branch == SourceBranch::split);
    CHECK(s.e == 3);
    REQUIRE(s.zeta_split.has_value());
    CHECK((*s.zeta_split == 2 || *s.zeta_split == 4));  // roots of z^2 - 6z + 1

    s = source_of(2, 5);  // 2^2 - 1 = 3, nonsquare mod 5: nonsplit
    CHECK(s.branch == SourceBranch::nonsplit);
    CHECK(s.e == 3);
    REQUIRE(s.zeta_nonsplit.has_value());
    CHECK(s.zeta_nonsplit->norm() == 1);
    CHECK(s.zeta_nonsplit->c0 == 2);  // real part is a0 itself

    // The level-one sources behind the T_3 mod 7 tables.
    CHECK(source_of(0, 7).e == 4);
    CHECK(source_of(2, 7).e == 8);
    CHECK(source_of(5, 7).e == 8);
    CHECK(source_of(4, 7).e == 6);
    CHECK(source_of(0, 7).branch == SourceBranch::nonsplit);
    CHECK(source_of(2, 7).branch == SourceBranch::nonsplit);
    CHECK(source_of(4, 7).branch == SourceBranch::split);

    CHECK(code_of([] { source_of(7, 7); }) == errc::invalid_argument);
}

TEST_CASE("source invariants across whole residue fields") {
    for (unsigned long p : {3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul}) {
        std::map<unsigned long, unsigned long> census;  // e -> residue count
        for (unsigned long a0 = 0; a0 < p; ++a0) {
            SourceDescriptor s = source_of(a0, p);
            CHECK(s.e >= 1);
            switch (s.branch) {
                case SourceBranch::boundary_plus:
                    CHECK(a0 == 1 % p);
                    CHECK(s.e == 1);
                    break;
                case SourceBranch::boundary_minus:
                    CHECK(a0 == p - 1);
                    CHECK(s.e == 2);
                    break;
                case SourceBranch::split: {
                    CHECK(s.e >= 3);
                    CHECK((p - 1) % s.e == 0);
                    REQUIRE(s.zeta_split.has_value());
                    mpz_class z = *s.zeta_split;
                    CHECK(mult_order(z, p) == s.e);
                    // (zeta + zeta^-1) / 2 = a0.
                    mpz_class zinv = powmod(z, p - 2, p);
                    CHECK((z + zinv) % p == 2 * a0 % p);
                    // The conjugate root generates the same order.
                    mpz_class other = (2 * a0 % p - z + p) % p;
                    CHECK(mult_order(other, p) == s.e);
                    break;
                }
                case SourceBranch::nonsplit: {
                    CHECK(s.e >= 3);
                    CHECK((p + 1) % s.e == 0);
                    REQUIRE(s.zeta_nonsplit.has_value());
                    Fp2Element z = *s.zeta_nonsplit;
                    CHECK(z.norm() == 1);
                    CHECK(z.c0 == a0);
                    CHECK(z.c1 != 0);
                    CHECK(z.pow(s.e).is_one());
                    for (mpz_class dd : divisors(s.e))
                        if (dd != s.e) CHECK_FALSE(z.pow(dd).is_one());
                    break;
                }
            }
            unsigned long e_ul = s.e.get_ui();
            census[e_ul] += 1;
        }
        // Off the boundary, each admissible order e >= 3 owns phi(e)/2 residues.
        std::vector<mpz_class> targets = {mpz_class(p - 1), mpz_class(p + 1)};
        for (const mpz_class& target : targets) {
            for (const mpz_class& e : divisors(target)) {
                if (e < 3) continue;
                CHECK(census[e.get_ui()] == euler_phi(e) / 2);
            }
        }
        // And the census partitions F_p completely.
        unsigned long total = 0;
        for (auto [e, c] : census) total += c;
        CHECK(total == p);
    }
}

TEST_CASE("nonsplit order does not depend on the chosen nonresidue") {
    for (unsigned long p : {5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul}) {
        for (unsigned long a0 = 0; a0 < p; ++a0) {
            if (source_of(a0, p).branch != SourceBranch::nonsplit) continue;
            mpz_class e_ref = source_of(a0, p).e;
            for (unsigned long D = 2; D < p; ++D) {
                if (legendre_symbol(D, p) != -1) continue;
                SourceDescriptor s = source_of_with_nonresidue(a0, p, D);
                CHECK(s.branch == SourceBranch::nonsplit);
                CHECK(s.e == e_ref);
                CHECK(s.zeta_nonsplit->norm() == 1);
            }
        }
    }
    CHECK(code_of([] { source_of_with_nonresidue(0, 7, 2); }) ==
          errc::invalid_argument);  // 2 is a square mod 7
}

TEST_CASE("cord towers above source points") {
    SUBCASE("boundary-plus tower for n = 2, p = 5") {
        CordTower t = cord_tower(source_of(1, 5), 2, 3);
        CHECK(t.e == 1);
        CHECK(t.c == std::vector<mpz_class>({1, 2, 10, 50}));
    }

    SUBCASE("split source e = 3 at p = 7, n = 5") {
        CordTower t = cord_tower(source_of(3, 7), 5, 1);
        CHECK(t.e == 3);
        CHECK(t.c[0] == cord(5, 3));
        CHECK(t.c[1] == cord(5, 21));
    }

    SUBCASE("each entry divides the next") {
        for (unsigned long p : {5ul, 7ul}) {
            for (unsigned long n = 2; n <= 20; ++n) {
                if (n % p == 0) continue;
                for (unsigned long a0 = 0; a0 < p; ++a0) {
                    SourceDescriptor src = source_of(a0, p);
                    if (gcd(n, src.e) != 1) continue;
                    CordTower t = cord_tower(src, n, 3);
                    REQUIRE(t.c.size() == 4);
                    for (int q = 0; q < 3; ++q) CHECK(t.c[q + 1] % t.c[q] == 0);
                    CHECK(t.c[0] == cord(n, src.e));
                }
            }
        }
    }

    SUBCASE("refusals") {
        CHECK(code_of([] { cord_tower(source_of(1, 5), 10, 2); }) ==
              errc::invalid_argument);  // p | n
        CHECK(code_of([] { cord_tower(source_of(3, 7), 3, 2); }) ==
              errc::not_periodic);      // gcd(n, e) = 3
        CHECK(code_of([] { cord_tower(source_of(1, 5), 0, 2); }) ==
              errc::invalid_argument);  // n must be >= 1
    }
}

TEST_CASE("source order predicts level-one periodicity and period") {
    for (unsigned long p : {5ul, 7ul, 11ul, 13ul}) {
        for (unsigned long n = 2; n <= 30; ++n) {
            if (n % p == 0) continue;
            FunctionalGraph g = build_graph(PrimePowerModulus(p, 1), n);
            for (unsigned long a0 = 0; a0 < p; ++a0) {
                SourceDescriptor s = source_of(a0, p);
                bool coprime = gcd(n, s.e) == 1;
                CHECK(g.is_periodic(a0) == coprime);
                if (coprime)
                    CHECK(cord(n, s.e) == g.period[a0]);
            }
        }
    }
}

TEST_CASE("branch names") {
    CHECK(std::string(source_branch_name(SourceBranch::boundary_plus)) ==
          "boundary-plus");
    CHECK(std::string(source_branch_name(SourceBranch::boundary_minus)) ==
          "boundary-minus");
    CHECK(std::string(source_branch_name(SourceBranch::split)) == "split");
    CHECK(std::string(source_branch_name(SourceBranch::nonsplit)) == "nonsplit");
}
