#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "arith.hpp"

namespace chebmod {

// The fixed points of T_n on Z/pZ are counted by four gcds against p -+ 1:
//   N_1 = (G1 + G2 + G3 + G4 - 2*delta) / 2,
//   G1 = gcd(n-1, p-1), G2 = gcd(n+1, p-1),
//   G3 = gcd(n-1, p+1), G4 = gcd(n+1, p+1), delta = gcd(n-1, 2).
// Lifting to Z/p^kZ adds (p^min(k-1, s) - 1) lifts above each of the d
// degenerate fixed points, where s = v_p(n^2 - 1) — for every odd p at k = 2,
// and for p >= 5 at every k. For p = 3 and k >= 3 no closed form exists
// (the counts genuinely depend on more than (G_i, delta, s)), so those levels
// are a typed error on the closed-form path; only the oracle covers them.

enum class DegenerateBranch { none, minus, plus };

enum class CountMethod { closed_form, first_lift, oracle };
const char* count_method_name(CountMethod m) noexcept;

// Degree data sufficient for every count formula at a fixed p^k, without the
// degree itself. This is what makes counts for huge composite degrees (say
// n^j for Moebius inversion) cheap: build it with powmods.
struct ReducedDegree {
    bool odd = false;            // m mod 2
    mpz_class mod_minus;         // m mod (p-1)p^(k-1)
    mpz_class mod_plus;          // m mod (p+1)p^(k-1)
    mpz_class mod_pk;            // m mod p^k
    bool divisible_by_p = false;

    static ReducedDegree of(const mpz_class& m, const PrimePowerModulus& pp);
    // ReducedDegree of base^exp without forming the power.
    static ReducedDegree of_power(const mpz_class& base, const mpz_class& exp,
                                  const PrimePowerModulus& pp);
};

struct DegenerateCount {
    mpz_class d;
    DegenerateBranch branch;
};

// Classification of one fixed residue a0 of T_n on Z/pZ.
enum class LiftKind { nondegenerate, degenerate_boundary, degenerate_nonboundary };
const char* lift_kind_name(LiftKind kind) noexcept;

struct LiftClass {
    mpz_class a0;
    LiftKind kind;
    mpz_class multiplier;  // T_n'(a0) mod p
};

struct LevelCount {
    unsigned k = 0;
    mpz_class count;
    CountMethod method = CountMethod::closed_form;
};

struct FixedPointReport {
    mpz_class p, n;
    mpz_class G1, G2, G3, G4, delta;
    mpz_class N1, d;
    DegenerateBranch branch = DegenerateBranch::none;
    std::optional<unsigned> s;  // v_p(n^2 - 1); nullopt = infinite (n = 1)
    std::vector<LevelCount> levels;
};

// |Fix(T_n, Z/pZ)| by the four-gcd formula. p an odd prime, n >= 0.
mpz_class n1_count(const mpz_class& p, const mpz_class& n);

// Number of degenerate fixed residues and which branch they sit on:
// d = (G1+G3)/2 if p | n-1, (G2+G4)/2 if p | n+1, else 0.
DegenerateCount degenerate_count(const mpz_class& p, const mpz_class& n);

// |Fix(T_n, Z/p^2Z)| = N_1 + d*(p - 1). Valid for every odd p.
mpz_class n2_first_lift(const mpz_class& p, const mpz_class& n);

// |Fix(T_n, Z/p^kZ)| by closed form. Computes both the compact form
// N_1 + d*(p^min(k-1,s) - 1) and the level-k gcd form and insists they agree.
// p = 3 with k >= 3 raises errc::unsupported_p3_level.
mpz_class nk_count(const PrimePowerModulus& pp, const mpz_class& n);

// Same, from a reduced degree (the caller vouches that rd describes some
// nonnegative integer m; s is recovered from (m^2 - 1) mod p^k via a capped
// valuation, which the min(k-1, .) in the formula makes exact enough).
mpz_class nk_of_reduced_degree(const PrimePowerModulus& pp, const ReducedDegree& rd);

// N_1, then each fixed residue of T_n on Z/pZ with its multiplier and
// degeneracy classification. Enumerates F_p, so p is budget-checked like the
// oracle. Asserts the degenerate total equals d.
std::vector<LiftClass> classify_fixed_residues(const mpz_class& p, const mpz_class& n,
                                               std::uint64_t budget = 0);

// Number of fixed points of T_n on Z/p^kZ lying above the fixed residue a0:
// 1 if a0 is nondegenerate, p^min(k-1, s) if degenerate. Requires p >= 5
// (for p = 3 the degenerate local behavior has no uniform closed form).
mpz_class lifts_above(const PrimePowerModulus& pp, const mpz_class& n,
                      const mpz_class& a0);

// The increments N_(k+1) - N_k for k = 1 .. k_max-1 (p >= 5):
// d*(p-1)*p^(k-1) while k <= s, then 0 forever.
std::vector<mpz_class> increments(const mpz_class& p, const mpz_class& n,
                                  unsigned k_max);

// Full report for levels 1..k: formula ingredients plus per-level counts.
// Levels with no closed form (p = 3, k >= 3) are filled from the oracle when
// use_oracle_fallback is set and raise errc::unsupported_p3_level otherwise.
FixedPointReport fixed_point_report(const PrimePowerModulus& pp, const mpz_class& n,
                                    bool use_oracle_fallback = false,
                                    std::uint64_t budget = 0);

}  // namespace chebmod
