#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <vector>

#include "arith.hpp"

namespace chebmod {

// Node budget for brute-force enumeration. Default 2^22; overridable via the
// CHEBMOD_ORACLE_BUDGET environment variable or an explicit argument (0 means
// "use the default"). Hard ceiling 2^31 so node indices stay in 32 bits.
inline constexpr std::uint64_t kOracleBudgetDefault = 1ULL << 22;
inline constexpr std::uint64_t kOracleBudgetCeiling = 1ULL << 31;
std::uint64_t default_oracle_budget();

// The functional graph of x -> T_n(x) on Z/p^kZ, with its cycle structure.
// period[x] is the exact period of x if x is periodic (lies on a cycle),
// 0 otherwise.
struct FunctionalGraph {
    mpz_class p;
    unsigned k = 0;
    std::uint64_t modulus = 0;
    mpz_class n;
    std::vector<std::uint32_t> successor;
    std::vector<std::uint32_t> period;

    bool is_periodic(std::uint64_t x) const { return period[x] != 0; }
};

// All x in [0, p^k) with T_n(x) = x, ascending. Pure brute force: one ladder
// evaluation per node, no shared state with the closed-form code paths.
std::vector<std::uint64_t> enumerate_fixed(const PrimePowerModulus& pp,
                                           const mpz_class& n,
                                           std::uint64_t budget = 0);

// Build the full successor graph and decompose it into cycles and tails with
// an iterative three-color walk (no recursion, so deep tails cannot overflow
// the stack).
FunctionalGraph build_graph(const PrimePowerModulus& pp, const mpz_class& n,
                            std::uint64_t budget = 0);

// Histogram: exact period -> number of periodic points.
std::map<std::uint64_t, std::uint64_t> oracle_spectrum(const FunctionalGraph& g);

// Period profile of the lifts of a base residue a0 in [0, p): the p^(k-1)
// nodes x = a0 (mod p). Periodic lifts are histogrammed by exact period;
// non-periodic lifts are counted separately, never silently dropped.
struct LiftsProfile {
    std::map<std::uint64_t, std::uint64_t> periods;
    std::uint64_t non_periodic = 0;
};
LiftsProfile lifts_period_profile(const FunctionalGraph& g, std::uint64_t a0);

}  // namespace chebmod
