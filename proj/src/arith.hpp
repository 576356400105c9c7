#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "error.hpp"

namespace chebmod {

// Largest integer we agree to factor by trial division. Callers that need the
// factorization of something bigger get errc::factor_budget_exceeded instead of
// an open-ended stall.
inline constexpr std::uint64_t kFactorBound = 1'000'000'000'000ULL;  // 1e12

// Iteration cap for multiplicative-order searches (mult_order / cord). Orders
// encountered in practice are at most e <= p + 1; the cap exists so a huge
// modulus fails fast with errc::order_budget_exceeded rather than spinning.
inline constexpr std::uint64_t kOrderBound = 10'000'000ULL;  // 1e7

// An odd prime power p^k, validated on construction.
//   p odd prime >= 3 (p = 2 rejected: the theory here is for odd primes),
//   k >= 1, modulus = p^k held exactly.
struct PrimePowerModulus {
    mpz_class p;
    unsigned k = 0;
    mpz_class modulus;

    PrimePowerModulus(const mpz_class& p_in, unsigned k_in);
};

// gcd(a, b) >= 0. Both arguments zero is a domain error (the callers' formulas
// all have a well-defined positive gcd; a silent 0 would corrupt counts).
mpz_class gcd(const mpz_class& a, const mpz_class& b);

// powmod(base, exp, m) with m >= 2 and exp >= 0; m < 2 or exp < 0 is a domain
// error. Result in [0, m).
mpz_class powmod(const mpz_class& base, const mpz_class& exp, const mpz_class& m);

// p-adic valuation of a residue x in [0, pp.modulus). A residue mod p^k can
// only certify valuations < k, so:
//   - cap must satisfy cap < k (else domain error);
//   - x == 0 mod p^k returns nullopt, meaning "at least k, beyond what this
//     residue can certify" (callers clamp with capped_min);
//   - otherwise the exact valuation (always < k) is returned.
std::optional<unsigned> valuation_capped(const mpz_class& x,
                                         const PrimePowerModulus& pp,
                                         unsigned cap);

// min(cap, v) where nullopt means "larger than any certified value".
inline unsigned capped_min(unsigned cap, std::optional<unsigned> v) {
    return v ? std::min(cap, *v) : cap;
}

// Exact p-adic valuation of a nonzero integer (not residue-capped).
unsigned valuation_exact(const mpz_class& x, const mpz_class& p);

// Trial-division factorization of m >= 1, primes ascending. m = 1 gives {}.
// m > kFactorBound raises errc::factor_budget_exceeded.
std::vector<std::pair<mpz_class, unsigned>> factorize(const mpz_class& m);

// Deterministic primality for 2 <= p <= kFactorBound (trial division).
bool is_prime(const mpz_class& p);

// Euler phi, Moebius mu, and the sorted divisor list of m >= 1, all via
// factorize (same bound and budget error).
mpz_class euler_phi(const mpz_class& m);
int moebius(const mpz_class& m);
std::vector<mpz_class> divisors(const mpz_class& m);

// Legendre symbol (a | p) for odd prime p, via Euler's criterion:
// 0 if p | a, +1 for nonzero squares, -1 for nonsquares.
int legendre_symbol(const mpz_class& a, const mpz_class& p);

// Smallest square root of a mod odd prime p: the unique r in [0, p/2] with
// r^2 = a (mod p). Nonresidue input is a domain error. Exhaustive search for
// p <= 1e4 (the verification regime, where simplicity wins); Tonelli-Shanks
// above that, normalized to the smaller root so the contract is identical.
mpz_class sqrt_mod_p(const mpz_class& a, const mpz_class& p);

// Smallest positive quadratic nonresidue mod odd prime p.
mpz_class smallest_nonresidue(const mpz_class& p);

}  // namespace chebmod
