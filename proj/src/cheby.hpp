#pragma once

#include <gmpxx.h>

#include <cstdint>

#include "arith.hpp"
#include "error.hpp"

namespace chebmod {

// State of the doubling ladder: (T_j(x), T_{j+1}(x)) mod m.
struct ChebPair {
    mpz_class t_j;
    mpz_class t_j1;
};

// T_n(x) mod m in O(log n) steps via the pair-doubling ladder
//   T_{2j}   = 2*T_j^2 - 1
//   T_{2j+1} = 2*T_j*T_{j+1} - x
// n >= 0, m >= 2; result in [0, m).
mpz_class cheb_T(const mpz_class& n, const mpz_class& x, const mpz_class& m);

// U_d(x) mod m for d >= 0 (U_0 = 1, U_1 = 2x), via the paired (T_j, U_{j-1})
// ladder: doubling uses U_{2j-1} = 2*T_j*U_{j-1}, the +1 step uses
// T_{j+1} = x*T_j + (x^2-1)*U_{j-1} and U_j = x*U_{j-1} + T_j.
mpz_class cheb_U(const mpz_class& d, const mpz_class& x, const mpz_class& m);

// T_n'(x) = n * U_{n-1}(x) mod m (n reduced mod m; n = 0 gives 0).
mpz_class cheb_derivative(const mpz_class& n, const mpz_class& x, const mpz_class& m);

// Reference evaluators by the defining three-term recurrence
// T_{j+1} = 2x*T_j - T_{j-1} (and likewise for U). O(n); used to cross-check
// the ladders in tests and oracle spot-checks.
mpz_class cheb_T_naive(unsigned long n, const mpz_class& x, const mpz_class& m);
mpz_class cheb_U_naive(unsigned long d, const mpz_class& x, const mpz_class& m);

// Word-sized ladder for the enumeration oracle: same recurrences as cheb_T,
// all arithmetic in uint64. Requires m < 2^32 so products fit.
std::uint64_t cheb_T_u64(const mpz_class& n, std::uint64_t x, std::uint64_t m);

// p-adic probe for the shared valuation of T_n(x) - x on the fiber eps + p*Z_p
// of a degenerate boundary fixed point eps in {+1, -1} (degenerate means
// p | n^2 - 1; for eps = -1, n must also be odd so that -1 is fixed at all).
//
// With s = v_p(n^2 - 1), every x = eps + p*u with p ∤ u has
// v_p(T_n(x) - x) = s + 1 for p >= 5; the probe evaluates at working modulus
// p^(s + guard + 2), subtracts the known v_p(x - eps) = 1 and returns s.
// Nothing is ever divided: if the residue cannot certify the valuation
// (precision ceiling), a typed insufficient_precision error is raised.
// p = 3 is refused: the fiber valuation is not constant there.
unsigned qeps_valuation_probe(const mpz_class& n, int eps, const mpz_class& u,
                              const mpz_class& p, unsigned guard = 2);

}  // namespace chebmod
