#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "arith.hpp"
#include "fp2.hpp"

namespace chebmod {

// Every residue a0 mod p is (zeta + zeta^-1)/2 for a root zeta of
// z^2 - 2*a0*z + 1. Where that root lives decides the dynamics of a0 under
// the Chebyshev maps:
//   boundary-plus   a0 = 1    zeta = 1,      e = 1
//   boundary-minus  a0 = -1   zeta = -1,     e = 2
//   split           a0^2 - 1 a square:    zeta in F_p^x,  e | p - 1
//   nonsplit        a0^2 - 1 a nonsquare: zeta of norm 1 in F_p^2, e | p + 1
// with e = ord(zeta), the source order of a0 (e >= 3 off the boundary).

enum class SourceBranch { boundary_plus, boundary_minus, split, nonsplit };
const char* source_branch_name(SourceBranch b) noexcept;

struct SourceDescriptor {
    mpz_class p;
    mpz_class a0;
    SourceBranch branch;
    mpz_class e;
    std::optional<mpz_class> zeta_split;      // set iff branch == split
    std::optional<Fp2Element> zeta_nonsplit;  // set iff branch == nonsplit
};

// The chain c_q = cord(n, e * p^q) for q = 0..q_max; each entry divides the
// next. Exact periods of the lifts of a0 are read off this chain.
struct CordTower {
    mpz_class e;
    std::vector<mpz_class> c;
};

// Multiplicative order of n mod e (e >= 1; e = 1 gives 1). gcd(n, e) != 1 is
// errc::not_invertible. Iteration capped at kOrderBound.
mpz_class mult_order(const mpz_class& n, const mpz_class& e);

// Chebyshev order: least r >= 1 with n^r = +-1 (mod e). Equals ord/2 when the
// order ord of n is even and n^(ord/2) = -1, else equals ord. cord(n, 1) = 1.
mpz_class cord(const mpz_class& n, const mpz_class& e);

// Source classification of a0 in [0, p). Deterministic: nonsplit roots are
// expressed over the canonical nonresidue, and the order is independent of
// which of the two conjugate roots is taken.
SourceDescriptor source_of(const mpz_class& a0, const mpz_class& p);

// Test hook: same classification but over an explicitly chosen nonresidue D
// (must satisfy (D | p) = -1). The resulting order e must not depend on D.
SourceDescriptor source_of_with_nonresidue(const mpz_class& a0, const mpz_class& p,
                                           const mpz_class& D);

// The cord chain above a source point. p | n is a domain error (the point is
// then not even periodic at level 1 unless on the boundary, and the chain is
// meaningless); gcd(n, e) != 1 is errc::not_periodic.
CordTower cord_tower(const SourceDescriptor& src, const mpz_class& n, unsigned q_max);

}  // namespace chebmod
