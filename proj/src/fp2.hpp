#pragma once

#include <gmpxx.h>

#include "arith.hpp"
#include "error.hpp"

namespace chebmod {

// Element c0 + c1*t of F_p[t]/(t^2 - D), where D is a quadratic nonresidue
// mod p. Used for roots of x^2 - 2*a0*x + 1 that do not live in F_p: such a
// root generates the norm-one subgroup of order p + 1.
//
// The canonical ambient field for a given p fixes D = smallest positive
// nonresidue, so elements arising from different square-root choices compare
// equal when they represent the same field element.
struct Fp2Element {
    mpz_class c0, c1;
    mpz_class p, D;

    Fp2Element(mpz_class c0_in, mpz_class c1_in, mpz_class p_in, mpz_class D_in);

    static Fp2Element one(const mpz_class& p, const mpz_class& D);

    Fp2Element mul(const Fp2Element& rhs) const;
    Fp2Element conj() const;        // c0 - c1*t
    mpz_class norm() const;         // c0^2 - D*c1^2 mod p
    Fp2Element inverse() const;     // fails with not_invertible on norm 0
    Fp2Element pow(const mpz_class& e) const;

    bool operator==(const Fp2Element& rhs) const;
    bool is_one() const { return c0 == 1 && c1 == 0; }
};

}  // namespace chebmod
