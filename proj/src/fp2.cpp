#include "fp2.hpp"

namespace chebmod {

Fp2Element::Fp2Element(mpz_class c0_in, mpz_class c1_in, mpz_class p_in, mpz_class D_in)
    : c0(std::move(c0_in)), c1(std::move(c1_in)), p(std::move(p_in)), D(std::move(D_in)) {
    if (p < 3)
        fail(errc::invalid_argument, "Fp2Element: p must be an odd prime");
    c0 = ((c0 % p) + p) % p;
    c1 = ((c1 % p) + p) % p;
    D = ((D % p) + p) % p;
}

Fp2Element Fp2Element::one(const mpz_class& p, const mpz_class& D) {
    return Fp2Element(1, 0, p, D);
}

Fp2Element Fp2Element::mul(const Fp2Element& rhs) const {
    if (p != rhs.p || D != rhs.D)
        fail(errc::invalid_argument, "Fp2Element::mul: mismatched fields");
    // (a + b t)(c + d t) = (ac + D bd) + (ad + bc) t
    mpz_class r0 = (c0 * rhs.c0 + D * (c1 * rhs.c1)) % p;
    mpz_class r1 = (c0 * rhs.c1 + c1 * rhs.c0) % p;
    return Fp2Element(r0, r1, p, D);
}

Fp2Element Fp2Element::conj() const {
    return Fp2Element(c0, p - c1, p, D);
}

mpz_class Fp2Element::norm() const {
    mpz_class n = (c0 * c0 - D * (c1 * c1)) % p;
    return (n + p) % p;
}

Fp2Element Fp2Element::inverse() const {
    mpz_class n = norm();
    if (n == 0)
        fail(errc::not_invertible, "Fp2Element: zero norm has no inverse");
    mpz_class ninv;
    if (mpz_invert(ninv.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()) == 0)
        fail(errc::not_invertible, "Fp2Element: norm not invertible mod p");
    return Fp2Element(c0 * ninv, (p - c1) * ninv, p, D);
}

Fp2Element Fp2Element::pow(const mpz_class& e) const {
    if (e < 0)
        fail(errc::invalid_argument, "Fp2Element::pow: negative exponent");
    Fp2Element acc = one(p, D);
    Fp2Element base = *this;
    mpz_class rest = e;
    while (rest > 0) {
        if (mpz_odd_p(rest.get_mpz_t())) acc = acc.mul(base);
        base = base.mul(base);
        rest >>= 1;
    }
    return acc;
}

bool Fp2Element::operator==(const Fp2Element& rhs) const {
    return p == rhs.p && D == rhs.D && c0 == rhs.c0 && c1 == rhs.c1;
}

}  // namespace chebmod
