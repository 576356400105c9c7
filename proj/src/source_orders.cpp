#include "source_orders.hpp"

namespace chebmod {

const char* source_branch_name(SourceBranch b) noexcept {
    switch (b) {
        case SourceBranch::boundary_plus: return "boundary-plus";
        case SourceBranch::boundary_minus: return "boundary-minus";
        case SourceBranch::split: return "split";
        case SourceBranch::nonsplit: return "nonsplit";
    }
    return "unknown";
}

mpz_class mult_order(const mpz_class& n, const mpz_class& e) {
    if (e < 1) fail(errc::invalid_argument, "mult_order: modulus must be >= 1");
    if (e == 1) return 1;
    mpz_class r = ((n % e) + e) % e;
    if (gcd(r == 0 ? e : r, e) != 1)
        fail(errc::not_invertible,
             "mult_order: " + n.get_str() + " is not a unit mod " + e.get_str());
    mpz_class acc = r, ord = 1;
    while (acc != 1) {
        acc = acc * r % e;
        ++ord;
        if (ord > kOrderBound)
            fail(errc::order_budget_exceeded,
                 "mult_order: exceeded the iteration cap mod " + e.get_str());
    }
    return ord;
}

mpz_class cord(const mpz_class& n, const mpz_class& e) {
    if (e < 1) fail(errc::invalid_argument, "cord: modulus must be >= 1");
    if (e == 1) return 1;
    mpz_class ord = mult_order(n, e);
    if (mpz_even_p(ord.get_mpz_t())) {
        if (powmod(n, ord / 2, e) == e - 1) return ord / 2;
    }
    return ord;
}

namespace {

mpz_class fp2_order(const Fp2Element& zeta) {
    Fp2Element acc = zeta;
    mpz_class ord = 1;
    while (!acc.is_one()) {
        acc = acc.mul(zeta);
        ++ord;
        if (ord > kOrderBound)
            fail(errc::order_budget_exceeded,
                 "source_of: exceeded the order iteration cap in F_p^2");
    }
    return ord;
}

SourceDescriptor classify(const mpz_class& a0, const mpz_class& p,
                          std::optional<mpz_class> forced_nonresidue) {
    PrimePowerModulus pp(p, 1);  // validates p odd prime
    if (a0 < 0 || a0 >= p)
        fail(errc::invalid_argument, "source_of: a0 must lie in [0, p)");

    SourceDescriptor desc;
    desc.p = p;
    desc.a0 = a0;
    if (a0 == 1) {
        desc.branch = SourceBranch::boundary_plus;
        desc.e = 1;
        return desc;
    }
    if (a0 == p - 1) {
        desc.branch = SourceBranch::boundary_minus;
        desc.e = 2;
        return desc;
    }

    mpz_class D = (a0 * a0 - 1) % p;
    if (D < 0) D += p;
    int chi = legendre_symbol(D, p);
    if (chi == 0)
        fail(errc::internal, "source_of: a0^2 - 1 = 0 off the boundary");

    if (chi == 1) {
        mpz_class root = sqrt_mod_p(D, p);
        mpz_class zeta = (a0 + root) % p;
        desc.branch = SourceBranch::split;
        desc.e = mult_order(zeta, p);
        desc.zeta_split = zeta;
        if (desc.e < 3 || (p - 1) % desc.e != 0)
            fail(errc::internal,
                 "source_of: split order " + desc.e.get_str() + " out of range");
        return desc;
    }

    mpz_class D0 = forced_nonresidue ? *forced_nonresidue : smallest_nonresidue(p);
    if (legendre_symbol(D0, p) != -1)
        fail(errc::invalid_argument,
             "source_of: supplied nonresidue " + D0.get_str() + " is a square mod " +
                 p.get_str());
    // sqrt(D) = c * sqrt(D0) with c = sqrt(D / D0): the quotient of two
    // nonresidues is a residue.
    mpz_class D0inv;
    if (mpz_invert(D0inv.get_mpz_t(), D0.get_mpz_t(), p.get_mpz_t()) == 0)
        fail(errc::internal, "source_of: nonresidue not invertible");
    mpz_class c = sqrt_mod_p(D * D0inv % p, p);
    Fp2Element zeta(a0, c, p, D0);
    if (zeta.norm() != 1)
        fail(errc::internal, "source_of: nonsplit root does not have norm 1");
    desc.branch = SourceBranch::nonsplit;
    desc.e = fp2_order(zeta);
    desc.zeta_nonsplit = zeta;
    if (desc.e < 3 || (p + 1) % desc.e != 0)
        fail(errc::internal,
             "source_of: nonsplit order " + desc.e.get_str() + " out of range");
    return desc;
}

}  // namespace

SourceDescriptor source_of(const mpz_class& a0, const mpz_class& p) {
    return classify(a0, p, std::nullopt);
}

SourceDescriptor source_of_with_nonresidue(const mpz_class& a0, const mpz_class& p,
                                           const mpz_class& D) {
    return classify(a0, p, D);
}

CordTower cord_tower(const SourceDescriptor& src, const mpz_class& n, unsigned q_max) {
    if (n < 1) fail(errc::invalid_argument, "cord_tower: degree must be >= 1");
    if (mpz_divisible_p(n.get_mpz_t(), src.p.get_mpz_t()))
        fail(errc::invalid_argument,
             "cord_tower: p | n (the chain requires n to be a unit mod e * p^q)");
    if (gcd(n, src.e) != 1)
        fail(errc::not_periodic,
             "cord_tower: a0 is not periodic under T_n (gcd(n, e) != 1)");

    CordTower tower;
    tower.e = src.e;
    mpz_class modulus = src.e;
    for (unsigned q = 0; q <= q_max; ++q) {
        tower.c.push_back(cord(n, modulus));
        modulus *= src.p;
    }
    for (std::size_t i = 0; i + 1 < tower.c.size(); ++i)
        if (tower.c[i + 1] % tower.c[i] != 0)
            fail(errc::internal, "cord_tower: chain is not a divisibility chain");
    return tower;
}

}  // namespace chebmod
