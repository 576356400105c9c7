#include "arith.hpp"

#include <algorithm>

namespace chebmod {

const char* errc_name(errc code) noexcept {
    switch (code) {
        case errc::invalid_argument: return "invalid_argument";
        case errc::unsupported_p3_level: return "unsupported_p3_level";
        case errc::oracle_budget_exceeded: return "oracle_budget_exceeded";
        case errc::factor_budget_exceeded: return "factor_budget_exceeded";
        case errc::order_budget_exceeded: return "order_budget_exceeded";
        case errc::not_invertible: return "not_invertible";
        case errc::not_periodic: return "not_periodic";
        case errc::insufficient_precision: return "insufficient_precision";
        case errc::internal: return "internal";
    }
    return "unknown";
}

PrimePowerModulus::PrimePowerModulus(const mpz_class& p_in, unsigned k_in)
    : p(p_in), k(k_in) {
    if (p == 2)
        fail(errc::invalid_argument,
             "PrimePowerModulus: p = 2 is outside this library's scope (odd primes only)");
    if (p < 3 || !is_prime(p))
        fail(errc::invalid_argument,
             "PrimePowerModulus: p must be an odd prime >= 3, got " + p.get_str());
    if (k < 1)
        fail(errc::invalid_argument, "PrimePowerModulus: k must be >= 1");
    mpz_pow_ui(modulus.get_mpz_t(), p.get_mpz_t(), k);
}

mpz_class gcd(const mpz_class& a, const mpz_class& b) {
    if (a == 0 && b == 0)
        fail(errc::invalid_argument, "gcd(0, 0) is undefined here");
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

mpz_class powmod(const mpz_class& base, const mpz_class& exp, const mpz_class& m) {
    if (m < 2)
        fail(errc::invalid_argument, "powmod: modulus must be >= 2");
    if (exp < 0)
        fail(errc::invalid_argument, "powmod: negative exponent");
    mpz_class r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
    return r;
}

std::optional<unsigned> valuation_capped(const mpz_class& x,
                                         const PrimePowerModulus& pp,
                                         unsigned cap) {
    if (cap >= pp.k)
        fail(errc::invalid_argument,
             "valuation_capped: cap must be < k (a residue mod p^k cannot certify "
             "valuations >= k)");
    if (x < 0 || x >= pp.modulus)
        fail(errc::invalid_argument, "valuation_capped: x must lie in [0, p^k)");
    if (x == 0) return std::nullopt;
    return valuation_exact(x, pp.p);
}

unsigned valuation_exact(const mpz_class& x, const mpz_class& p) {
    if (x == 0)
        fail(errc::invalid_argument, "valuation_exact: x must be nonzero");
    mpz_class rest;
    return static_cast<unsigned>(
        mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

std::vector<std::pair<mpz_class, unsigned>> factorize(const mpz_class& m) {
    if (m < 1)
        fail(errc::invalid_argument, "factorize: m must be >= 1");
    if (m > kFactorBound)
        fail(errc::factor_budget_exceeded,
             "factorize: " + m.get_str() + " exceeds the trial-division bound 1e12");
    std::vector<std::pair<mpz_class, unsigned>> out;
    std::uint64_t rest = m.get_ui();
    for (std::uint64_t d = 2; d * d <= rest; d += (d == 2 ? 1 : 2)) {
        if (rest % d == 0) {
            unsigned e = 0;
            while (rest % d == 0) { rest /= d; ++e; }
            out.emplace_back(mpz_class(static_cast<unsigned long>(d)), e);
        }
    }
    if (rest > 1) out.emplace_back(mpz_class(static_cast<unsigned long>(rest)), 1u);
    return out;
}

bool is_prime(const mpz_class& p) {
    if (p < 2) return false;
    if (p > kFactorBound)
        fail(errc::factor_budget_exceeded,
             "is_prime: " + p.get_str() + " exceeds the trial-division bound 1e12");
    std::uint64_t v = p.get_ui();
    if (v % 2 == 0) return v == 2;
    for (std::uint64_t d = 3; d * d <= v; d += 2)
        if (v % d == 0) return false;
    return true;
}

mpz_class euler_phi(const mpz_class& m) {
    mpz_class phi = 1;
    for (const auto& [q, e] : factorize(m)) {
        mpz_class qe;
        mpz_pow_ui(qe.get_mpz_t(), q.get_mpz_t(), e - 1);
        phi *= qe * (q - 1);
    }
    return phi;
}

int moebius(const mpz_class& m) {
    auto fac = factorize(m);
    for (const auto& [q, e] : fac)
        if (e > 1) return 0;
    return fac.size() % 2 == 0 ? 1 : -1;
}

std::vector<mpz_class> divisors(const mpz_class& m) {
    std::vector<mpz_class> out{1};
    for (const auto& [q, e] : factorize(m)) {
        std::size_t old = out.size();
        mpz_class qpow = 1;
        for (unsigned i = 1; i <= e; ++i) {
            qpow *= q;
            for (std::size_t j = 0; j < old; ++j) out.push_back(out[j] * qpow);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int legendre_symbol(const mpz_class& a, const mpz_class& p) {
    if (p < 3 || p % 2 == 0)
        fail(errc::invalid_argument, "legendre_symbol: p must be an odd prime");
    mpz_class r = powmod(a, (p - 1) / 2, p);
    if (r == 0) return 0;
    if (r == 1) return 1;
    if (r == p - 1) return -1;
    fail(errc::invalid_argument,
         "legendre_symbol: p = " + p.get_str() + " is not prime");
}

namespace {

// Tonelli-Shanks for odd prime p with (a | p) = 1, a != 0. Deterministic: the
// witness nonresidue is the smallest one, and the returned root is an arbitrary
// one of the pair (the caller normalizes).
mpz_class tonelli_shanks(const mpz_class& a, const mpz_class& p) {
    // p - 1 = q * 2^s with q odd.
    mpz_class q = p - 1;
    unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
    q >>= s;

    if (s == 1)  // p = 3 (mod 4): direct exponentiation
        return powmod(a, (p + 1) / 4, p);

    mpz_class z = powmod(smallest_nonresidue(p), q, p);
    mpz_class c = z;
    mpz_class r = powmod(a, (q + 1) / 2, p);
    mpz_class t = powmod(a, q, p);
    unsigned long m = s;
    while (t != 1) {
        mpz_class t2 = t;
        unsigned long i = 0;
        while (t2 != 1) {
            t2 = t2 * t2 % p;
            ++i;
            if (i == m)
                fail(errc::internal, "tonelli_shanks: input was not a residue");
        }
        mpz_class b = c;
        for (unsigned long j = 0; j + i + 1 < m; ++j) b = b * b % p;
        r = r * b % p;
        c = b * b % p;
        t = t * c % p;
        m = i;
    }
    return r;
}

}  // namespace

mpz_class smallest_nonresidue(const mpz_class& p) {
    for (mpz_class d = 2; d < p; ++d)
        if (legendre_symbol(d, p) == -1) return d;
    fail(errc::invalid_argument,
         "smallest_nonresidue: no nonresidue mod " + p.get_str() + " (p prime?)");
}

mpz_class sqrt_mod_p(const mpz_class& a, const mpz_class& p) {
    if (p < 3 || !is_prime(p))
        fail(errc::invalid_argument, "sqrt_mod_p: p must be an odd prime");
    mpz_class aa = ((a % p) + p) % p;
    if (aa == 0) return 0;
    if (legendre_symbol(aa, p) != 1)
        fail(errc::invalid_argument,
             "sqrt_mod_p: " + aa.get_str() + " is not a square mod " + p.get_str());
    if (p <= 10'000) {
        for (mpz_class r = 1; r <= p / 2; ++r)
            if (r * r % p == aa) return r;
        fail(errc::internal, "sqrt_mod_p: exhaustive search found no root");
    }
    mpz_class r = tonelli_shanks(aa, p);
    mpz_class other = p - r;
    return r < other ? r : other;
}

}  // namespace chebmod
