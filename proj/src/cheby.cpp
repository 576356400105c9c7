#include "cheby.hpp"

namespace chebmod {

namespace {

// Nonnegative remainder (mpz_class's % follows the dividend's sign).
mpz_class mod(const mpz_class& v, const mpz_class& m) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    return r;
}

void check_eval_args(const mpz_class& n, const mpz_class& m, const char* who) {
    if (n < 0) fail(errc::invalid_argument, std::string(who) + ": degree must be >= 0");
    if (m < 2) fail(errc::invalid_argument, std::string(who) + ": modulus must be >= 2");
}

}  // namespace

mpz_class cheb_T(const mpz_class& n, const mpz_class& x, const mpz_class& m) {
    check_eval_args(n, m, "cheb_T");
    if (n == 0) return mod(1, m);
    mpz_class xr = mod(x, m);
    // Bits of n, most significant first; state starts at j = 0 as (T_0, T_1).
    ChebPair s{mod(1, m), xr};
    for (long i = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2)) - 1; i >= 0; --i) {
        if (mpz_tstbit(n.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
            // j -> 2j+1: (T_{2j+1}, T_{2j+2})
            mpz_class odd = mod(2 * s.t_j * s.t_j1 - xr, m);
            s.t_j1 = mod(2 * s.t_j1 * s.t_j1 - 1, m);
            s.t_j = odd;
        } else {
            // j -> 2j: (T_{2j}, T_{2j+1})
            mpz_class odd = mod(2 * s.t_j * s.t_j1 - xr, m);
            s.t_j = mod(2 * s.t_j * s.t_j - 1, m);
            s.t_j1 = odd;
        }
    }
    return s.t_j;
}

mpz_class cheb_U(const mpz_class& d, const mpz_class& x, const mpz_class& m) {
    check_eval_args(d, m, "cheb_U");
    mpz_class xr = mod(x, m);
    mpz_class j_target = d + 1;
    // State (t, u) = (T_j, U_{j-1}), starting at j = 1 (the top bit of d+1).
    mpz_class t = xr, u = mod(1, m);
    mpz_class x2m1 = mod(xr * xr - 1, m);
    for (long i = static_cast<long>(mpz_sizeinbase(j_target.get_mpz_t(), 2)) - 2; i >= 0;
         --i) {
        mpz_class nu = mod(2 * t * u, m);  // U_{2j-1}
        t = mod(2 * t * t - 1, m);         // T_{2j}
        u = nu;
        if (mpz_tstbit(j_target.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
            mpz_class nt = mod(xr * t + x2m1 * u, m);  // T_{j+1}
            nu = mod(xr * u + t, m);                   // U_j
            t = nt;
            u = nu;
        }
    }
    return u;
}

mpz_class cheb_derivative(const mpz_class& n, const mpz_class& x, const mpz_class& m) {
    check_eval_args(n, m, "cheb_derivative");
    if (n == 0) return 0;
    return mod(mod(n, m) * cheb_U(n - 1, x, m), m);
}

mpz_class cheb_T_naive(unsigned long n, const mpz_class& x, const mpz_class& m) {
    check_eval_args(mpz_class(n), m, "cheb_T_naive");
    mpz_class xr = mod(x, m);
    mpz_class prev = mod(1, m);  // T_0
    if (n == 0) return prev;
    mpz_class cur = xr;  // T_1
    for (unsigned long j = 1; j < n; ++j) {
        mpz_class next = mod(2 * xr * cur - prev, m);
        prev = cur;
        cur = next;
    }
    return cur;
}

mpz_class cheb_U_naive(unsigned long d, const mpz_class& x, const mpz_class& m) {
    check_eval_args(mpz_class(d), m, "cheb_U_naive");
    mpz_class xr = mod(x, m);
    mpz_class prev = mod(1, m);  // U_0
    if (d == 0) return prev;
    mpz_class cur = mod(2 * xr, m);  // U_1
    for (unsigned long j = 1; j < d; ++j) {
        mpz_class next = mod(2 * xr * cur - prev, m);
        prev = cur;
        cur = next;
    }
    return cur;
}

std::uint64_t cheb_T_u64(const mpz_class& n, std::uint64_t x, std::uint64_t m) {
    if (m < 2 || m >= (1ULL << 32))
        fail(errc::invalid_argument, "cheb_T_u64: modulus must satisfy 2 <= m < 2^32");
    if (n < 0) fail(errc::invalid_argument, "cheb_T_u64: degree must be >= 0");
    std::uint64_t xr = x % m;
    if (n == 0) return 1 % m;
    std::uint64_t a = 1 % m, b = xr;  // (T_j, T_{j+1}), j = 0
    for (long i = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2)) - 1; i >= 0; --i) {
        std::uint64_t ab = a * b % m;
        std::uint64_t odd = (2 * ab + m - xr) % m;  // T_{2j+1}
        if (mpz_tstbit(n.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
            std::uint64_t bb = b * b % m;
            b = (2 * bb + m - 1) % m;  // T_{2j+2}
            a = odd;
        } else {
            std::uint64_t aa = a * a % m;
            a = (2 * aa + m - 1) % m;  // T_{2j}
            b = odd;
        }
    }
    return a;
}

unsigned qeps_valuation_probe(const mpz_class& n, int eps, const mpz_class& u,
                              const mpz_class& p, unsigned guard) {
    if (eps != 1 && eps != -1)
        fail(errc::invalid_argument, "qeps_valuation_probe: eps must be +1 or -1");
    if (p < 5 || !is_prime(p))
        fail(errc::invalid_argument,
             "qeps_valuation_probe: p must be a prime >= 5 (the fiber valuation is not "
             "constant for p = 3)");
    if (n < 2)
        fail(errc::invalid_argument, "qeps_valuation_probe: degree must be >= 2");
    if (eps == -1 && mpz_even_p(n.get_mpz_t()))
        fail(errc::invalid_argument,
             "qeps_valuation_probe: -1 is fixed only for odd degrees");
    if (gcd(u, p) != 1)
        fail(errc::invalid_argument, "qeps_valuation_probe: u must be a unit mod p");

    mpz_class n2m1 = n * n - 1;
    if (mpz_divisible_p(n2m1.get_mpz_t(), p.get_mpz_t()) == 0)
        fail(errc::invalid_argument,
             "qeps_valuation_probe: boundary point is nondegenerate (p does not divide "
             "n^2 - 1)");
    unsigned s = valuation_exact(n2m1, p);

    PrimePowerModulus work(p, s + guard + 2);
    mpz_class x = eps + p * u;
    mpz_mod(x.get_mpz_t(), x.get_mpz_t(), work.modulus.get_mpz_t());
    mpz_class delta = cheb_T(n, x, work.modulus) - x;
    mpz_mod(delta.get_mpz_t(), delta.get_mpz_t(), work.modulus.get_mpz_t());

    std::optional<unsigned> v = valuation_capped(delta, work, work.k - 1);
    if (!v)
        fail(errc::insufficient_precision,
             "qeps_valuation_probe: T_n(x) - x vanished at working modulus p^" +
                 std::to_string(work.k) + "; raise guard");
    if (*v < 1)
        fail(errc::internal,
             "qeps_valuation_probe: valuation below that of x - eps itself");
    return *v - 1;
}

}  // namespace chebmod
