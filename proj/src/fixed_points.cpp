#include "fixed_points.hpp"

#include "cheby.hpp"
#include "oracle.hpp"

namespace chebmod {

const char* count_method_name(CountMethod m) noexcept {
    switch (m) {
        case CountMethod::closed_form: return "closed-form";
        case CountMethod::first_lift: return "first-lift";
        case CountMethod::oracle: return "oracle";
    }
    return "unknown";
}

const char* lift_kind_name(LiftKind kind) noexcept {
    switch (kind) {
        case LiftKind::nondegenerate: return "nondegenerate";
        case LiftKind::degenerate_boundary: return "degenerate-boundary";
        case LiftKind::degenerate_nonboundary: return "degenerate-nonboundary";
    }
    return "unknown";
}

namespace {

void check_degree(const mpz_class& n, const char* who) {
    if (n < 0) fail(errc::invalid_argument, std::string(who) + ": degree must be >= 0");
}

PrimePowerModulus base_modulus(const mpz_class& p) {
    return PrimePowerModulus(p, 1);  // reuses the odd-prime validation
}

// gcd(m + shift, M) given m mod M0 for some multiple M0 of M.
mpz_class gcd_shifted(const mpz_class& m_mod, long shift, const mpz_class& M) {
    mpz_class r = (m_mod + shift) % M;
    if (r < 0) r += M;
    if (r == 0) return M;
    return gcd(r, M);
}

// Everything the level formulas need, derived from a reduced degree.
struct FormulaParts {
    mpz_class G1, G2, G3, G4, delta;
    mpz_class N1, d;
    DegenerateBranch branch = DegenerateBranch::none;
};

FormulaParts formula_parts(const PrimePowerModulus& pp, const ReducedDegree& rd) {
    FormulaParts f;
    const mpz_class pm1 = pp.p - 1, pp1 = pp.p + 1;
    f.G1 = gcd_shifted(rd.mod_minus, -1, pm1);
    f.G2 = gcd_shifted(rd.mod_minus, +1, pm1);
    f.G3 = gcd_shifted(rd.mod_plus, -1, pp1);
    f.G4 = gcd_shifted(rd.mod_plus, +1, pp1);
    f.delta = rd.odd ? 2 : 1;

    mpz_class twice_n1 = f.G1 + f.G2 + f.G3 + f.G4 - 2 * f.delta;
    if (mpz_odd_p(twice_n1.get_mpz_t()))
        fail(errc::internal, "four-gcd sum is odd; N_1 would not be an integer");
    f.N1 = twice_n1 / 2;

    mpz_class res_p = rd.mod_pk % pp.p;
    if (!rd.divisible_by_p && res_p == 1) {
        f.branch = DegenerateBranch::minus;
        f.d = (f.G1 + f.G3) / 2;
    } else if (!rd.divisible_by_p && res_p == pp.p - 1) {
        f.branch = DegenerateBranch::plus;
        f.d = (f.G2 + f.G4) / 2;
    } else {
        f.branch = DegenerateBranch::none;
        f.d = 0;
    }
    return f;
}

// min(k-1, v_p(m^2 - 1)) from the residue of m mod p^k. The residue cannot
// certify valuations >= k, but the formula never needs more than k-1.
unsigned s_min_from_reduced(const PrimePowerModulus& pp, const ReducedDegree& rd) {
    mpz_class w = (rd.mod_pk * rd.mod_pk - 1) % pp.modulus;
    if (w < 0) w += pp.modulus;
    if (pp.k == 1) return 0;  // min(0, s) regardless of s
    return capped_min(pp.k - 1, valuation_capped(w, pp, pp.k - 1));
}

mpz_class pow_p(const mpz_class& p, unsigned e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), e);
    return r;
}

}  // namespace

ReducedDegree ReducedDegree::of(const mpz_class& m, const PrimePowerModulus& pp) {
    check_degree(m, "ReducedDegree::of");
    ReducedDegree rd;
    rd.odd = mpz_odd_p(m.get_mpz_t()) != 0;
    mpz_class pk1 = pow_p(pp.p, pp.k - 1);
    rd.mod_minus = m % ((pp.p - 1) * pk1);
    rd.mod_plus = m % ((pp.p + 1) * pk1);
    rd.mod_pk = m % pp.modulus;
    rd.divisible_by_p = mpz_divisible_p(m.get_mpz_t(), pp.p.get_mpz_t()) != 0;
    return rd;
}

ReducedDegree ReducedDegree::of_power(const mpz_class& base, const mpz_class& exp,
                                      const PrimePowerModulus& pp) {
    check_degree(base, "ReducedDegree::of_power");
    if (exp < 0)
        fail(errc::invalid_argument, "ReducedDegree::of_power: exponent must be >= 0");
    ReducedDegree rd;
    rd.odd = exp == 0 || mpz_odd_p(base.get_mpz_t()) != 0;
    mpz_class pk1 = pow_p(pp.p, pp.k - 1);
    rd.mod_minus = powmod(base, exp, (pp.p - 1) * pk1);
    rd.mod_plus = powmod(base, exp, (pp.p + 1) * pk1);
    rd.mod_pk = powmod(base, exp, pp.modulus);
    rd.divisible_by_p =
        exp > 0 && mpz_divisible_p(base.get_mpz_t(), pp.p.get_mpz_t()) != 0;
    return rd;
}

mpz_class n1_count(const mpz_class& p, const mpz_class& n) {
    check_degree(n, "n1_count");
    PrimePowerModulus pp = base_modulus(p);
    return formula_parts(pp, ReducedDegree::of(n, pp)).N1;
}

DegenerateCount degenerate_count(const mpz_class& p, const mpz_class& n) {
    check_degree(n, "degenerate_count");
    PrimePowerModulus pp = base_modulus(p);
    FormulaParts f = formula_parts(pp, ReducedDegree::of(n, pp));
    return DegenerateCount{f.d, f.branch};
}

mpz_class n2_first_lift(const mpz_class& p, const mpz_class& n) {
    check_degree(n, "n2_first_lift");
    PrimePowerModulus pp2(p, 2);
    return nk_of_reduced_degree(pp2, ReducedDegree::of(n, pp2));
}

mpz_class nk_of_reduced_degree(const PrimePowerModulus& pp, const ReducedDegree& rd) {
    FormulaParts f = formula_parts(pp, rd);
    if (pp.k == 1) return f.N1;
    if (pp.p == 3 && pp.k >= 3)
        fail(errc::unsupported_p3_level,
             "no closed form for p = 3 at level k >= 3; use the enumeration oracle");

    unsigned s_min = s_min_from_reduced(pp, rd);
    mpz_class compact = pp.k == 2 ? f.N1 + f.d * (pp.p - 1)
                                  : f.N1 + f.d * (pow_p(pp.p, s_min) - 1);

    // Independent level-k gcd form: same four gcds taken against (p -+ 1)p^(k-1).
    mpz_class pk1 = pow_p(pp.p, pp.k - 1);
    mpz_class M1 = (pp.p - 1) * pk1, M2 = (pp.p + 1) * pk1;
    mpz_class sum = gcd_shifted(rd.mod_minus, -1, M1) + gcd_shifted(rd.mod_minus, +1, M1) +
                    gcd_shifted(rd.mod_plus, -1, M2) + gcd_shifted(rd.mod_plus, +1, M2);
    mpz_class gcd_form = sum / 2 - f.delta;
    if (mpz_odd_p(sum.get_mpz_t()) || gcd_form != compact)
        fail(errc::internal, "level-" + std::to_string(pp.k) +
                                 " gcd form disagrees with the compact count (" +
                                 gcd_form.get_str() + " vs " + compact.get_str() + ")");
    return compact;
}

mpz_class nk_count(const PrimePowerModulus& pp, const mpz_class& n) {
    check_degree(n, "nk_count");
    return nk_of_reduced_degree(pp, ReducedDegree::of(n, pp));
}

std::vector<LiftClass> classify_fixed_residues(const mpz_class& p, const mpz_class& n,
                                               std::uint64_t budget) {
    check_degree(n, "classify_fixed_residues");
    PrimePowerModulus pp = base_modulus(p);
    // Enumerates all of F_p, so the oracle budget applies.
    std::vector<std::uint64_t> fixed = enumerate_fixed(pp, n, budget);

    std::vector<LiftClass> out;
    mpz_class degenerate_total = 0;
    for (std::uint64_t a : fixed) {
        LiftClass cls;
        cls.a0 = static_cast<unsigned long>(a);
        cls.multiplier = cheb_derivative(n, cls.a0, p);
        if (cls.multiplier == 1 % p) {
            cls.kind = (cls.a0 == 1 || cls.a0 == p - 1) ? LiftKind::degenerate_boundary
                                                        : LiftKind::degenerate_nonboundary;
            ++degenerate_total;
        } else {
            cls.kind = LiftKind::nondegenerate;
        }
        out.push_back(cls);
    }

    FormulaParts f = formula_parts(pp, ReducedDegree::of(n, pp));
    if (degenerate_total != f.d)
        fail(errc::internal, "degenerate residue census (" + degenerate_total.get_str() +
                                 ") disagrees with d = " + f.d.get_str());
    return out;
}

mpz_class lifts_above(const PrimePowerModulus& pp, const mpz_class& n,
                      const mpz_class& a0) {
    check_degree(n, "lifts_above");
    if (pp.p < 5)
        fail(errc::invalid_argument,
             "lifts_above: requires p >= 5 (no uniform local form at p = 3)");
    if (a0 < 0 || a0 >= pp.p)
        fail(errc::invalid_argument, "lifts_above: a0 must lie in [0, p)");
    if (cheb_T(n, a0, pp.p) != a0)
        fail(errc::invalid_argument,
             "lifts_above: a0 = " + a0.get_str() + " is not fixed by T_n mod p");

    if (cheb_derivative(n, a0, pp.p) != 1 % pp.p) return 1;  // nondegenerate: Hensel
    if (n == 1) return pow_p(pp.p, pp.k - 1);                // identity map
    unsigned s = valuation_exact(n * n - 1, pp.p);
    return pow_p(pp.p, std::min(pp.k - 1, s));
}

std::vector<mpz_class> increments(const mpz_class& p, const mpz_class& n,
                                  unsigned k_max) {
    check_degree(n, "increments");
    if (p < 5)
        fail(errc::invalid_argument, "increments: requires p >= 5");
    if (k_max < 1)
        fail(errc::invalid_argument, "increments: k_max must be >= 1");
    PrimePowerModulus pp = base_modulus(p);
    FormulaParts f = formula_parts(pp, ReducedDegree::of(n, pp));
    bool s_infinite = (n == 1);
    unsigned s = (s_infinite || f.d == 0) ? 0 : valuation_exact(n * n - 1, p);

    std::vector<mpz_class> out;
    for (unsigned k = 1; k + 1 <= k_max; ++k) {
        if (f.d != 0 && (s_infinite || k <= s))
            out.push_back(f.d * (p - 1) * pow_p(p, k - 1));
        else
            out.push_back(0);
    }
    return out;
}

FixedPointReport fixed_point_report(const PrimePowerModulus& pp, const mpz_class& n,
                                    bool use_oracle_fallback, std::uint64_t budget) {
    check_degree(n, "fixed_point_report");
    ReducedDegree rd = ReducedDegree::of(n, pp);
    FormulaParts f = formula_parts(pp, rd);

    FixedPointReport rep;
    rep.p = pp.p;
    rep.n = n;
    rep.G1 = f.G1;
    rep.G2 = f.G2;
    rep.G3 = f.G3;
    rep.G4 = f.G4;
    rep.delta = f.delta;
    rep.N1 = f.N1;
    rep.d = f.d;
    rep.branch = f.branch;
    if (n != 1) rep.s = valuation_exact(n * n - 1, pp.p);

    for (unsigned lvl = 1; lvl <= pp.k; ++lvl) {
        PrimePowerModulus level_pp(pp.p, lvl);
        LevelCount lc;
        lc.k = lvl;
        if (pp.p == 3 && lvl >= 3) {
            if (!use_oracle_fallback)
                fail(errc::unsupported_p3_level,
                     "no closed form for p = 3 at level k >= 3; rerun with the "
                     "enumeration oracle enabled");
            lc.count = static_cast<unsigned long>(
                enumerate_fixed(level_pp, n, budget).size());
            lc.method = CountMethod::oracle;
        } else {
            lc.count = nk_of_reduced_degree(level_pp, ReducedDegree::of(n, level_pp));
            lc.method = (pp.p == 3 && lvl == 2) ? CountMethod::first_lift
                                                : CountMethod::closed_form;
        }
        rep.levels.push_back(lc);
    }
    return rep;
}

}  // namespace chebmod
