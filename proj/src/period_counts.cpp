#include "period_counts.hpp"

#include <algorithm>
#include <set>

#include "oracle.hpp"

namespace chebmod {

const char* spectrum_method_name(SpectrumMethod m) noexcept {
    switch (m) {
        case SpectrumMethod::closed_form: return "closed-form";
        case SpectrumMethod::mobius_oracle_hybrid: return "mobius-oracle-hybrid";
        case SpectrumMethod::oracle: return "oracle";
    }
    return "unknown";
}

namespace {

void check_prime_degree(const mpz_class& p, const mpz_class& n, const char* who) {
    PrimePowerModulus check(p, 1);  // odd-prime validation
    (void)check;
    if (n < 0) fail(errc::invalid_argument, std::string(who) + ": degree must be >= 0");
}

std::uint64_t to_u64(const mpz_class& v, const char* what) {
    if (!v.fits_ulong_p())
        fail(errc::internal, std::string(what) + " does not fit in 64 bits");
    return v.get_ui();
}

// Admissible source orders at p for degree n: e | p-1 or e | p+1 whose
// residues are periodic under T_n. e = 1 is the a0 = 1 boundary, e = 2 the
// a0 = -1 boundary (periodic only for odd n); e >= 3 needs gcd(n, e) = 1.
// The e >= 3 parts of the two sides are disjoint since gcd(p-1, p+1) = 2.
struct AdmissibleOrder {
    mpz_class e;
    mpz_class sources;  // residues mod p with this source order
};

std::vector<AdmissibleOrder> admissible_orders(const mpz_class& p, const mpz_class& n) {
    std::vector<AdmissibleOrder> out;
    out.push_back({1, 1});
    if (mpz_odd_p(n.get_mpz_t())) out.push_back({2, 1});
    for (const mpz_class& side : {mpz_class(p - 1), mpz_class(p + 1)})
        for (const mpz_class& e : divisors(side)) {
            if (e < 3 || gcd(n, e) != 1) continue;
            mpz_class phi = euler_phi(e);
            if (mpz_odd_p(phi.get_mpz_t()))
                fail(errc::internal, "phi(e) odd for e >= 3");
            out.push_back({e, phi / 2});
        }
    return out;
}

// Common clean-up: drop empty buckets, check positivity, r | P_r and the
// total against the space size.
void finalize_spectrum(PeriodSpectrum& spec, const mpz_class& space) {
    mpz_class total = 0;
    for (auto it = spec.buckets.begin(); it != spec.buckets.end();) {
        if (it->second < 0)
            fail(errc::internal, "negative period bucket at r = " +
                                     std::to_string(it->first) +
                                     " (Moebius input inconsistent)");
        if (it->second == 0) {
            it = spec.buckets.erase(it);
            continue;
        }
        if (it->second % static_cast<unsigned long>(it->first) != 0)
            fail(errc::internal,
                 "bucket at r = " + std::to_string(it->first) +
                     " is not a multiple of r (cannot split into cycles)");
        total += it->second;
        ++it;
    }
    if (total > space)
        fail(errc::internal, "period buckets exceed the size of the space");
}

// P_r = sum_{j | r} mu(r/j) * count(j), for counts of Fix(T_(n^j)).
template <typename CountFn>
mpz_class mobius_bucket(std::uint64_t r, CountFn&& count_of_iterate) {
    mpz_class acc = 0;
    for (const mpz_class& j : divisors(mpz_class(static_cast<unsigned long>(r)))) {
        mpz_class cof = mpz_class(static_cast<unsigned long>(r)) / j;
        int mu = moebius(cof);
        if (mu == 0) continue;
        acc += mu * count_of_iterate(j);
    }
    return acc;
}

// Distinct tower values with terminal indices and layer sizes.
struct TowerShape {
    std::vector<mpz_class> taus;
    std::vector<unsigned> ms;
    std::vector<mpz_class> layers;
};

TowerShape shape_of(const CordTower& tower, const mpz_class& p) {
    TowerShape shape;
    for (unsigned q = 0; q < tower.c.size(); ++q) {
        if (!shape.taus.empty() && tower.c[q] == shape.taus.back()) {
            shape.ms.back() = q;
        } else {
            if (!shape.taus.empty() && tower.c[q] < shape.taus.back())
                fail(errc::internal, "cord tower is not nondecreasing");
            shape.taus.push_back(tower.c[q]);
            shape.ms.push_back(q);
        }
    }
    mpz_class prev = 0;
    for (unsigned i = 0; i < shape.taus.size(); ++i) {
        mpz_class pm;
        mpz_pow_ui(pm.get_mpz_t(), p.get_mpz_t(), shape.ms[i]);
        shape.layers.push_back(pm - prev);
        prev = pm;
    }
    return shape;
}

}  // namespace

PeriodSpectrum spectrum_fp_direct(const mpz_class& p, const mpz_class& n) {
    check_prime_degree(p, n, "spectrum_fp_direct");
    PeriodSpectrum spec;
    spec.method = SpectrumMethod::closed_form;
    for (const AdmissibleOrder& ord : admissible_orders(p, n)) {
        std::uint64_t r = to_u64(cord(n, ord.e), "cord");
        spec.buckets[r] += ord.sources;
    }
    finalize_spectrum(spec, p);
    return spec;
}

PeriodSpectrum spectrum_fp_mobius(const mpz_class& p, const mpz_class& n) {
    check_prime_degree(p, n, "spectrum_fp_mobius");
    PrimePowerModulus pp(p, 1);

    std::set<std::uint64_t> candidates;
    for (const AdmissibleOrder& ord : admissible_orders(p, n))
        for (const mpz_class& d : divisors(cord(n, ord.e)))
            candidates.insert(to_u64(d, "cord divisor"));

    PeriodSpectrum spec;
    spec.method = SpectrumMethod::closed_form;
    for (std::uint64_t r : candidates)
        spec.buckets[r] = mobius_bucket(r, [&](const mpz_class& j) {
            return nk_of_reduced_degree(pp, ReducedDegree::of_power(n, j, pp));
        });
    finalize_spectrum(spec, p);
    return spec;
}

PeriodSpectrum spectrum_pk(const PrimePowerModulus& pp, const mpz_class& n,
                           std::uint64_t oracle_budget) {
    check_prime_degree(pp.p, n, "spectrum_pk");
    if (pp.k == 1) return spectrum_fp_direct(pp.p, n);

    if (n == pp.p) {
        // T_p mod p^k is a bijection whose periodic points are exactly the p
        // fixed residues lifted nowhere: every level's spectrum is {1: p}.
        PeriodSpectrum spec;
        spec.method = SpectrumMethod::closed_form;
        spec.buckets[1] = pp.p;
        return spec;
    }

    const bool oracle_counts = (pp.p == 3 && pp.k >= 3);
    const bool oracle_buckets =
        oracle_counts || mpz_divisible_p(n.get_mpz_t(), pp.p.get_mpz_t());

    std::set<std::uint64_t> candidates;
    if (oracle_buckets) {
        FunctionalGraph g = build_graph(pp, n, oracle_budget);
        for (const auto& [r, cnt] : oracle_spectrum(g)) candidates.insert(r);
    } else {
        mpz_class pk1;
        mpz_pow_ui(pk1.get_mpz_t(), pp.p.get_mpz_t(), pp.k - 1);
        for (const AdmissibleOrder& ord : admissible_orders(pp.p, n))
            for (const mpz_class& d : divisors(cord(n, ord.e * pk1)))
                candidates.insert(to_u64(d, "cord divisor"));
    }

    PeriodSpectrum spec;
    spec.method = oracle_buckets ? SpectrumMethod::mobius_oracle_hybrid
                                 : SpectrumMethod::closed_form;
    for (std::uint64_t r : candidates)
        spec.buckets[r] = mobius_bucket(r, [&](const mpz_class& j) -> mpz_class {
            if (oracle_counts) {
                mpz_class power;
                mpz_pow_ui(power.get_mpz_t(), n.get_mpz_t(),
                           to_u64(j, "iterate exponent"));
                return static_cast<unsigned long>(
                    enumerate_fixed(pp, power, oracle_budget).size());
            }
            return nk_of_reduced_degree(pp, ReducedDegree::of_power(n, j, pp));
        });
    finalize_spectrum(spec, pp.modulus);
    return spec;
}

GhostReport ghost_classify(const mpz_class& p, const mpz_class& n, const mpz_class& a0) {
    check_prime_degree(p, n, "ghost_classify");
    if (n < 1) fail(errc::invalid_argument, "ghost_classify: degree must be >= 1");
    if (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t()))
        fail(errc::invalid_argument,
             "ghost_classify: requires p ∤ n (T_n is not invertible mod p otherwise)");

    SourceDescriptor src = source_of(a0, p);
    if (gcd(n, src.e) != 1)
        fail(errc::not_periodic, "ghost_classify: a0 = " + a0.get_str() +
                                     " is not periodic under T_n (gcd(n, e) != 1)");

    GhostReport rep;
    rep.a0 = a0;
    rep.e = src.e;
    rep.t = cord(n, src.e);
    rep.kappa = cord(n, src.e * p);
    if (rep.kappa % rep.t != 0)
        fail(errc::internal, "ghost_classify: t does not divide kappa");
    rep.all_retain = (rep.kappa == rep.t);
    if (!rep.all_retain) {
        mpz_class ghosts = rep.t * (p - 1);
        if (ghosts % rep.kappa != 0)
            fail(errc::internal,
                 "ghost_classify: ghost points do not split into whole orbits");
        rep.ghost_orbit_count = ghosts / rep.kappa;
    } else {
        rep.ghost_orbit_count = 0;
    }
    return rep;
}

std::vector<OrbitwiseRow> orbitwise_rows(const mpz_class& p, const mpz_class& n) {
    check_prime_degree(p, n, "spectrum_p2_orbitwise");
    if (n < 1 || mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t()))
        fail(errc::invalid_argument, "spectrum_p2_orbitwise: requires n >= 1 and p ∤ n");
    std::vector<OrbitwiseRow> rows;
    for (const AdmissibleOrder& ord : admissible_orders(p, n)) {
        OrbitwiseRow row;
        row.e = ord.e;
        row.sources = ord.sources;
        row.t = cord(n, ord.e);
        row.kappa = cord(n, ord.e * p);
        row.all_retain = (row.t == row.kappa);
        rows.push_back(row);
    }
    return rows;
}

PeriodSpectrum spectrum_p2_orbitwise(const mpz_class& p, const mpz_class& n) {
    PeriodSpectrum spec;
    spec.method = SpectrumMethod::closed_form;
    for (const OrbitwiseRow& row : orbitwise_rows(p, n)) {
        std::uint64_t t = to_u64(row.t, "t");
        if (row.all_retain) {
            spec.buckets[t] += row.sources * p;
        } else {
            // One lift per source point Hensel-retains period t; the other
            // p - 1 are ghosts of period kappa.
            spec.buckets[t] += row.sources;
            spec.buckets[to_u64(row.kappa, "kappa")] += row.sources * (p - 1);
        }
    }
    finalize_spectrum(spec, p * p);
    return spec;
}

TowerReport tower_partition(const PrimePowerModulus& pp, const mpz_class& n,
                            const mpz_class& a0) {
    if (pp.p < 5)
        fail(errc::invalid_argument, "tower_partition: requires p >= 5");
    if (n < 1) fail(errc::invalid_argument, "tower_partition: degree must be >= 1");
    if (mpz_divisible_p(n.get_mpz_t(), pp.p.get_mpz_t()))
        fail(errc::invalid_argument, "tower_partition: requires p ∤ n");

    SourceDescriptor src = source_of(a0, pp.p);
    if (gcd(n, src.e) != 1)
        fail(errc::not_periodic, "tower_partition: a0 = " + a0.get_str() +
                                     " is not periodic under T_n (gcd(n, e) != 1)");

    TowerReport rep;
    rep.tower = cord_tower(src, n, pp.k - 1);
    TowerShape shape = shape_of(rep.tower, pp.p);
    rep.taus = shape.taus;
    rep.ms = shape.ms;
    rep.layer_counts = shape.layers;

    mpz_class total = 0, expected;
    for (const mpz_class& layer : rep.layer_counts) total += layer;
    mpz_pow_ui(expected.get_mpz_t(), pp.p.get_mpz_t(), pp.k - 1);
    if (total != expected)
        fail(errc::internal, "tower_partition: layer counts do not sum to p^(k-1)");
    return rep;
}

std::map<std::uint64_t, mpz_class> cycles_above(const PrimePowerModulus& pp,
                                                const mpz_class& n,
                                                const mpz_class& ell,
                                                const CordTower& tower) {
    if (tower.c.empty())
        fail(errc::invalid_argument, "cycles_above: empty tower");
    if (ell != tower.c.front())
        fail(errc::invalid_argument,
             "cycles_above: ell must equal the base cord c_0 of the tower");
    mpz_class modulus = tower.e;
    for (const mpz_class& c_q : tower.c) {
        if (cord(n, modulus) != c_q)
            fail(errc::invalid_argument,
                 "cycles_above: tower does not match cord(n, e * p^q)");
        modulus *= pp.p;
    }
    TowerShape shape = shape_of(tower, pp.p);
    std::map<std::uint64_t, mpz_class> out;
    for (std::size_t i = 0; i < shape.taus.size(); ++i) {
        mpz_class points = ell * shape.layers[i];
        if (points % shape.taus[i] != 0)
            fail(errc::internal,
                 "cycles_above: points of period tau do not split into whole cycles");
        out[to_u64(shape.taus[i], "tau")] += points / shape.taus[i];
    }
    return out;
}

unsigned stabilization_level(const mpz_class& p, const mpz_class& n, std::uint64_t r) {
    if (p < 5 || !is_prime(p))
        fail(errc::invalid_argument, "stabilization_level: p must be a prime >= 5");
    if (n < 2)
        fail(errc::invalid_argument,
             "stabilization_level: requires n >= 2 (spectra of T_1 never stabilize)");
    if (r < 1) fail(errc::invalid_argument, "stabilization_level: r must be >= 1");

    // K(r) = 1 + max over j | r of v_p(n^(2j) - 1), read from residues at a
    // working level; raise the level until no valuation is capped.
    for (unsigned k_work = 4; k_work <= (1u << 16); k_work *= 2) {
        PrimePowerModulus work(p, k_work);
        unsigned max_v = 0;
        bool capped = false;
        for (const mpz_class& j : divisors(mpz_class(static_cast<unsigned long>(r)))) {
            mpz_class w = powmod(n, 2 * j, work.modulus);
            w = (w - 1 + work.modulus) % work.modulus;
            std::optional<unsigned> v = valuation_capped(w, work, k_work - 1);
            if (!v) {
                capped = true;
                break;
            }
            max_v = std::max(max_v, *v);
        }
        if (!capped) return max_v + 1;
    }
    fail(errc::insufficient_precision,
         "stabilization_level: valuation still capped at the maximum working level");
}

}  // namespace chebmod
