#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <vector>

#include "arith.hpp"
#include "fixed_points.hpp"
#include "source_orders.hpp"

namespace chebmod {

// Exact-period spectra of T_n: bucket r -> number of points of exact period r.
// A residue a0 is periodic iff gcd(n, e) = 1 for its source order e, and its
// period is then cord_e(n); lifting multiplies the picture by the cord chain
// c_q = cord(n, e * p^q).

enum class SpectrumMethod { closed_form, mobius_oracle_hybrid, oracle };
const char* spectrum_method_name(SpectrumMethod m) noexcept;

struct PeriodSpectrum {
    std::map<std::uint64_t, mpz_class> buckets;  // zero buckets absent
    SpectrumMethod method = SpectrumMethod::closed_form;
};

// Spectrum on Z/pZ, summed source order by source order:
// P_1 gets 1 + [n odd] boundary points, and each admissible e >= 3 dividing
// p - 1 or p + 1 (gcd(n, e) = 1) puts its phi(e)/2 residues into bucket
// cord_e(n).
PeriodSpectrum spectrum_fp_direct(const mpz_class& p, const mpz_class& n);

// Same spectrum by Moebius inversion over fixed-point counts of iterates:
// P_r = sum_{j | r} mu(r/j) N_1(n^j), with N_1(n^j) from reduced degrees.
// Negative buckets would mean the inversion input was inconsistent and raise
// errc::internal.
PeriodSpectrum spectrum_fp_mobius(const mpz_class& p, const mpz_class& n);

// Spectrum on Z/p^kZ. Closed form wherever the count formulas reach
// (candidate periods are divisors of the cords cord(n, e * p^(k-1))); the
// N_k(n^j) terms come from the oracle for p = 3 with k >= 3, and the bucket
// set comes from the oracle when p | n (method = mobius-oracle-hybrid in
// both cases). n = p is the fully-fixed special case {1: p}.
PeriodSpectrum spectrum_pk(const PrimePowerModulus& pp, const mpz_class& n,
                           std::uint64_t oracle_budget = 0);

// First-lift fate of one periodic residue a0 (p must not divide n):
// with t = cord_e(n) and kappa = cord_{e*p}(n), either kappa = t and all p
// lifts keep period t ("all retain"), or exactly one lift keeps period t and
// the other p - 1 become ghosts of period kappa, forming t*(p-1)/kappa orbits.
struct GhostReport {
    mpz_class a0;
    mpz_class e;
    mpz_class t, kappa;
    bool all_retain = false;
    mpz_class ghost_orbit_count;  // 0 when all_retain
};
GhostReport ghost_classify(const mpz_class& p, const mpz_class& n, const mpz_class& a0);

// Level-2 spectrum assembled orbit by orbit from ghost_classify data over all
// source orders; must agree with spectrum_pk at k = 2. Requires p ∤ n.
PeriodSpectrum spectrum_p2_orbitwise(const mpz_class& p, const mpz_class& n);

// Per-source-order rows behind spectrum_p2_orbitwise, for reporting.
struct OrbitwiseRow {
    mpz_class e;
    mpz_class sources;  // number of residues with this source order (phi(e)/2 off boundary)
    mpz_class t, kappa;
    bool all_retain = false;
};
std::vector<OrbitwiseRow> orbitwise_rows(const mpz_class& p, const mpz_class& n);

// Partition of the p^(k-1) lifts of a periodic a0 by exact period (p >= 5,
// p ∤ n). The cord chain c_0..c_(k-1) takes distinct values tau_1 < .. < tau_u
// with terminal indices m_i = max{q : c_q = tau_i}; exactly
// p^(m_i) - p^(m_(i-1)) lifts have period tau_i (first layer: p^(m_1)).
struct TowerReport {
    CordTower tower;
    std::vector<mpz_class> taus;
    std::vector<unsigned> ms;
    std::vector<mpz_class> layer_counts;
};
TowerReport tower_partition(const PrimePowerModulus& pp, const mpz_class& n,
                            const mpz_class& a0);

// Number of level-k cycles of each length above one level-1 cycle of length
// ell (= c_0 of the tower): ell * (p^(m_i) - p^(m_(i-1))) / tau_i cycles of
// length tau_i. Non-integral division means the tower data is corrupt and
// raises errc::internal.
std::map<std::uint64_t, mpz_class> cycles_above(const PrimePowerModulus& pp,
                                                const mpz_class& n,
                                                const mpz_class& ell,
                                                const CordTower& tower);

// Least K with P_r^(k) constant for all k >= K (p >= 5, n >= 2):
// K(r) = max over j | r of v_p(n^(2j) - 1) + 1. Valuations are taken from
// residues at a working level that is raised until none of them is capped.
// When p | n every n^(2j) - 1 is a unit, so K = 1.
unsigned stabilization_level(const mpz_class& p, const mpz_class& n, std::uint64_t r);

}  // namespace chebmod
