#include "verify.hpp"

#include <atomic>
#include <map>
#include <sstream>
#include <thread>

#include "fixed_points.hpp"
#include "oracle.hpp"
#include "period_counts.hpp"

namespace chebmod {

namespace {

struct Cell {
    std::uint64_t p, n;
    unsigned k;
};

struct CellOutcome {
    bool skipped = false;
    unsigned method = 0;  // 0 closed-form, 1 hybrid, 2 oracle
    std::uint64_t checks = 0;
    std::vector<Discrepancy> discrepancies;
};

std::string spectrum_str(const std::map<std::uint64_t, mpz_class>& buckets) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [r, c] : buckets) {
        if (!first) os << ", ";
        first = false;
        os << r << ": " << c.get_str();
    }
    os << "}";
    return os.str();
}

class CellChecker {
  public:
    CellChecker(const Cell& cell, std::uint64_t budget) : cell_(cell), budget_(budget) {}

    CellOutcome run() {
        try {
            check();
        } catch (const Error& e) {
            report("unexpected-error", std::string(errc_name(e.code())) + ": " + e.what());
        } catch (const std::exception& e) {
            report("unexpected-error", e.what());
        }
        return out_;
    }

  private:
    void report(const std::string& check, const std::string& detail) {
        out_.discrepancies.push_back(Discrepancy{check, cell_.p, cell_.n, cell_.k, detail});
    }

    void tally(bool pass, const std::string& check, const std::string& detail) {
        ++out_.checks;
        if (!pass) report(check, detail);
    }

    void check() {
        const mpz_class p = static_cast<unsigned long>(cell_.p);
        const mpz_class n = static_cast<unsigned long>(cell_.n);
        PrimePowerModulus pp(p, cell_.k);
        std::uint64_t budget =
            budget_ == 0 ? default_oracle_budget()
                         : std::min(budget_, kOracleBudgetCeiling);
        if (!pp.modulus.fits_ulong_p() || pp.modulus.get_ui() > budget) {
            out_.skipped = true;
            return;
        }

        FunctionalGraph graph = build_graph(pp, n, budget);
        std::uint64_t oracle_fixed = 0;
        for (std::uint64_t x = 0; x < graph.modulus; ++x)
            if (graph.successor[x] == x) ++oracle_fixed;
        auto oracle_hist = oracle_spectrum(graph);

        const bool p3_deep = (p == 3 && cell_.k >= 3);
        const bool p_divides_n = (n % p == 0);

        // Fixed-point count: closed form vs enumeration (or, where no closed
        // form exists, insist the library refuses rather than guesses).
        if (p3_deep) {
            out_.method = 2;
            try {
                mpz_class bogus = nk_count(pp, n);
                tally(false, "p3-closed-form-refusal",
                      "nk_count returned " + bogus.get_str() +
                          " for p = 3, k >= 3 instead of refusing");
            } catch (const Error& e) {
                tally(e.code() == errc::unsupported_p3_level, "p3-closed-form-refusal",
                      std::string("wrong error code: ") + errc_name(e.code()));
            }
        } else {
            mpz_class closed = nk_count(pp, n);
            tally(closed == static_cast<unsigned long>(oracle_fixed), "nk-vs-oracle",
                  "closed form N_k = " + closed.get_str() + ", oracle = " +
                      std::to_string(oracle_fixed));
        }

        // Exact-period spectrum against the cycle decomposition.
        PeriodSpectrum spec = spectrum_pk(pp, n, budget);
        if (out_.method == 0 && spec.method == SpectrumMethod::mobius_oracle_hybrid)
            out_.method = 1;
        std::map<std::uint64_t, mpz_class> oracle_buckets;
        for (const auto& [r, c] : oracle_hist)
            oracle_buckets[r] = static_cast<unsigned long>(c);
        tally(spec.buckets == oracle_buckets, "spectrum-vs-oracle",
              "spectrum " + spectrum_str(spec.buckets) + ", oracle " +
                  spectrum_str(oracle_buckets));

        if (cell_.k == 1) {
            PeriodSpectrum direct = spectrum_fp_direct(p, n);
            PeriodSpectrum mobius = spectrum_fp_mobius(p, n);
            tally(direct.buckets == mobius.buckets, "direct-vs-mobius",
                  "direct " + spectrum_str(direct.buckets) + ", mobius " +
                      spectrum_str(mobius.buckets));
        }

        if (cell_.k == 2 && !p_divides_n) check_first_lift_fates(p, n, graph);
        if (cell_.k >= 2 && p >= 5 && !p_divides_n) check_towers(pp, n, graph);
    }

    // Every base residue's lifts to level 2, against the ghost classification.
    void check_first_lift_fates(const mpz_class& p, const mpz_class& n,
                                const FunctionalGraph& graph) {
        PeriodSpectrum orbitwise = spectrum_p2_orbitwise(p, n);
        std::map<std::uint64_t, mpz_class> oracle_buckets;
        for (const auto& [r, c] : oracle_spectrum(graph))
            oracle_buckets[r] = static_cast<unsigned long>(c);
        tally(orbitwise.buckets == oracle_buckets, "orbitwise-vs-oracle",
              "orbitwise " + spectrum_str(orbitwise.buckets) + ", oracle " +
                  spectrum_str(oracle_buckets));

        for (std::uint64_t a0 = 0; a0 < cell_.p; ++a0) {
            LiftsProfile prof = lifts_period_profile(graph, a0);
            std::map<std::uint64_t, mpz_class> got;
            for (const auto& [r, c] : prof.periods)
                got[r] = static_cast<unsigned long>(c);
            std::map<std::uint64_t, mpz_class> want;
            bool want_periodic = true;
            try {
                GhostReport g = ghost_classify(p, n, static_cast<unsigned long>(a0));
                if (g.all_retain) {
                    want[g.t.get_ui()] = p;
                } else {
                    want[g.t.get_ui()] = 1;
                    want[g.kappa.get_ui()] += p - 1;
                }
            } catch (const Error& e) {
                if (e.code() != errc::not_periodic) throw;
                want_periodic = false;
            }
            if (want_periodic) {
                tally(got == want && prof.non_periodic == 0,
                      "ghost-vs-oracle",
                      "a0 = " + std::to_string(a0) + ": predicted " +
                          spectrum_str(want) + ", oracle " + spectrum_str(got) + " (+" +
                          std::to_string(prof.non_periodic) + " non-periodic)");
            } else {
                tally(got.empty(), "nonperiodic-vs-oracle",
                      "a0 = " + std::to_string(a0) +
                          " classified non-periodic but oracle finds periodic lifts " +
                          spectrum_str(got));
            }
        }
    }

    // Per-residue tower layers at level k, against the oracle lift profiles.
    void check_towers(const PrimePowerModulus& pp, const mpz_class& n,
                      const FunctionalGraph& graph) {
        for (std::uint64_t a0 = 0; a0 < cell_.p; ++a0) {
            TowerReport rep;
            try {
                rep = tower_partition(pp, n, static_cast<unsigned long>(a0));
            } catch (const Error& e) {
                if (e.code() == errc::not_periodic) continue;  // covered above
                throw;
            }
            LiftsProfile prof = lifts_period_profile(graph, a0);
            std::map<std::uint64_t, mpz_class> got, want;
            for (const auto& [r, c] : prof.periods)
                got[r] = static_cast<unsigned long>(c);
            for (std::size_t i = 0; i < rep.taus.size(); ++i)
                want[rep.taus[i].get_ui()] = rep.layer_counts[i];
            tally(got == want && prof.non_periodic == 0, "tower-vs-oracle",
                  "a0 = " + std::to_string(a0) + ": layers " + spectrum_str(want) +
                      ", oracle " + spectrum_str(got) + " (+" +
                      std::to_string(prof.non_periodic) + " non-periodic)");
        }
    }

    Cell cell_;
    std::uint64_t budget_;
    CellOutcome out_;
};

}  // namespace

VerifyReport run_verify(const VerifyOptions& opts) {
    VerifyReport report;
    report.options = opts;

    std::vector<Cell> cells;
    for (std::uint64_t p = 3; p <= opts.pmax; p += 2) {
        if (!is_prime(mpz_class(static_cast<unsigned long>(p)))) continue;
        for (std::uint64_t n = 1; n <= opts.nmax; ++n)
            for (unsigned k = 1; k <= opts.kmax; ++k) cells.push_back({p, n, k});
    }

    std::vector<CellOutcome> outcomes(cells.size());
    unsigned threads = opts.threads != 0 ? opts.threads
                                         : std::max(1u, std::thread::hardware_concurrency());
    if (!cells.empty() && threads > cells.size())
        threads = static_cast<unsigned>(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1))
            outcomes[i] = CellChecker(cells[i], opts.oracle_budget).run();
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (const CellOutcome& out : outcomes) {
        if (out.skipped) {
            ++report.cells_skipped;
            continue;
        }
        ++report.cells_checked;
        switch (out.method) {
            case 0: ++report.closed_form_cells; break;
            case 1: ++report.hybrid_cells; break;
            default: ++report.oracle_cells; break;
        }
        report.checks += out.checks;
        report.discrepancies.insert(report.discrepancies.end(), out.discrepancies.begin(),
                                    out.discrepancies.end());
    }
    return report;
}

}  // namespace chebmod
