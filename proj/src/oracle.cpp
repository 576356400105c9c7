#include "oracle.hpp"

#include <cstdlib>
#include <string>

#include "cheby.hpp"

namespace chebmod {

namespace {

std::uint64_t clamp_budget(std::uint64_t requested) {
    std::uint64_t b = requested == 0 ? default_oracle_budget() : requested;
    if (b > kOracleBudgetCeiling) b = kOracleBudgetCeiling;
    return b;
}

std::uint64_t checked_size(const PrimePowerModulus& pp, std::uint64_t budget) {
    if (!pp.modulus.fits_ulong_p() || pp.modulus.get_ui() > budget)
        fail(errc::oracle_budget_exceeded,
             "oracle: modulus " + pp.modulus.get_str() + " exceeds the node budget " +
                 std::to_string(budget) +
                 " (override with --budget or CHEBMOD_ORACLE_BUDGET)");
    return pp.modulus.get_ui();
}

}  // namespace

std::uint64_t default_oracle_budget() {
    if (const char* env = std::getenv("CHEBMOD_ORACLE_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0)
            return v > kOracleBudgetCeiling ? kOracleBudgetCeiling : v;
        fail(errc::invalid_argument,
             std::string("CHEBMOD_ORACLE_BUDGET is not a positive integer: ") + env);
    }
    return kOracleBudgetDefault;
}

std::vector<std::uint64_t> enumerate_fixed(const PrimePowerModulus& pp,
                                           const mpz_class& n, std::uint64_t budget) {
    if (n < 0) fail(errc::invalid_argument, "enumerate_fixed: degree must be >= 0");
    std::uint64_t m = checked_size(pp, clamp_budget(budget));
    std::vector<std::uint64_t> out;
    for (std::uint64_t x = 0; x < m; ++x)
        if (cheb_T_u64(n, x, m) == x) out.push_back(x);
    return out;
}

FunctionalGraph build_graph(const PrimePowerModulus& pp, const mpz_class& n,
                            std::uint64_t budget) {
    if (n < 0) fail(errc::invalid_argument, "build_graph: degree must be >= 0");
    std::uint64_t m = checked_size(pp, clamp_budget(budget));

    FunctionalGraph g;
    g.p = pp.p;
    g.k = pp.k;
    g.modulus = m;
    g.n = n;
    g.successor.resize(m);
    for (std::uint64_t x = 0; x < m; ++x)
        g.successor[x] = static_cast<std::uint32_t>(cheb_T_u64(n, x, m));

    // Three-color decomposition. white = unvisited, gray = on the walk in
    // progress, black = fully classified.
    enum : std::uint8_t { white = 0, gray = 1, black = 2 };
    std::vector<std::uint8_t> color(m, white);
    g.period.assign(m, 0);
    std::vector<std::uint32_t> path;
    for (std::uint64_t start = 0; start < m; ++start) {
        if (color[start] != white) continue;
        path.clear();
        std::uint32_t x = static_cast<std::uint32_t>(start);
        while (color[x] == white) {
            color[x] = gray;
            path.push_back(x);
            x = g.successor[x];
        }
        if (color[x] == gray) {
            // The walk closed on itself: everything from x onward is a new
            // cycle, everything before it on the path is tail.
            std::size_t pos = path.size() - 1;
            while (path[pos] != x) --pos;
            std::uint32_t len = static_cast<std::uint32_t>(path.size() - pos);
            for (std::size_t i = pos; i < path.size(); ++i) g.period[path[i]] = len;
        }
        // A walk that ran into black territory is all tail; either way every
        // node on the path is now classified.
        for (std::uint32_t node : path) color[node] = black;
    }
    return g;
}

std::map<std::uint64_t, std::uint64_t> oracle_spectrum(const FunctionalGraph& g) {
    std::map<std::uint64_t, std::uint64_t> hist;
    for (std::uint64_t x = 0; x < g.modulus; ++x)
        if (g.period[x] != 0) ++hist[g.period[x]];
    return hist;
}

LiftsProfile lifts_period_profile(const FunctionalGraph& g, std::uint64_t a0) {
    if (!g.p.fits_ulong_p() || a0 >= g.p.get_ui())
        fail(errc::invalid_argument,
             "lifts_period_profile: a0 must be a base residue in [0, p)");
    std::uint64_t p = g.p.get_ui();
    LiftsProfile prof;
    for (std::uint64_t x = a0; x < g.modulus; x += p) {
        if (g.period[x] != 0)
            ++prof.periods[g.period[x]];
        else
            ++prof.non_periodic;
    }
    return prof;
}

}  // namespace chebmod
