#include "chebmod/chebmod.h"

#include <algorithm>
#include <chrono>
#include <string>

#include "json_report.hpp"

using namespace chebmod;

struct chebmod_result {
    chebmod_status status = CHEBMOD_OK;
    std::string payload;
};

struct chebmod_graph {
    FunctionalGraph g;
};

namespace {

thread_local std::string t_last_error;

chebmod_status status_of(errc code) {
    switch (code) {
        case errc::invalid_argument:
        case errc::not_invertible:
        case errc::not_periodic: return CHEBMOD_ERR_INVALID_ARGUMENT;
        case errc::unsupported_p3_level: return CHEBMOD_ERR_UNSUPPORTED_P3_LEVEL;
        case errc::oracle_budget_exceeded:
        case errc::factor_budget_exceeded:
        case errc::order_budget_exceeded: return CHEBMOD_ERR_BUDGET_EXCEEDED;
        case errc::insufficient_precision: return CHEBMOD_ERR_INSUFFICIENT_PRECISION;
        case errc::internal: return CHEBMOD_ERR_DISCREPANCY;
    }
    return CHEBMOD_ERR_INVALID_ARGUMENT;
}

// Runs fn(), which either returns a finished chebmod_result or throws.
template <typename Fn>
chebmod_status run_command(chebmod_result** out, Fn&& fn) {
    if (out == nullptr) {
        t_last_error = "output parameter is NULL";
        return CHEBMOD_ERR_INVALID_ARGUMENT;
    }
    try {
        chebmod_result result = fn();
        t_last_error.clear();
        *out = new chebmod_result(std::move(result));
        return (*out)->status;
    } catch (const Error& e) {
        t_last_error = e.what();
        return status_of(e.code());
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return CHEBMOD_ERR_INVALID_ARGUMENT;
    }
}

mpz_class check_degree_u64(uint64_t n) {
    if (n > (1ULL << 63) - 1)
        fail(errc::invalid_argument, "degrees above 2^63 - 1 are not accepted");
    return mpz_class(static_cast<unsigned long>(n));
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     t0)
        .count();
}

}  // namespace

extern "C" {

const char* chebmod_version(void) { return kVersion; }

const char* chebmod_status_name(chebmod_status status) {
    switch (status) {
        case CHEBMOD_OK: return "ok";
        case CHEBMOD_ERR_DISCREPANCY: return "discrepancy";
        case CHEBMOD_ERR_INVALID_ARGUMENT: return "invalid-argument";
        case CHEBMOD_ERR_UNSUPPORTED_P3_LEVEL: return "unsupported-p3-level";
        case CHEBMOD_ERR_BUDGET_EXCEEDED: return "budget-exceeded";
        case CHEBMOD_ERR_INSUFFICIENT_PRECISION: return "insufficient-precision";
    }
    return "unknown";
}

const char* chebmod_last_error(void) { return t_last_error.c_str(); }

chebmod_status chebmod_result_status(const chebmod_result* result) {
    return result ? result->status : CHEBMOD_ERR_INVALID_ARGUMENT;
}

const char* chebmod_result_payload(const chebmod_result* result) {
    return result ? result->payload.c_str() : "";
}

void chebmod_result_free(chebmod_result* result) { delete result; }

chebmod_status chebmod_fixed(uint64_t p, uint64_t n, uint32_t k,
                             int with_enumeration, uint64_t oracle_budget,
                             chebmod_result** out) {
    return run_command(out, [&] {
        auto t0 = std::chrono::steady_clock::now();
        mpz_class np = check_degree_u64(n);
        PrimePowerModulus pp(static_cast<unsigned long>(p), k);
        FixedPointReport rep =
            fixed_point_report(pp, np, with_enumeration != 0, oracle_budget);

        std::optional<EnumerationCrossCheck> cross;
        if (with_enumeration != 0) {
            EnumerationCrossCheck c;
            c.fixed_points = enumerate_fixed(pp, np, oracle_budget);
            c.agrees = rep.levels.back().count ==
                       static_cast<unsigned long>(c.fixed_points.size());
            cross = std::move(c);
        }

        std::vector<std::string> methods;
        for (const LevelCount& lc : rep.levels) {
            std::string name = count_method_name(lc.method);
            if (std::find(methods.begin(), methods.end(), name) == methods.end())
                methods.push_back(name);
        }

        ojson params;
        params["p"] = p;
        params["n"] = n;
        params["k"] = k;
        params["enumerate"] = with_enumeration != 0;
        params["oracle_budget"] = oracle_budget;

        chebmod_result result;
        result.status = (cross && !cross->agrees) ? CHEBMOD_ERR_DISCREPANCY : CHEBMOD_OK;
        result.payload = envelope("fixed", std::move(params), std::move(methods),
                                  ms_since(t0), fixed_result(rep, cross))
                             .dump();
        return result;
    });
}

chebmod_status chebmod_spectrum(uint64_t p, uint64_t n, uint32_t k, int orbitwise,
                                uint64_t oracle_budget, chebmod_result** out) {
    return run_command(out, [&] {
        auto t0 = std::chrono::steady_clock::now();
        mpz_class np = check_degree_u64(n);
        PrimePowerModulus pp(static_cast<unsigned long>(p), k);
        PeriodSpectrum spec = spectrum_pk(pp, np, oracle_budget);

        std::vector<OrbitwiseRow> rows;
        bool agrees = true;
        if (orbitwise != 0) {
            if (k != 2)
                fail(errc::invalid_argument,
                     "orbitwise breakdown is a first-lift (k = 2) view");
            rows = orbitwise_rows(pp.p, np);
            agrees = spectrum_p2_orbitwise(pp.p, np).buckets == spec.buckets;
        }

        ojson params;
        params["p"] = p;
        params["n"] = n;
        params["k"] = k;
        params["orbitwise"] = orbitwise != 0;
        params["oracle_budget"] = oracle_budget;

        chebmod_result result;
        result.status = agrees ? CHEBMOD_OK : CHEBMOD_ERR_DISCREPANCY;
        result.payload =
            envelope("spectrum", std::move(params), {spectrum_method_name(spec.method)},
                     ms_since(t0),
                     spectrum_result(pp.p, np, k, spec,
                                     orbitwise != 0 ? &rows : nullptr, agrees))
                .dump();
        return result;
    });
}

chebmod_status chebmod_ghost(uint64_t p, uint64_t n, uint64_t a0,
                             chebmod_result** out) {
    return run_command(out, [&] {
        auto t0 = std::chrono::steady_clock::now();
        mpz_class np = check_degree_u64(n);
        mpz_class pz(static_cast<unsigned long>(p));
        GhostReport rep = ghost_classify(pz, np, static_cast<unsigned long>(a0));

        ojson params;
        params["p"] = p;
        params["n"] = n;
        params["a0"] = a0;

        chebmod_result result;
        result.payload = envelope("ghost", std::move(params), {"closed-form"},
                                  ms_since(t0), ghost_result(pz, np, rep))
                             .dump();
        return result;
    });
}

chebmod_status chebmod_tower(uint64_t p, uint64_t n, uint64_t a0, uint32_t k,
                             chebmod_result** out) {
    return run_command(out, [&] {
        auto t0 = std::chrono::steady_clock::now();
        mpz_class np = check_degree_u64(n);
        PrimePowerModulus pp(static_cast<unsigned long>(p), k);
        TowerReport rep = tower_partition(pp, np, static_cast<unsigned long>(a0));
        auto cycles = cycles_above(pp, np, rep.tower.c.front(), rep.tower);

        ojson params;
        params["p"] = p;
        params["n"] = n;
        params["a0"] = a0;
        params["k"] = k;

        chebmod_result result;
        result.payload =
            envelope("tower", std::move(params), {"closed-form"}, ms_since(t0),
                     tower_result(pp.p, np, k, static_cast<unsigned long>(a0),
                                  rep.tower.e, rep, cycles))
                .dump();
        return result;
    });
}

chebmod_status chebmod_verify(uint64_t pmax, uint64_t nmax, uint32_t kmax,
                              uint64_t oracle_budget, uint32_t threads,
                              chebmod_result** out) {
    return run_command(out, [&] {
        auto t0 = std::chrono::steady_clock::now();
        VerifyOptions opts;
        opts.pmax = pmax;
        opts.nmax = nmax;
        opts.kmax = kmax;
        opts.oracle_budget = oracle_budget;
        opts.threads = threads;
        VerifyReport rep = run_verify(opts);

        ojson params;
        params["pmax"] = pmax;
        params["nmax"] = nmax;
        params["kmax"] = kmax;
        params["budget"] = oracle_budget;
        params["threads"] = threads;

        chebmod_result result;
        result.status = rep.ok() ? CHEBMOD_OK : CHEBMOD_ERR_DISCREPANCY;
        result.payload =
            envelope("verify", std::move(params),
                     {"closed-form", "mobius-oracle-hybrid", "oracle"}, ms_since(t0),
                     verify_result(rep))
                .dump();
        return result;
    });
}

chebmod_status chebmod_graph_build(uint64_t p, uint64_t n, uint32_t k,
                                   uint64_t oracle_budget, chebmod_graph** out) {
    if (out == nullptr) {
        t_last_error = "output parameter is NULL";
        return CHEBMOD_ERR_INVALID_ARGUMENT;
    }
    try {
        mpz_class np = check_degree_u64(n);
        PrimePowerModulus pp(static_cast<unsigned long>(p), k);
        auto graph = new chebmod_graph{build_graph(pp, np, oracle_budget)};
        t_last_error.clear();
        *out = graph;
        return CHEBMOD_OK;
    } catch (const Error& e) {
        t_last_error = e.what();
        return status_of(e.code());
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return CHEBMOD_ERR_INVALID_ARGUMENT;
    }
}

uint64_t chebmod_graph_size(const chebmod_graph* graph) {
    return graph ? graph->g.modulus : 0;
}

uint64_t chebmod_graph_successor(const chebmod_graph* graph, uint64_t x) {
    if (!graph || x >= graph->g.modulus) return UINT64_MAX;
    return graph->g.successor[x];
}

int chebmod_graph_is_periodic(const chebmod_graph* graph, uint64_t x) {
    if (!graph || x >= graph->g.modulus) return 0;
    return graph->g.period[x] != 0 ? 1 : 0;
}

uint64_t chebmod_graph_period(const chebmod_graph* graph, uint64_t x) {
    if (!graph || x >= graph->g.modulus) return 0;
    return graph->g.period[x];
}

chebmod_status chebmod_graph_render(const chebmod_graph* graph, int format,
                                    chebmod_result** out) {
    return run_command(out, [&] {
        if (graph == nullptr)
            fail(errc::invalid_argument, "graph handle is NULL");
        auto t0 = std::chrono::steady_clock::now();
        chebmod_result result;
        if (format == CHEBMOD_GRAPH_FORMAT_DOT) {
            result.payload = graph_dot(graph->g);
        } else if (format == CHEBMOD_GRAPH_FORMAT_JSON) {
            ojson params;
            params["p"] = json_int(graph->g.p);
            params["n"] = json_int(graph->g.n);
            params["k"] = graph->g.k;
            params["format"] = "json";
            result.payload = envelope("graph", std::move(params), {"oracle"},
                                      ms_since(t0), graph_json(graph->g))
                                 .dump();
        } else {
            fail(errc::invalid_argument, "unknown graph format");
        }
        return result;
    });
}

void chebmod_graph_free(chebmod_graph* graph) { delete graph; }

}  // extern "C"
