// chebmod command-line tool. A thin shell over the shared library's C API:
// parse flags, call one entry point, print the result document, map the
// status to an exit code.
//
// Exit codes: 0 success, 1 verification discrepancy, 2 validation error,
// 3 unsupported closed-form request (p = 3, k >= 3), 4 budget exceeded.

#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "chebmod/chebmod.h"

namespace {

int exit_code_of(chebmod_status status) {
    switch (status) {
        case CHEBMOD_OK: return 0;
        case CHEBMOD_ERR_DISCREPANCY: return 1;
        case CHEBMOD_ERR_INVALID_ARGUMENT: return 2;
        case CHEBMOD_ERR_UNSUPPORTED_P3_LEVEL: return 3;
        case CHEBMOD_ERR_BUDGET_EXCEEDED: return 4;
        case CHEBMOD_ERR_INSUFFICIENT_PRECISION: return 2;
    }
    return 2;
}

// Print the payload (if any), report failures on stderr, free the handle.
int finish(chebmod_status status, chebmod_result* result) {
    if (result != nullptr) {
        std::fputs(chebmod_result_payload(result), stdout);
        std::fputc('\n', stdout);
        chebmod_result_free(result);
    }
    if (status != CHEBMOD_OK && result == nullptr)
        std::fprintf(stderr, "chebmod: error (%s): %s\n", chebmod_status_name(status),
                     chebmod_last_error());
    else if (status != CHEBMOD_OK)
        std::fprintf(stderr, "chebmod: %s\n", chebmod_status_name(status));
    return exit_code_of(status);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fixed points, exact-period spectra and lift towers of Chebyshev "
                 "maps T_n on Z/p^kZ"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("chebmod ") + chebmod_version());

    std::uint64_t p = 0, n = 0, a0 = 0, budget = 0;
    std::uint64_t pmax = 13, nmax = 40;
    std::uint32_t k = 1, kmax = 3, threads = 0;
    bool enumerate = false, orbitwise = false;
    std::string format = "dot";

    CLI::App* cmd_fixed = app.add_subcommand(
        "fixed", "Fixed-point counts of T_n on Z/p^kZ, levels 1..k");
    cmd_fixed->add_option("--p", p, "odd prime p")->required();
    cmd_fixed->add_option("--n", n, "degree n")->required();
    cmd_fixed->add_option("--k", k, "level k >= 1")->required();
    cmd_fixed->add_flag("--enumerate", enumerate,
                        "brute-force the fixed set as a cross-check (and as the only "
                        "route for p = 3, k >= 3)");
    cmd_fixed->add_option("--budget", budget, "oracle node budget (default 2^22)");

    CLI::App* cmd_spectrum =
        app.add_subcommand("spectrum", "Exact-period spectrum of T_n on Z/p^kZ");
    cmd_spectrum->add_option("--p", p, "odd prime p")->required();
    cmd_spectrum->add_option("--n", n, "degree n")->required();
    cmd_spectrum->add_option("--k", k, "level k >= 1")->required();
    cmd_spectrum->add_flag("--orbitwise", orbitwise,
                           "add the per-source-order first-lift breakdown (k = 2)");
    cmd_spectrum->add_option("--budget", budget, "oracle node budget (default 2^22)");

    CLI::App* cmd_ghost = app.add_subcommand(
        "ghost", "First-lift fate (Hensel vs ghosts) of a periodic residue");
    cmd_ghost->add_option("--p", p, "odd prime p")->required();
    cmd_ghost->add_option("--n", n, "degree n (p must not divide n)")->required();
    cmd_ghost->add_option("--a0", a0, "base residue in [0, p)")->required();

    CLI::App* cmd_tower = app.add_subcommand(
        "tower", "Period partition of the lifts of a residue up to level k (p >= 5)");
    cmd_tower->add_option("--p", p, "prime p >= 5")->required();
    cmd_tower->add_option("--n", n, "degree n (p must not divide n)")->required();
    cmd_tower->add_option("--a0", a0, "base residue in [0, p)")->required();
    cmd_tower->add_option("--k", k, "level k >= 1")->required();

    CLI::App* cmd_graph =
        app.add_subcommand("graph", "Export the functional graph of T_n on Z/p^kZ");
    cmd_graph->add_option("--p", p, "odd prime p")->required();
    cmd_graph->add_option("--n", n, "degree n")->required();
    cmd_graph->add_option("--k", k, "level k >= 1")->required();
    cmd_graph->add_option("--format", format, "dot or json")
        ->check(CLI::IsMember({"dot", "json"}));
    cmd_graph->add_option("--budget", budget, "oracle node budget (default 2^22)");

    CLI::App* cmd_verify = app.add_subcommand(
        "verify", "Sweep closed forms against the brute-force oracle");
    cmd_verify->add_option("--pmax", pmax, "largest odd prime (default 13)");
    cmd_verify->add_option("--nmax", nmax, "largest degree (default 40)");
    cmd_verify->add_option("--kmax", kmax, "largest level (default 3)");
    cmd_verify->add_option("--budget", budget, "oracle node budget (default 2^22)");
    cmd_verify->add_option("--threads", threads, "worker threads (default: hardware)");

    CLI11_PARSE(app, argc, argv);

    chebmod_result* result = nullptr;
    chebmod_status status;

    if (app.got_subcommand(cmd_fixed)) {
        status = chebmod_fixed(p, n, k, enumerate ? 1 : 0, budget, &result);
    } else if (app.got_subcommand(cmd_spectrum)) {
        status = chebmod_spectrum(p, n, k, orbitwise ? 1 : 0, budget, &result);
    } else if (app.got_subcommand(cmd_ghost)) {
        status = chebmod_ghost(p, n, a0, &result);
    } else if (app.got_subcommand(cmd_tower)) {
        status = chebmod_tower(p, n, a0, k, &result);
    } else if (app.got_subcommand(cmd_graph)) {
        chebmod_graph* graph = nullptr;
        status = chebmod_graph_build(p, n, k, budget, &graph);
        if (status == CHEBMOD_OK) {
            status = chebmod_graph_render(graph,
                                          format == "dot" ? CHEBMOD_GRAPH_FORMAT_DOT
                                                          : CHEBMOD_GRAPH_FORMAT_JSON,
                                          &result);
            chebmod_graph_free(graph);
        }
    } else {
        status = chebmod_verify(pmax, nmax, kmax, budget, threads, &result);
    }
    return finish(status, result);
}
