#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace chebmod {

// Grid sweep comparing every closed form against the brute-force oracle,
// cell by cell over (p, n, k). Each discrepancy carries enough to reproduce
// it in isolation.

struct VerifyOptions {
    std::uint64_t pmax = 13;
    std::uint64_t nmax = 40;
    unsigned kmax = 3;
    std::uint64_t oracle_budget = 0;  // 0 = default / environment
    unsigned threads = 0;             // 0 = hardware concurrency
};

struct Discrepancy {
    std::string check;
    std::uint64_t p = 0, n = 0;
    unsigned k = 0;
    std::string detail;
};

struct VerifyReport {
    VerifyOptions options;
    std::uint64_t cells_checked = 0;
    std::uint64_t cells_skipped = 0;  // modulus beyond the oracle budget
    std::uint64_t closed_form_cells = 0;
    std::uint64_t hybrid_cells = 0;
    std::uint64_t oracle_cells = 0;  // p = 3, k >= 3: counts only from the oracle
    std::uint64_t checks = 0;
    std::vector<Discrepancy> discrepancies;

    bool ok() const { return discrepancies.empty(); }
};

VerifyReport run_verify(const VerifyOptions& opts);

}  // namespace chebmod
