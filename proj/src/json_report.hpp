#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fixed_points.hpp"
#include "oracle.hpp"
#include "period_counts.hpp"
#include "verify.hpp"

namespace chebmod {

inline constexpr const char kVersion[] = "0.1.0";

using ojson = nlohmann::ordered_json;

// Integers are emitted as JSON numbers up to 2^53 - 1 (exact in doubles) and
// as decimal strings beyond, so no consumer ever sees a rounded count.
ojson json_int(const mpz_class& v);

// Envelope shared by all commands:
// {"manifest": {tool, version, command, parameters, methods, timing_ms},
//  "result": ...}
ojson envelope(const std::string& command, ojson parameters,
               std::vector<std::string> methods, double timing_ms, ojson result);

struct EnumerationCrossCheck {
    std::vector<std::uint64_t> fixed_points;
    bool agrees = false;
};

ojson fixed_result(const FixedPointReport& rep,
                   const std::optional<EnumerationCrossCheck>& enumeration);

ojson spectrum_result(const mpz_class& p, const mpz_class& n, unsigned k,
                      const PeriodSpectrum& spec,
                      const std::vector<OrbitwiseRow>* rows, bool orbitwise_agrees);

ojson ghost_result(const mpz_class& p, const mpz_class& n, const GhostReport& rep);

ojson tower_result(const mpz_class& p, const mpz_class& n, unsigned k,
                   const mpz_class& a0, const mpz_class& e, const TowerReport& rep,
                   const std::map<std::uint64_t, mpz_class>& cycles);

ojson verify_result(const VerifyReport& rep);

ojson graph_json(const FunctionalGraph& g);
std::string graph_dot(const FunctionalGraph& g);

}  // namespace chebmod
