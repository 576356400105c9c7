#include "json_report.hpp"

#include <sstream>

namespace chebmod {

namespace {

const mpz_class kJsonNumberMax = (mpz_class(1) << 53) - 1;

const char* branch_name(DegenerateBranch b) {
    switch (b) {
        case DegenerateBranch::none: return "none";
        case DegenerateBranch::minus: return "minus";
        case DegenerateBranch::plus: return "plus";
    }
    return "unknown";
}

}  // namespace

ojson json_int(const mpz_class& v) {
    if (v >= 0 && v <= kJsonNumberMax) return static_cast<std::uint64_t>(v.get_ui());
    if (v < 0 && -v <= kJsonNumberMax) return static_cast<std::int64_t>(v.get_si());
    return v.get_str();
}

ojson envelope(const std::string& command, ojson parameters,
               std::vector<std::string> methods, double timing_ms, ojson result) {
    ojson manifest;
    manifest["tool"] = "chebmod";
    manifest["version"] = kVersion;
    manifest["command"] = command;
    manifest["parameters"] = std::move(parameters);
    manifest["methods"] = methods;
    manifest["timing_ms"] = timing_ms;
    ojson doc;
    doc["manifest"] = std::move(manifest);
    doc["result"] = std::move(result);
    return doc;
}

ojson fixed_result(const FixedPointReport& rep,
                   const std::optional<EnumerationCrossCheck>& enumeration) {
    ojson r;
    r["p"] = json_int(rep.p);
    r["n"] = json_int(rep.n);
    ojson gcds;
    gcds["G1"] = json_int(rep.G1);
    gcds["G2"] = json_int(rep.G2);
    gcds["G3"] = json_int(rep.G3);
    gcds["G4"] = json_int(rep.G4);
    r["gcds"] = std::move(gcds);
    r["delta"] = json_int(rep.delta);
    r["N1"] = json_int(rep.N1);
    r["d"] = json_int(rep.d);
    r["degenerate_branch"] = branch_name(rep.branch);
    if (rep.s)
        r["s"] = *rep.s;
    else
        r["s"] = nullptr;  // v_p(n^2 - 1) infinite: n = 1
    ojson levels = ojson::array();
    for (const LevelCount& lc : rep.levels) {
        ojson level;
        level["k"] = lc.k;
        level["count"] = json_int(lc.count);
        level["method"] = count_method_name(lc.method);
        levels.push_back(std::move(level));
    }
    r["levels"] = std::move(levels);
    if (enumeration) {
        ojson e;
        e["count"] = enumeration->fixed_points.size();
        e["fixed_points"] = enumeration->fixed_points;
        e["agrees"] = enumeration->agrees;
        r["enumeration"] = std::move(e);
    }
    return r;
}

namespace {

ojson buckets_json(const std::map<std::uint64_t, mpz_class>& buckets) {
    ojson arr = ojson::array();
    for (const auto& [r, count] : buckets) {
        ojson b;
        b["period"] = r;
        b["count"] = json_int(count);
        arr.push_back(std::move(b));
    }
    return arr;
}

}  // namespace

ojson spectrum_result(const mpz_class& p, const mpz_class& n, unsigned k,
                      const PeriodSpectrum& spec,
                      const std::vector<OrbitwiseRow>* rows, bool orbitwise_agrees) {
    ojson r;
    r["p"] = json_int(p);
    r["n"] = json_int(n);
    r["k"] = k;
    r["method"] = spectrum_method_name(spec.method);
    r["buckets"] = buckets_json(spec.buckets);
    mpz_class total = 0;
    for (const auto& [period, count] : spec.buckets) total += count;
    r["periodic_points"] = json_int(total);
    if (rows) {
        ojson arr = ojson::array();
        for (const OrbitwiseRow& row : *rows) {
            ojson j;
            j["e"] = json_int(row.e);
            j["sources"] = json_int(row.sources);
            j["t"] = json_int(row.t);
            j["kappa"] = json_int(row.kappa);
            j["case"] = row.all_retain ? "all-retain" : "hensel-plus-ghosts";
            arr.push_back(std::move(j));
        }
        ojson o;
        o["rows"] = std::move(arr);
        o["spectrum_agrees"] = orbitwise_agrees;
        r["orbitwise"] = std::move(o);
    }
    return r;
}

ojson ghost_result(const mpz_class& p, const mpz_class& n, const GhostReport& rep) {
    ojson r;
    r["p"] = json_int(p);
    r["n"] = json_int(n);
    r["a0"] = json_int(rep.a0);
    r["e"] = json_int(rep.e);
    r["t"] = json_int(rep.t);
    r["kappa"] = json_int(rep.kappa);
    r["case"] = rep.all_retain ? "all-retain" : "hensel-plus-ghosts";
    r["ghost_orbit_count"] = json_int(rep.ghost_orbit_count);
    return r;
}

ojson tower_result(const mpz_class& p, const mpz_class& n, unsigned k,
                   const mpz_class& a0, const mpz_class& e, const TowerReport& rep,
                   const std::map<std::uint64_t, mpz_class>& cycles) {
    ojson r;
    r["p"] = json_int(p);
    r["n"] = json_int(n);
    r["k"] = k;
    r["a0"] = json_int(a0);
    r["e"] = json_int(e);
    ojson tower = ojson::array();
    for (const mpz_class& c : rep.tower.c) tower.push_back(json_int(c));
    r["cord_tower"] = std::move(tower);
    ojson layers = ojson::array();
    for (std::size_t i = 0; i < rep.taus.size(); ++i) {
        ojson layer;
        layer["tau"] = json_int(rep.taus[i]);
        layer["m"] = rep.ms[i];
        layer["count"] = json_int(rep.layer_counts[i]);
        layers.push_back(std::move(layer));
    }
    r["layers"] = std::move(layers);
    ojson cyc = ojson::array();
    for (const auto& [len, count] : cycles) {
        ojson c;
        c["length"] = len;
        c["count"] = json_int(count);
        cyc.push_back(std::move(c));
    }
    r["cycles_above_base_orbit"] = std::move(cyc);
    return r;
}

ojson verify_result(const VerifyReport& rep) {
    ojson r;
    ojson grid;
    grid["pmax"] = rep.options.pmax;
    grid["nmax"] = rep.options.nmax;
    grid["kmax"] = rep.options.kmax;
    grid["budget"] = rep.options.oracle_budget == 0 ? default_oracle_budget()
                                                    : rep.options.oracle_budget;
    r["grid"] = std::move(grid);
    r["cells_checked"] = rep.cells_checked;
    r["cells_skipped"] = rep.cells_skipped;
    ojson methods;
    methods["closed-form"] = rep.closed_form_cells;
    methods["mobius-oracle-hybrid"] = rep.hybrid_cells;
    methods["oracle"] = rep.oracle_cells;
    r["cell_methods"] = std::move(methods);
    r["checks"] = rep.checks;
    ojson disc = ojson::array();
    for (const Discrepancy& d : rep.discrepancies) {
        ojson j;
        j["check"] = d.check;
        j["p"] = d.p;
        j["n"] = d.n;
        j["k"] = d.k;
        j["detail"] = d.detail;
        disc.push_back(std::move(j));
    }
    r["discrepancies"] = std::move(disc);
    r["ok"] = rep.ok();
    return r;
}

ojson graph_json(const FunctionalGraph& g) {
    ojson r;
    r["p"] = json_int(g.p);
    r["k"] = g.k;
    r["modulus"] = g.modulus;
    r["n"] = json_int(g.n);
    r["successor"] = g.successor;
    ojson periods = ojson::array();
    for (std::uint64_t x = 0; x < g.modulus; ++x) {
        if (g.period[x] != 0)
            periods.push_back(g.period[x]);
        else
            periods.push_back(nullptr);  // tail node
    }
    r["period"] = std::move(periods);
    return r;
}

std::string graph_dot(const FunctionalGraph& g) {
    std::ostringstream os;
    os << "digraph chebmod {\n";
    os << "  // x -> T_" << g.n.get_str() << "(x) on Z/" << g.p.get_str() << "^" << g.k
       << "Z\n";
    os << "  label=\"T_" << g.n.get_str() << " mod " << g.p.get_str() << "^" << g.k
       << "\";\n";
    for (std::uint64_t x = 0; x < g.modulus; ++x) {
        os << "  n" << x << " [label=\"" << x << "\"";
        if (g.period[x] != 0)
            os << " period=" << g.period[x];
        else
            os << " tail=true";
        os << "];\n";
    }
    for (std::uint64_t x = 0; x < g.modulus; ++x)
        os << "  n" << x << " -> n" << g.successor[x] << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace chebmod
