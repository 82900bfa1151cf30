#include "ckpt/io.hpp"

#include <ostream>

#include <json.hpp>

namespace ckpt {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json cyclic_json(const cyclic_algorithm& c) {
    ordered_json j;
    j["k"] = c.k;
    j["n"] = c.n;
    j["pattern"] = c.pattern;
    j["times"] = c.positions;
    j["gamma"] = c.gamma;
    return j;
}

ordered_json result_json(const optimization_result& r) {
    ordered_json j;
    j["k"] = r.k;
    j["n"] = r.n;
    j["pattern"] = r.pattern;
    j["gamma"] = r.gamma;
    j["lambda"] = r.lambda;
    j["feasible"] = r.feasible;
    j["positions"] = r.positions;
    j["coincident_positions"] = r.coincident;
    j["constraints"] = {{"ordering", r.ordering_constraints},
                        {"scaling", r.scaling_constraints},
                        {"discrepancy", r.discrepancy_constraints}};
    j["stats"] = {{"feasibility_solves", r.feasibility_solves},
                  {"solver_iterations", r.solver_iterations},
                  {"gammas_scanned", r.gammas_scanned},
                  {"gammas_pruned", r.gammas_pruned}};
    return j;
}

}  // namespace

std::string to_json(const cyclic_algorithm& c, int indent) {
    return cyclic_json(c).dump(indent);
}

cyclic_algorithm cyclic_from_json(const std::string& text) {
    const auto j = ordered_json::parse(text);
    cyclic_algorithm c;
    c.k = j.at("k").get<int>();
    c.n = j.at("n").get<int>();
    c.pattern = j.at("pattern").get<std::vector<int>>();
    c.positions = j.at("times").get<std::vector<double>>();
    c.gamma = j.at("gamma").get<double>();
    return c;
}

std::string to_json(const optimization_result& r, int indent) {
    return result_json(r).dump(indent);
}

std::string to_json(const search_report& rep, int indent) {
    ordered_json j;
    j["k"] = rep.k;
    j["n_max"] = rep.n_max;
    j["mode"] = rep.mode;
    j["seed"] = rep.seed;
    j["complete"] = rep.complete;
    j["candidates_evaluated"] = rep.candidates_evaluated;
    j["pruned"] = {{"noncanonical_patterns", rep.noncanonical_skipped},
                   {"gamma_candidates", rep.gammas_pruned}};
    if (rep.best.feasible) {
        j["best"] = result_json(rep.best);
        j["best_algorithm"] = cyclic_json(rep.best.to_cyclic());
    }
    ordered_json per_n = ordered_json::array();
    for (const auto& [n, r] : rep.best_per_n) {
        ordered_json e;
        e["n"] = n;
        e["lambda"] = r.lambda;
        e["gamma"] = r.gamma;
        e["pattern"] = r.pattern;
        per_n.push_back(e);
    }
    j["best_per_n"] = per_n;
    return j.dump(indent);
}

std::string to_json(const improvement_report& rep, int indent) {
    ordered_json j;
    j["measured_perf"] = rep.measured_perf;
    j["optimized_lambda"] = rep.optimized_lambda;
    j["improvement"] = rep.improvement;
    j["result"] = result_json(rep.result);
    return j.dump(indent);
}

std::string to_json(const bound_set& b, int indent) {
    ordered_json j;
    j["k"] = b.k;
    j["trivial_lower"] = b.trivial_lower;
    j["lower_asymptotic"] = b.lower_asymptotic;
    j["linear_upper"] = b.linear_upper;
    if (b.binary_upper)
        j["binary_upper"] = *b.binary_upper;
    else
        j["binary_upper"] = nullptr;
    j["global_upper"] = b.global_upper;
    return j.dump(indent);
}

std::string format_double(double v) {
    return ordered_json(v).dump();
}

void write_trace_csv(std::ostream& os, const discrepancy_report& rep, const schedule& s) {
    os << "step,time,q,interval_lo,interval_hi\n";
    for (const auto& e : rep.per_step) {
        os << e.step << ',' << format_double(s.times[e.step - 1]) << ','
           << format_double(e.q) << ',' << format_double(e.argmax.lo) << ','
           << format_double(e.argmax.hi) << '\n';
    }
}

std::string simulation_summary_json(int k, int n, double gamma, double perf, int indent) {
    ordered_json j;
    j["k"] = k;
    j["n"] = n;
    j["gamma"] = gamma;
    j["perf"] = perf;
    return j.dump(indent);
}

}  // namespace ckpt
