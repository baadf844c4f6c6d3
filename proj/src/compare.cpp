#include "icb/compare.hpp"

#include <algorithm>

#include "icb/json_io.hpp"
#include "icb/mais.hpp"
#include "icb/pm_oracle.hpp"

namespace icb {

using nlohmann::json;

json bound_report_to_json(const BoundReport& report) {
    json j;
    j["bound"] = report.bound ? to_string(*report.bound) : "none";
    j["exhaustive"] = report.exhaustive;
    j["witness"] = report.witness ? chain_to_json(*report.witness) : json(nullptr);
    j["nodes"] = report.nodes_expanded;
    return j;
}

json compare_report(const Instance& inst, const CompareOptions& options) {
    const int n = inst.message_count();

    MaisResult mr = mais(inst);
    SearchLimits limits = options.limits;
    // Give the searches room for the acyclic-set seed so the hierarchy
    // against the MAIS bound stays structural.
    limits.max_height = std::max(limits.max_height, mr.size - 2);

    auto plain = min_alignment_chain(inst);
    BoundReport singleton = search_singleton(inst, limits);
    BoundReport disjoint = search_disjoint(inst, limits);

    json bounds;
    {
        json j;
        j["value"] = to_string(mr.bound());
        j["size"] = mr.size;
        j["witness"] = to_external(mr.witness);
        bounds["mais"] = std::move(j);
    }
    {
        json j;
        j["found"] = plain.has_value();
        j["value"] = plain ? to_string(internal_conflict_bound(plain->second)) : "1";
        if (plain) {
            j["delta"] = plain->second;
            j["witness"] = chain_to_json(plain->first);
        } else {
            j["witness"] = nullptr;
        }
        bounds["min_alignment"] = std::move(j);
    }
    auto search_entry = [](const BoundReport& r) {
        json j = bound_report_to_json(r);
        j["found"] = r.bound.has_value();
        if (!r.bound) j["bound"] = "1";
        return j;
    };
    bounds["singleton"] = search_entry(singleton);
    bounds["disjoint"] = search_entry(disjoint);

    if (options.with_lp && n <= 12) {
        PmSolveResult lp = solve(build_pm_model(inst, PmObjective::kSymmetricRate));
        json j;
        j["value"] = to_string(lp.value);
        j["objective"] = "symmetric";
        bounds["lp"] = std::move(j);
    } else {
        bounds["lp"] = nullptr;
    }

    // Bound hierarchy, checked over the values the runs actually pin down:
    // a search cut short by the node budget may legitimately sit above the
    // smaller space's result.
    bool ordering_ok = true;
    if (disjoint.bound && singleton.bound && disjoint.exhaustive && singleton.exhaustive)
        ordering_ok &= *disjoint.bound <= *singleton.bound;
    if (singleton.bound && plain && singleton.exhaustive &&
        plain->second <= limits.max_length)
        ordering_ok &= *singleton.bound <= internal_conflict_bound(plain->second);
    if (singleton.bound && singleton.exhaustive)
        ordering_ok &= *singleton.bound <= mr.bound();

    json report;
    report["n"] = n;
    report["bounds"] = std::move(bounds);
    {
        json j;
        j["max_m"] = limits.max_length;
        j["max_height"] = limits.max_height;
        j["budget"] = limits.node_budget;
        report["limits"] = std::move(j);
    }
    report["ordering_ok"] = ordering_ok;
    return report;
}

}  // namespace icb
