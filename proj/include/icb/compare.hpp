#pragma once

#include <json.hpp>

#include "icb/chain_search.hpp"
#include "icb/instance.hpp"

namespace icb {

struct CompareOptions {
    SearchLimits limits;
    bool with_lp = true;  // skipped anyway when n > 12
};

// Runs every bound on one instance and assembles the comparison report:
// MAIS, minimum plain alignment chain, singleton and disjoint searches, and
// (for small n) the symmetric-rate polymatroidal LP. The report carries an
// "ordering_ok" flag checking the bound hierarchy on the exhaustively
// searched values; a false flag means an internal error somewhere.
nlohmann::json compare_report(const Instance& inst, const CompareOptions& options);

// JSON forms of the search report used by both the CLI and compare_report.
nlohmann::json bound_report_to_json(const BoundReport& report);

}  // namespace icb
