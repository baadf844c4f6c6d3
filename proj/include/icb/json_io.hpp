#pragma once

#include <json.hpp>

#include "icb/capacity.hpp"
#include "icb/chain.hpp"
#include "icb/instance.hpp"

namespace icb {

// Instance JSON: {"n": int, "A": {"<i>": [ints]}} or {"n": int, "B": ...}.
// Exactly one of "A"/"B" must be present, with one key per message.
Instance instance_from_json(const nlohmann::json& j);
nlohmann::json instance_to_json(const Instance& inst, ListingForm form);

// Reads an instance from file contents: JSON when the first non-space
// character is '{', otherwise the paper's text listing in `text_form`.
Instance instance_from_text_or_json(const std::string& contents, ListingForm text_form);

// Capacities JSON: {"n": int, "default": "p/q",
//                   "overrides": [{"servers": [ints], "capacity": "p/q"}]}.
CapacityMap capacities_from_json(const nlohmann::json& j);
nlohmann::json capacities_to_json(const CapacityMap& cap);

// Certificate JSON: {"spine": [ints], "towers": [{"edge": j, "kind":
// "basic"|"crossing", "floors": [{"k": int, "s": int, "t": int}]}]}.
// All indices 1-based; "s"/"t" may be omitted on basic floors.
Chain chain_from_json(const nlohmann::json& j);
nlohmann::json chain_to_json(const Chain& chain);

}  // namespace icb
