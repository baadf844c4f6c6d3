#include "icb/json_io.hpp"

#include <string>

namespace icb {

using nlohmann::json;

namespace {

int get_count(const json& j) {
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw ParseError("missing integer field \"n\"");
    return j["n"].get<int>();
}

Subset set_from_json(const json& arr, int n, const std::string& where) {
    if (!arr.is_array()) throw ParseError(where + ": expected an array of indices");
    Subset s = 0;
    for (const json& v : arr) {
        if (!v.is_number_integer()) throw ParseError(where + ": non-integer index");
        int i = v.get<int>();
        if (i < 1 || i > n) throw ParseError(where + ": index " + std::to_string(i) +
                                             " out of range [1, " + std::to_string(n) + "]");
        if (contains(s, i - 1)) throw ParseError(where + ": duplicate index " + std::to_string(i));
        s |= bit(i - 1);
    }
    return s;
}

}  // namespace

Instance instance_from_json(const json& j) {
    const int n = get_count(j);
    if (n < 1 || n > kMaxMessages) throw ParseError("\"n\" out of range [1, 64]");
    const bool has_a = j.contains("A"), has_b = j.contains("B");
    if (has_a == has_b) throw ParseError("exactly one of \"A\"/\"B\" must be present");
    const json& table = has_a ? j["A"] : j["B"];
    if (!table.is_object()) throw ParseError("\"A\"/\"B\" must be an object");
    std::vector<Subset> listed(n, 0);
    std::vector<bool> seen(n, false);
    for (const auto& [key, value] : table.items()) {
        int i;
        try {
            std::size_t used = 0;
            i = std::stoi(key, &used);
            if (used != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
            throw ParseError("entry \"" + key + "\": key is not a message index");
        }
        if (i < 1 || i > n)
            throw ParseError("entry \"" + key + "\": index out of range [1, " +
                             std::to_string(n) + "]");
        if (seen[i - 1]) throw ParseError("entry \"" + key + "\": duplicate");
        seen[i - 1] = true;
        Subset s = set_from_json(value, n, "entry \"" + key + "\"");
        if (contains(s, i - 1))
            throw ParseError("entry \"" + key + "\": message lists itself");
        listed[i - 1] = s;
    }
    for (int i = 0; i < n; ++i)
        if (!seen[i]) throw ParseError("missing entry for message " + std::to_string(i + 1));
    std::vector<Subset> side_info(n);
    const Subset full = full_set(n);
    for (int i = 0; i < n; ++i)
        side_info[i] = has_a ? listed[i] : full & ~(listed[i] | bit(i));
    return Instance(n, std::move(side_info));
}

json instance_to_json(const Instance& inst, ListingForm form) {
    json table = json::object();
    for (int i = 0; i < inst.message_count(); ++i) {
        Subset s = form == ListingForm::kSideInfo ? inst.side_info(i)
                                                  : inst.interfering(i);
        table[std::to_string(i + 1)] = to_external(s);
    }
    json j;
    j["n"] = inst.message_count();
    j[form == ListingForm::kSideInfo ? "A" : "B"] = std::move(table);
    return j;
}

Instance instance_from_text_or_json(const std::string& contents, ListingForm text_form) {
    for (char c : contents) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '{') return instance_from_json(json::parse(contents));
        break;
    }
    return parse_instance_text(contents, text_form);
}

CapacityMap capacities_from_json(const json& j) {
    const int n = get_count(j);
    if (!j.contains("default")) throw ParseError("missing \"default\" capacity");
    Rational def = parse_rational(j["default"].get<std::string>());
    std::vector<std::pair<Subset, Rational>> overrides;
    if (j.contains("overrides")) {
        if (!j["overrides"].is_array()) throw ParseError("\"overrides\" must be an array");
        for (const json& o : j["overrides"]) {
            Subset servers = set_from_json(o.at("servers"), n, "override");
            Rational cap = parse_rational(o.at("capacity").get<std::string>());
            overrides.emplace_back(servers, cap);
        }
    }
    return CapacityMap(n, std::move(def), std::move(overrides));
}

json capacities_to_json(const CapacityMap& cap) {
    json j;
    j["n"] = cap.message_count();
    j["default"] = to_string(cap.default_value());
    json arr = json::array();
    for (const auto& [servers, value] : cap.overrides()) {
        json o;
        o["servers"] = to_external(servers);
        o["capacity"] = to_string(value);
        arr.push_back(std::move(o));
    }
    j["overrides"] = std::move(arr);
    return j;
}

Chain chain_from_json(const json& j) {
    Chain chain;
    if (!j.contains("spine") || !j["spine"].is_array() || j["spine"].size() < 2)
        throw ParseError("certificate needs a \"spine\" array of at least two messages");
    for (const json& v : j["spine"]) chain.spine.push_back(v.get<int>() - 1);
    const int m = chain.length();
    if (!j.contains("towers") || !j["towers"].is_array())
        throw ParseError("certificate needs a \"towers\" array");
    chain.towers.resize(m);
    std::vector<bool> seen(m, false);
    for (const json& tj : j["towers"]) {
        int edge = tj.at("edge").get<int>() - 1;
        if (edge < 0 || edge >= m)
            throw ParseError("tower edge out of range [1, " + std::to_string(m) + "]");
        if (seen[edge]) throw ParseError("duplicate tower for edge " + std::to_string(edge + 1));
        seen[edge] = true;
        Tower& tower = chain.towers[edge];
        tower.edge = edge;
        std::string kind = tj.value("kind", "basic");
        if (kind == "basic")
            tower.kind = TowerKind::kBasic;
        else if (kind == "crossing")
            tower.kind = TowerKind::kCrossing;
        else
            throw ParseError("unknown tower kind \"" + kind + "\"");
        if (!tj.contains("floors") || !tj["floors"].is_array() || tj["floors"].empty())
            throw ParseError("tower at edge " + std::to_string(edge + 1) +
                             " needs a nonempty \"floors\" array");
        for (const json& fj : tj["floors"]) {
            Floor f;
            f.message = fj.at("k").get<int>() - 1;
            f.cover_start = fj.value("s", edge + 1) - 1;
            f.cover_end = fj.value("t", edge + 2) - 1;
            tower.floors.push_back(f);
        }
    }
    for (int e = 0; e < m; ++e)
        if (!seen[e]) throw ParseError("missing tower for edge " + std::to_string(e + 1));
    return chain;
}

json chain_to_json(const Chain& chain) {
    json j;
    json spine = json::array();
    for (int v : chain.spine) spine.push_back(v + 1);
    j["spine"] = std::move(spine);
    json towers = json::array();
    for (const Tower& t : chain.towers) {
        json tj;
        tj["edge"] = t.edge + 1;
        tj["kind"] = t.kind == TowerKind::kBasic ? "basic" : "crossing";
        json floors = json::array();
        for (const Floor& f : t.floors) {
            json fj;
            fj["k"] = f.message + 1;
            if (t.kind == TowerKind::kCrossing) {
                fj["s"] = f.cover_start + 1;
                fj["t"] = f.cover_end + 1;
            }
            floors.push_back(std::move(fj));
        }
        tj["floors"] = std::move(floors);
        towers.push_back(std::move(tj));
    }
    j["towers"] = std::move(towers);
    return j;
}

}  // namespace icb
