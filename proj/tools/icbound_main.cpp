#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "icb/compare.hpp"
#include "icb/dic.hpp"
#include "icb/json_io.hpp"
#include "icb/mais.hpp"
#include "icb/pm_oracle.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw icb::ParseError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

icb::ListingForm form_from_flag(const std::string& flag) {
    if (flag == "a") return icb::ListingForm::kSideInfo;
    if (flag == "b") return icb::ListingForm::kInterfering;
    throw icb::ParseError("--form must be 'a' or 'b'");
}

icb::Instance load_instance(const std::string& path, const std::string& form) {
    return icb::instance_from_text_or_json(slurp(path), form_from_flag(form));
}

void emit(const json& j, const std::string& format) {
    if (format == "json") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    // Text rendering: flat "key: value" lines for humans.
    std::function<void(const json&, const std::string&)> walk =
        [&](const json& node, const std::string& prefix) {
            if (node.is_object()) {
                for (const auto& [key, value] : node.items())
                    walk(value, prefix.empty() ? key : prefix + "." + key);
            } else if (node.is_array() && !node.empty() && node.front().is_object()) {
                int i = 0;
                for (const auto& value : node) walk(value, prefix + "[" + std::to_string(i++) + "]");
            } else {
                std::cout << prefix << ": " << (node.is_string() ? node.get<std::string>() : node.dump())
                          << "\n";
            }
        };
    walk(j, "");
}

json verify_to_json(const icb::VerifyResult& v) {
    json j;
    j["valid"] = v.ok;
    j["violations"] = v.violations;
    j["warnings"] = v.warnings;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Converse bounds for single- and multi-server index coding"};
    app.require_subcommand(1);

    std::string format = "json";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
    std::string seed_value;
    app.add_option("--seed", seed_value, "Rejected: every computation here is deterministic")
        ->group("");

    std::string instance_path, form = "a";
    auto add_instance_args = [&](CLI::App* cmd) {
        cmd->add_option("instance", instance_path, "Instance file (JSON or text listing)")
            ->required();
        cmd->add_option("--form", form, "Text listing form: 'a' side info, 'b' interfering")
            ->check(CLI::IsMember({"a", "b"}));
    };

    auto* cmd_parse = app.add_subcommand("parse", "Validate an instance and echo canonical JSON");
    std::string emit_form = "a";
    add_instance_args(cmd_parse);
    cmd_parse->add_option("--emit", emit_form, "Emit A-form or B-form JSON")
        ->check(CLI::IsMember({"a", "b"}));

    auto* cmd_mais = app.add_subcommand("mais", "Maximum acyclic induced subgraph bound");
    add_instance_args(cmd_mais);

    auto* cmd_search = app.add_subcommand("search", "Search for the best chain bound");
    add_instance_args(cmd_search);
    int max_m = 4, max_height = 2;
    long long budget = 10'000'000;
    std::string mode = "disjoint";
    cmd_search->add_option("--max-m", max_m, "Largest spine edge count");
    cmd_search->add_option("--max-height", max_height, "Largest tower height");
    cmd_search->add_option("--budget", budget, "Node budget");
    cmd_search->add_option("--mode", mode, "Chain family to search")
        ->check(CLI::IsMember({"singleton", "disjoint", "plain"}));

    auto* cmd_verify = app.add_subcommand("verify", "Check a chain certificate");
    add_instance_args(cmd_verify);
    std::string certificate_path;
    cmd_verify->add_option("certificate", certificate_path, "Certificate JSON file")->required();

    auto* cmd_dic = app.add_subcommand("dic-bound", "Multi-server bound for a certificate");
    add_instance_args(cmd_dic);
    std::string capacities_path;
    cmd_dic->add_option("capacities", capacities_path, "Capacities JSON file")->required();
    cmd_dic->add_option("certificate", certificate_path, "Certificate JSON file")->required();

    auto* cmd_lp = app.add_subcommand("lp", "Exact polymatroidal LP bound");
    add_instance_args(cmd_lp);
    std::string objective = "sum", zy_path, export_path;
    bool reduced = false;
    cmd_lp->add_option("--objective", objective, "sum or sym")
        ->check(CLI::IsMember({"sum", "sym"}));
    cmd_lp->add_option("--zy", zy_path,
                       "JSON file with Zhang-Yeung instantiations: an array of "
                       "four-element arrays of message-index arrays");
    cmd_lp->add_flag("--reduced", reduced, "Only the empty and full decoding sets");
    cmd_lp->add_option("--export", export_path, "Write the LP itself as JSON");

    auto* cmd_compare = app.add_subcommand("compare", "All bounds side by side");
    add_instance_args(cmd_compare);
    bool no_lp = false;
    cmd_compare->add_option("--max-m", max_m, "Largest spine edge count");
    cmd_compare->add_option("--max-height", max_height, "Largest tower height");
    cmd_compare->add_option("--budget", budget, "Node budget");
    cmd_compare->add_flag("--no-lp", no_lp, "Skip the LP bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kExitUsage : kExitOk;
    }
    if (app.count("--seed") > 0) {
        std::cerr << "error: --seed is rejected; the tool is deterministic by design\n";
        return kExitUsage;
    }

    try {
        if (*cmd_parse) {
            icb::Instance inst = load_instance(instance_path, form);
            emit(icb::instance_to_json(inst, form_from_flag(emit_form)), format);
            return kExitOk;
        }
        if (*cmd_mais) {
            icb::Instance inst = load_instance(instance_path, form);
            icb::MaisResult r = icb::mais(inst);
            json j;
            j["mais_size"] = r.size;
            j["bound"] = icb::to_string(r.bound());
            j["witness"] = icb::to_external(r.witness);
            emit(j, format);
            return kExitOk;
        }
        if (*cmd_search) {
            icb::Instance inst = load_instance(instance_path, form);
            icb::SearchMode m = mode == "plain"       ? icb::SearchMode::kPlain
                                : mode == "singleton" ? icb::SearchMode::kSingleton
                                                      : icb::SearchMode::kDisjoint;
            icb::BoundReport r = icb::search_chains(inst, m, {max_m, max_height, budget});
            emit(icb::bound_report_to_json(r), format);
            return kExitOk;
        }
        if (*cmd_verify) {
            icb::Instance inst = load_instance(instance_path, form);
            icb::Chain chain = icb::chain_from_json(json::parse(slurp(certificate_path)));
            icb::VerifyResult v = icb::verify_chain(inst, chain);
            json j = verify_to_json(v);
            j["bound"] = v.ok ? json(icb::to_string(icb::cic_bound_unchecked(chain))) : json(nullptr);
            emit(j, format);
            return v.ok ? kExitOk : kExitViolation;
        }
        if (*cmd_dic) {
            icb::Instance inst = load_instance(instance_path, form);
            icb::CapacityMap cap = icb::capacities_from_json(json::parse(slurp(capacities_path)));
            if (cap.message_count() != inst.message_count())
                throw icb::ParseError("capacities and instance disagree on n");
            icb::Chain chain = icb::chain_from_json(json::parse(slurp(certificate_path)));
            std::vector<icb::ServerSum> terms;
            const bool singleton = chain.all_basic();
            icb::Rational bound = singleton
                                      ? icb::dic_bound_singleton(inst, cap, chain, &terms)
                                      : icb::dic_bound_disjoint(inst, cap, chain, &terms);
            json j;
            j["bound"] = icb::to_string(bound);
            j["formula"] = singleton ? "singleton" : "disjoint";
            json arr = json::array();
            for (const icb::ServerSum& t : terms) {
                json tj;
                tj["T_a"] = icb::to_external(t.t_a);
                tj["T_b"] = icb::to_external(t.t_b);
                tj["value"] = icb::to_string(t.value);
                arr.push_back(std::move(tj));
            }
            j["terms"] = std::move(arr);
            emit(j, format);
            return kExitOk;
        }
        if (*cmd_lp) {
            icb::Instance inst = load_instance(instance_path, form);
            icb::PmObjective obj = objective == "sum" ? icb::PmObjective::kSumRate
                                                      : icb::PmObjective::kSymmetricRate;
            icb::PmModel model = icb::build_pm_model(inst, obj, reduced);
            if (!zy_path.empty()) {
                json zj = json::parse(slurp(zy_path));
                for (const json& tuple : zj) {
                    if (!tuple.is_array() || tuple.size() != 4)
                        throw icb::ParseError("--zy entries must be arrays of four sets");
                    std::array<icb::Subset, 4> sets{};
                    for (int i = 0; i < 4; ++i) {
                        icb::Subset s = 0;
                        for (const json& v : tuple[i]) s |= icb::bit(v.get<int>() - 1);
                        sets[i] = s;
                    }
                    model.extra.push_back(icb::zy_instantiate(sets, inst));
                }
            }
            icb::PmSolveResult r = icb::solve(model);
            json j;
            j["value"] = icb::to_string(r.value);
            j["objective"] = objective == "sum" ? "sum-rate" : "symmetric-rate";
            json counts;
            counts["decoding"] = model.decoding_count();
            counts["monotonicity"] = model.monotonicity_count();
            counts["submodularity"] = model.submodularity_count();
            counts["capacity"] = model.capacity_count();
            counts["non_shannon"] = model.extra.size();
            counts["generated"] = r.generated_rows;
            j["constraints"] = std::move(counts);
            json vars;
            vars["g"] = model.g_variable_count();
            vars["rates"] = model.rate_variable_count();
            j["variables"] = std::move(vars);
            if (!export_path.empty()) {
                std::ofstream out(export_path);
                out << icb::export_pm_lp(model).dump(2) << "\n";
            }
            emit(j, format);
            return kExitOk;
        }
        if (*cmd_compare) {
            icb::Instance inst = load_instance(instance_path, form);
            icb::CompareOptions options;
            options.limits = {max_m, max_height, budget};
            options.with_lp = !no_lp;
            json j = icb::compare_report(inst, options);
            emit(j, format);
            return j["ordering_ok"].get<bool>() ? kExitOk : kExitViolation;
        }
    } catch (const icb::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
