// geoshield command-line front end.
//
// Subcommands: attack, defend, evaluate, recover, calibrate, report.
// Every run writes a RunManifest next to its primary output. Exit codes:
// 0 success, 1 usage error, 2 data error, 3 provider error.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "geoshield/attacks.hpp"
#include "geoshield/config.hpp"
#include "geoshield/corpus.hpp"
#include "geoshield/error.hpp"
#include "geoshield/eval.hpp"
#include "geoshield/pipeline.hpp"
#include "geoshield/recovery.hpp"
#include "geoshield/reference_providers.hpp"
#include "geoshield/remote_providers.hpp"

namespace gs = geoshield;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct CommonOpts {
    std::string dataset_path;
    std::string config_path;
    std::string providers = "reference";
    std::uint64_t seed = 0;
    int jobs = 1;
    bool skip_invalid = false;
    bool best_effort = false;

    // Config overrides; only values the user actually passed are applied.
    std::map<std::string, double> overrides;
    std::string boost_variant;
};

void add_common_flags(CLI::App* cmd, CommonOpts& opts, bool needs_dataset = true) {
    auto* ds = cmd->add_option("--dataset", opts.dataset_path, "Input JSONL dataset");
    if (needs_dataset) ds->required();
    cmd->add_option("--config", opts.config_path, "JSON config file; flags override it");
    cmd->add_option("--providers", opts.providers, "Provider kind: reference or remote")
        ->check(CLI::IsMember({"reference", "remote"}));
    cmd->add_option("--seed", opts.seed, "Seed for any randomized step");
    cmd->add_option("--jobs", opts.jobs, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_flag("--skip-invalid", opts.skip_invalid, "Skip malformed dataset lines");
    cmd->add_flag("--best-effort", opts.best_effort,
                  "Downgrade per-record provider failures instead of aborting");

    // Detection parameters, mirroring the config keys one-to-one.
    for (const char* key : {"tau-ppl", "tau-s", "tau-m", "alpha", "beta", "weights-aa",
                            "weights-np", "weights-ca", "weights-tc", "boost-theta-np",
                            "boost-theta-ca", "boost-theta-tc", "boost-theta-np-prime",
                            "boost-theta-maxdim"}) {
        std::string name = key;
        cmd->add_option_function<double>(
            "--" + name, [&opts, name](double v) { opts.overrides[name] = v; },
            "Config key " + name);
    }
    cmd->add_option("--boost-variant", opts.boost_variant,
                    "Boost rule: algorithm_one or revised_maxdim")
        ->check(CLI::IsMember({"algorithm_one", "revised_maxdim"}));
}

gs::config::DefenseConfig resolve_config(const CommonOpts& opts) {
    gs::config::DefenseConfig cfg;
    if (!opts.config_path.empty()) cfg = gs::config::load_config_file(opts.config_path);
    cfg.provider_kind = opts.providers == "remote" ? gs::providers::ProviderKind::Remote
                                                   : gs::providers::ProviderKind::Reference;
    cfg.fail_fast = !opts.best_effort;
    for (const auto& [key, value] : opts.overrides) {
        if (key == "tau-ppl") cfg.thresholds.tau_ppl = value;
        else if (key == "tau-s") cfg.thresholds.tau_s = value;
        else if (key == "tau-m") cfg.thresholds.tau_m = value;
        else if (key == "alpha") cfg.thresholds.alpha = value;
        else if (key == "beta") cfg.boost.beta = value;
        else if (key == "weights-aa") cfg.weights.lambda_aa = value;
        else if (key == "weights-np") cfg.weights.lambda_np = value;
        else if (key == "weights-ca") cfg.weights.lambda_ca = value;
        else if (key == "weights-tc") cfg.weights.lambda_tc = value;
        else if (key == "boost-theta-np") cfg.boost.theta_np = value;
        else if (key == "boost-theta-ca") cfg.boost.theta_ca = value;
        else if (key == "boost-theta-tc") cfg.boost.theta_tc = value;
        else if (key == "boost-theta-np-prime") cfg.boost.theta_np_prime = value;
        else if (key == "boost-theta-maxdim") cfg.boost.theta_maxdim = value;
    }
    if (opts.boost_variant == "algorithm_one") {
        cfg.boost.variant = gs::detect::BoostVariant::AlgorithmOne;
    } else if (opts.boost_variant == "revised_maxdim") {
        cfg.boost.variant = gs::detect::BoostVariant::RevisedMaxDim;
    }
    gs::config::validate(cfg);
    return cfg;
}

gs::providers::ProviderSet resolve_providers(const gs::config::DefenseConfig& cfg) {
    if (cfg.provider_kind == gs::providers::ProviderKind::Remote) {
        return gs::remote::make_remote_providers();
    }
    return gs::providers::make_reference_providers();
}

gs::eval::DefenseSelector parse_defense(const std::string& name) {
    gs::eval::DefenseSelector selector;
    if (name == "sci") return selector;
    gs::pipeline::BaselineSpec spec;
    if (name == "ppl_only") {
        spec.kind = gs::pipeline::BaselineKind::PplOnly;
    } else if (name == "safety_clf") {
        spec.kind = gs::pipeline::BaselineKind::SafetyClf;
    } else if (name.rfind("paraphrase", 0) == 0) {
        spec.kind = gs::pipeline::BaselineKind::Paraphrase;
        if (auto colon = name.find(':'); colon != std::string::npos) {
            auto variant = gs::providers::parse_rewrite_variant(name.substr(colon + 1));
            if (!variant) throw gs::UsageError("unknown rewrite variant in '" + name + "'");
            spec.variant = *variant;
        }
    } else {
        throw gs::UsageError("unknown defense '" + name +
                             "' (expected sci, ppl_only, safety_clf, or paraphrase[:variant])");
    }
    selector.baseline = spec;
    return selector;
}

std::string iso_timestamp() {
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_manifest(const std::string& out_path, const std::vector<std::string>& argv,
                    const gs::config::DefenseConfig& cfg,
                    const gs::corpus::DatasetManifest* manifest, std::uint64_t seed) {
    json j;
    std::string cmd;
    for (const auto& arg : argv) {
        if (!cmd.empty()) cmd += ' ';
        cmd += arg;
    }
    j["command"] = cmd;
    j["config_hash"] = gs::config::config_hash(cfg);
    j["config"] = json::parse(gs::config::to_canonical_json(cfg));
    if (manifest != nullptr) {
        j["dataset"]["name"] = manifest->name;
        j["dataset"]["source"] = std::string(gs::corpus::dataset_source_name(manifest->source));
        j["dataset"]["categories"] = manifest->categories;
        j["dataset"]["record_count"] = manifest->record_count;
    }
    j["providers"] =
        cfg.provider_kind == gs::providers::ProviderKind::Remote ? "remote" : "reference";
    j["seed"] = seed;
    j["timestamp"] = iso_timestamp();
    j["version"] = kVersion;

    std::ofstream out(out_path + ".manifest.json", std::ios::binary);
    if (!out) throw gs::DataError("cannot write manifest for " + out_path);
    out << j.dump(2) << '\n';
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw gs::DataError("cannot write " + path);
    out << content;
    if (!out) throw gs::DataError("write failed: " + path);
}

// Deterministic index-sharded worker pool: output slot i is always
// computed from input i, so thread count never changes results.
template <typename Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
    int workers = std::max(1, std::min<int>(jobs, int(n)));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors;
    errors.resize(std::size_t(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = std::size_t(w); i < n; i += std::size_t(workers)) fn(i);
            } catch (...) {
                errors[std::size_t(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

std::string audit_jsonl(const std::string& dataset_name, const std::string& defense_name,
                        const std::vector<gs::corpus::CandidateSet>& sets,
                        const std::vector<gs::pipeline::DefendedRanking>& rankings) {
    std::string out;
    {
        json header;
        header["audit_version"] = 1;
        header["dataset"] = dataset_name;
        header["defense"] = defense_name;
        out += header.dump();
        out += '\n';
    }
    for (std::size_t s = 0; s < sets.size(); ++s) {
        const auto& set = sets[s];
        std::map<std::string, const gs::corpus::ProductRecord*> by_id;
        for (const auto& rec : set.records) by_id[rec.id] = &rec;
        for (const auto& outcome : rankings[s].outcomes) {
            const auto& rec = *by_id.at(outcome.record_id);
            const auto& br = outcome.breakdown;
            json j;
            j["set_index"] = s;
            j["query"] = set.query;
            j["record_id"] = outcome.record_id;
            j["category"] = rec.category;
            j["attack_kind"] = rec.is_attacked && rec.attack_kind
                                   ? std::string(gs::attack_kind_name(*rec.attack_kind))
                                   : "none";
            j["is_attacked"] = rec.is_attacked;
            j["is_target"] = set.target_id && *set.target_id == rec.id;
            j["ppl"] = br.ppl;
            j["aa"] = br.dims.aa;
            j["np"] = br.dims.np;
            j["ca"] = br.dims.ca;
            j["tc"] = br.dims.tc;
            j["s_base"] = br.s_base;
            j["boosted"] = br.boosted;
            j["s_sis"] = br.s_sis;
            j["s_icd"] = br.s_icd;
            j["s_final"] = br.s_final;
            j["label"] = std::string(gs::detect::label_name(br.label));
            j["ppl_short_circuited"] = br.ppl_short_circuited;
            j["pre_rank"] = outcome.pre_rank;
            j["post_rank"] = outcome.post_rank;
            j["penalized"] = outcome.penalized;
            j["note"] = outcome.audit_note;
            out += j.dump();
            out += '\n';
        }
    }
    return out;
}

struct AuditFile {
    std::string dataset;
    std::string defense;
    std::vector<gs::corpus::CandidateSet> sets;
    std::vector<gs::pipeline::DefendedRanking> rankings;
};

AuditFile load_audit(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw gs::DataError("cannot read audit file: " + path);

    AuditFile audit;
    std::string line;
    if (!std::getline(in, line)) throw gs::DataError("audit file is empty: " + path);
    json header;
    try {
        header = json::parse(line);
    } catch (const json::exception& e) {
        throw gs::DataError(std::string("audit header: ") + e.what());
    }
    if (!header.contains("audit_version")) throw gs::DataError("not an audit file: " + path);
    audit.dataset = header.value("dataset", "");
    audit.defense = header.value("defense", "");

    std::map<std::size_t, std::vector<json>> by_set;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            json j = json::parse(line);
            by_set[j.at("set_index").get<std::size_t>()].push_back(std::move(j));
        } catch (const json::exception& e) {
            throw gs::DataError("audit line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (by_set.empty()) throw gs::DataError("audit file has no outcome rows: " + path);

    for (auto& [index, rows] : by_set) {
        (void)index;
        gs::corpus::CandidateSet set;
        gs::pipeline::DefendedRanking ranking;
        set.query = rows.front().value("query", "");
        ranking.query = set.query;
        ranking.ordered_ids.resize(rows.size());
        for (const auto& j : rows) {
            gs::corpus::ProductRecord rec;
            rec.id = j.at("record_id").get<std::string>();
            rec.category = j.at("category").get<std::string>();
            rec.title = rec.id;
            rec.base_description = "(from audit)";
            rec.is_attacked = j.at("is_attacked").get<bool>();
            if (rec.is_attacked) {
                rec.injected_text = "(from audit)";
                rec.attack_kind = gs::parse_attack_kind(j.at("attack_kind").get<std::string>());
            }
            if (j.at("is_target").get<bool>()) set.target_id = rec.id;
            set.records.push_back(std::move(rec));

            gs::pipeline::DefenseOutcome outcome;
            outcome.record_id = j.at("record_id").get<std::string>();
            outcome.pre_rank = j.at("pre_rank").get<std::size_t>();
            outcome.post_rank = j.at("post_rank").get<std::size_t>();
            outcome.penalized = j.at("penalized").get<bool>();
            outcome.breakdown.label = outcome.penalized ? gs::detect::Label::Suspicious
                                                        : gs::detect::Label::Clean;
            if (outcome.post_rank == 0 || outcome.post_rank > rows.size()) {
                throw gs::DataError("audit: post_rank out of range for '" + outcome.record_id +
                                    "'");
            }
            ranking.ordered_ids[outcome.post_rank - 1] = outcome.record_id;
            ranking.outcomes.push_back(std::move(outcome));
        }
        audit.sets.push_back(std::move(set));
        audit.rankings.push_back(std::move(ranking));
    }
    return audit;
}

int run(int argc, char** argv) {
    CLI::App app{"Detection and red-team toolkit for LLM-ranked candidate sets"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    std::vector<std::string> raw_args(argv, argv + argc);

    // --- attack ---
    CommonOpts attack_opts;
    std::string attack_kind_name, attack_out, templates_dir;
    double intensity = 1.0;
    auto* attack_cmd = app.add_subcommand("attack", "Inject seeded attack text into targets");
    add_common_flags(attack_cmd, attack_opts);
    attack_cmd->add_option("--kind", attack_kind_name, "Attack kind")->required();
    attack_cmd->add_option("--intensity", intensity, "Injection length scale in (0,1]");
    attack_cmd->add_option("--templates", templates_dir, "Directory of template overrides");
    attack_cmd->add_option("--out", attack_out, "Output JSONL path")->required();

    // --- defend ---
    CommonOpts defend_opts;
    std::string defend_defense = "sci", defend_out;
    auto* defend_cmd = app.add_subcommand("defend", "Run the defense and write an audit log");
    add_common_flags(defend_cmd, defend_opts);
    defend_cmd->add_option("--defense", defend_defense,
                           "sci, ppl_only, safety_clf, or paraphrase[:variant]");
    defend_cmd->add_option("--out", defend_out, "Audit JSONL path")->required();

    // --- evaluate ---
    CommonOpts eval_opts;
    std::string eval_defense = "sci", eval_report_out, eval_markdown_out, eval_audit_out;
    auto* eval_cmd = app.add_subcommand("evaluate", "Defend, score, and emit a report");
    add_common_flags(eval_cmd, eval_opts);
    eval_cmd->add_option("--defense", eval_defense,
                         "sci, ppl_only, safety_clf, or paraphrase[:variant]");
    eval_cmd->add_option("--report-out", eval_report_out, "Report JSONL path")->required();
    eval_cmd->add_option("--markdown-out", eval_markdown_out, "Optional markdown table path");
    eval_cmd->add_option("--audit-out", eval_audit_out, "Optional audit JSONL path");

    // --- recover ---
    CommonOpts recover_opts;
    std::string recover_method = "two_stage", recover_out;
    auto* recover_cmd = app.add_subcommand("recover", "Strip injections from attacked records");
    add_common_flags(recover_cmd, recover_opts);
    recover_cmd->add_option("--method", recover_method,
                            "ppl_truncation, pattern_cut, llm_extraction, hybrid, or two_stage");
    recover_cmd->add_option("--out", recover_out, "Recovery JSONL path")->required();

    // --- calibrate ---
    CommonOpts cal_opts;
    std::string cal_out;
    auto* cal_cmd = app.add_subcommand("calibrate", "Grid-search thresholds on validation data");
    add_common_flags(cal_cmd, cal_opts);
    cal_cmd->add_option("--out", cal_out, "Calibration result JSON path")->required();

    // --- report ---
    CommonOpts report_opts;
    std::string report_audit_in, report_out, report_format = "markdown";
    auto* report_cmd = app.add_subcommand("report", "Re-render a stored audit log");
    add_common_flags(report_cmd, report_opts, /*needs_dataset=*/false);
    report_cmd->add_option("--audit", report_audit_in, "Audit JSONL from a defend run")
        ->required();
    report_cmd->add_option("--format", report_format, "jsonl or markdown")
        ->check(CLI::IsMember({"jsonl", "markdown"}));
    report_cmd->add_option("--out", report_out, "Output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    if (attack_cmd->parsed()) {
        auto cfg = resolve_config(attack_opts);
        auto kind = gs::parse_attack_kind(attack_kind_name);
        if (!kind) throw gs::UsageError("unknown attack kind '" + attack_kind_name + "'");
        auto dataset =
            gs::corpus::load_dataset(attack_opts.dataset_path, {attack_opts.skip_invalid});
        gs::attacks::TemplateLibrary library;
        if (!templates_dir.empty()) {
            library = gs::attacks::TemplateLibrary::from_directory(templates_dir);
        }
        gs::attacks::AttackSpec spec{*kind, intensity, attack_opts.seed};
        for (auto& set : dataset.sets) {
            std::size_t target = 0;
            if (set.target_id) {
                while (target < set.records.size() && set.records[target].id != *set.target_id) {
                    ++target;
                }
                if (target == set.records.size()) {
                    throw gs::DataError("target '" + *set.target_id + "' not in its set");
                }
            } else {
                set.target_id = set.records.front().id;
            }
            set.records[target] = gs::attacks::apply_attack(set.records[target], spec, library);
        }
        gs::corpus::save_dataset(dataset, attack_out);
        write_manifest(attack_out, raw_args, cfg, &dataset.manifest, attack_opts.seed);
        return 0;
    }

    if (defend_cmd->parsed() || eval_cmd->parsed()) {
        const CommonOpts& opts = defend_cmd->parsed() ? defend_opts : eval_opts;
        auto cfg = resolve_config(opts);
        auto providers = resolve_providers(cfg);
        auto selector = parse_defense(defend_cmd->parsed() ? defend_defense : eval_defense);
        auto dataset = gs::corpus::load_dataset(opts.dataset_path, {opts.skip_invalid});

        gs::pipeline::BaselineIndex baselines;
        if (!selector.baseline) {
            baselines = gs::pipeline::BaselineIndex::fit(dataset, *providers.embed);
        }
        std::vector<gs::pipeline::DefendedRanking> rankings(dataset.sets.size());
        parallel_for(dataset.sets.size(), opts.jobs, [&](std::size_t i) {
            if (selector.baseline) {
                rankings[i] =
                    gs::pipeline::run_baseline(dataset.sets[i], *selector.baseline, cfg, providers);
            } else {
                rankings[i] = gs::pipeline::run_sci_defense(dataset.sets[i], cfg, providers,
                                                            baselines, selector.toggles);
            }
        });

        std::string defense_name = gs::eval::defense_selector_name(selector);
        if (defend_cmd->parsed()) {
            write_file(defend_out,
                       audit_jsonl(dataset.manifest.name, defense_name, dataset.sets, rankings));
            write_manifest(defend_out, raw_args, cfg, &dataset.manifest, opts.seed);
            return 0;
        }

        auto report =
            gs::eval::build_report(dataset.manifest.name, defense_name, dataset.sets, rankings);
        gs::eval::emit_report(report, gs::eval::ReportFormat::Jsonl, eval_report_out);
        if (!eval_markdown_out.empty()) {
            gs::eval::emit_report(report, gs::eval::ReportFormat::MarkdownTable,
                                  eval_markdown_out);
        }
        if (!eval_audit_out.empty()) {
            write_file(eval_audit_out,
                       audit_jsonl(dataset.manifest.name, defense_name, dataset.sets, rankings));
        }
        write_manifest(eval_report_out, raw_args, cfg, &dataset.manifest, opts.seed);
        return 0;
    }

    if (recover_cmd->parsed()) {
        auto cfg = resolve_config(recover_opts);
        auto providers = resolve_providers(cfg);
        auto method = gs::recovery::parse_recovery_method(recover_method);
        if (!method) throw gs::UsageError("unknown recovery method '" + recover_method + "'");
        auto dataset =
            gs::corpus::load_dataset(recover_opts.dataset_path, {recover_opts.skip_invalid});

        std::vector<const gs::corpus::ProductRecord*> attacked;
        for (const auto& set : dataset.sets) {
            for (const auto& rec : set.records) {
                if (rec.is_attacked) attacked.push_back(&rec);
            }
        }
        std::vector<std::string> recovered(attacked.size());
        parallel_for(attacked.size(), recover_opts.jobs, [&](std::size_t i) {
            recovered[i] = gs::recovery::recover_record(*attacked[i], *method, providers);
        });

        std::string out;
        for (std::size_t i = 0; i < attacked.size(); ++i) {
            const auto& rec = *attacked[i];
            json j;
            j["record_id"] = rec.id;
            j["attack_kind"] = rec.attack_kind
                                   ? std::string(gs::attack_kind_name(*rec.attack_kind))
                                   : "none";
            j["method"] = std::string(gs::recovery::recovery_method_name(*method));
            j["recovered"] = recovered[i];
            j["similarity"] = gs::recovery::composite_similarity(rec.base_description,
                                                                 recovered[i], *providers.embed);
            out += j.dump();
            out += '\n';
        }
        write_file(recover_out, out);
        write_manifest(recover_out, raw_args, cfg, &dataset.manifest, recover_opts.seed);
        return 0;
    }

    if (cal_cmd->parsed()) {
        auto cfg = resolve_config(cal_opts);
        auto providers = resolve_providers(cfg);
        auto dataset = gs::corpus::load_dataset(cal_opts.dataset_path, {cal_opts.skip_invalid});
        auto grid = gs::eval::CalibrationGrid::defaults(cfg);
        auto result = gs::eval::calibrate(dataset.sets, grid, providers);

        json j;
        j["tau_ppl"] = result.chosen.thresholds.tau_ppl;
        j["tau_s"] = result.chosen.thresholds.tau_s;
        j["tau_m"] = result.chosen.thresholds.tau_m;
        j["alpha"] = result.chosen.thresholds.alpha;
        j["beta"] = result.chosen.boost.beta;
        j["weights"]["aa"] = result.chosen.weights.lambda_aa;
        j["weights"]["np"] = result.chosen.weights.lambda_np;
        j["weights"]["ca"] = result.chosen.weights.lambda_ca;
        j["weights"]["tc"] = result.chosen.weights.lambda_tc;
        j["f1"] = result.f1;
        j["fpr"] = result.fpr;
        j["recall"] = result.recall;
        j["grid_size"] = result.grid_size;
        j["no_zero_fpr_point"] = result.no_zero_fpr_point;
        write_file(cal_out, j.dump(2) + "\n");
        write_manifest(cal_out, raw_args, cfg, &dataset.manifest, cal_opts.seed);
        if (result.no_zero_fpr_point) {
            std::cerr << "warning: no zero-FPR grid point; returned the min-FPR frontier point\n";
        }
        return 0;
    }

    if (report_cmd->parsed()) {
        auto cfg = resolve_config(report_opts);
        auto audit = load_audit(report_audit_in);
        auto report =
            gs::eval::build_report(audit.dataset, audit.defense, audit.sets, audit.rankings);
        auto format = report_format == "jsonl" ? gs::eval::ReportFormat::Jsonl
                                               : gs::eval::ReportFormat::MarkdownTable;
        gs::eval::emit_report(report, format, report_out);
        write_manifest(report_out, raw_args, cfg, nullptr, report_opts.seed);
        return 0;
    }

    throw gs::UsageError("no subcommand selected");
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const gs::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        switch (e.kind()) {
            case gs::ErrorKind::Usage: return 1;
            case gs::ErrorKind::Data: return 2;
            case gs::ErrorKind::Provider: return 3;
        }
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
