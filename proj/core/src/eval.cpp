#include "geoshield/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "geoshield/error.hpp"

namespace geoshield::eval {

using detect::Label;

Metrics compute_metrics(const ConfusionCounts& c) {
    Metrics m;
    m.recall = (c.tp + c.fn) == 0 ? 0.0 : double(c.tp) / double(c.tp + c.fn);
    if (c.tp + c.fp == 0) {
        m.precision = 1.0;
        m.precision_by_convention = true;
    } else {
        m.precision = double(c.tp) / double(c.tp + c.fp);
    }
    m.fpr = (c.fp + c.tn) == 0 ? 0.0 : double(c.fp) / double(c.fp + c.tn);
    double pr = m.precision + m.recall;
    m.f1 = pr == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / pr;
    return m;
}

bool block_at_k(const std::vector<std::string>& pre, const std::vector<std::string>& post,
                const std::string& target_id, std::size_t k) {
    if (k < 1) throw UsageError("block_at_k: k must be >= 1");
    if (std::find(pre.begin(), pre.end(), target_id) == pre.end()) {
        throw DataError("block_at_k: target '" + target_id + "' not in pre-defense ranking");
    }
    auto it = std::find(post.begin(), post.end(), target_id);
    if (it == post.end()) {
        throw DataError("block_at_k: target '" + target_id + "' not in post-defense ranking");
    }
    std::size_t position = std::size_t(it - post.begin()) + 1;
    return position > k;
}

std::string defense_selector_name(const DefenseSelector& selector) {
    if (!selector.baseline) {
        const auto& t = selector.toggles;
        if (t.ppl && t.sis && t.icd) return "sci";
        std::string name = "sci[";
        if (t.ppl) name += "ppl,";
        if (t.sis) name += "sis,";
        if (t.icd) name += "icd,";
        name.back() = ']';
        return name;
    }
    switch (selector.baseline->kind) {
        case pipeline::BaselineKind::PplOnly: return "ppl_only";
        case pipeline::BaselineKind::SafetyClf: return "safety_clf";
        case pipeline::BaselineKind::Paraphrase:
            return "paraphrase:" +
                   std::string(providers::rewrite_variant_name(selector.baseline->variant));
    }
    return "sci";
}

namespace {

struct SliceAccumulator {
    ConfusionCounts counts;
    std::size_t targeted = 0;
    std::size_t blocked3 = 0;
    std::size_t blocked5 = 0;
};

std::string record_kind_name(const corpus::ProductRecord& record) {
    return record.is_attacked && record.attack_kind
               ? std::string(attack_kind_name(*record.attack_kind))
               : std::string("none");
}

GroupMetrics finalize_row(const std::string& category, const std::string& kind,
                          const SliceAccumulator& acc) {
    GroupMetrics row;
    row.category = category;
    row.attack_kind = kind;
    row.counts = acc.counts;
    row.metrics = compute_metrics(acc.counts);
    row.targeted_sets = acc.targeted;
    if (acc.targeted > 0) {
        row.block_at_3 = double(acc.blocked3) / double(acc.targeted);
        row.block_at_5 = double(acc.blocked5) / double(acc.targeted);
    }
    row.defpsr_at_3 = 1.0 - row.block_at_3;
    return row;
}

}  // namespace

MetricsReport build_report(const std::string& dataset_name, const std::string& defense_name,
                           const std::vector<corpus::CandidateSet>& sets,
                           const std::vector<pipeline::DefendedRanking>& rankings) {
    // Slices keyed by (category, attack kind). Clean records are negatives
    // for every attack slice of their category; categories with no attacks
    // get a "none" row so clean-corpus FPR is still reported.
    std::map<std::pair<std::string, std::string>, SliceAccumulator> slices;
    SliceAccumulator total;

    for (std::size_t s = 0; s < sets.size(); ++s) {
        const auto& set = sets[s];
        const auto& ranking = rankings[s];

        std::map<std::string, bool> flagged;
        for (const auto& outcome : ranking.outcomes) {
            flagged[outcome.record_id] = outcome.penalized;
        }

        std::vector<std::string> kinds_in_category;
        for (const auto& rec : set.records) {
            if (rec.is_attacked) kinds_in_category.push_back(record_kind_name(rec));
        }
        std::sort(kinds_in_category.begin(), kinds_in_category.end());
        kinds_in_category.erase(
            std::unique(kinds_in_category.begin(), kinds_in_category.end()),
            kinds_in_category.end());

        for (const auto& rec : set.records) {
            bool predicted = flagged.at(rec.id);
            auto tally = [&](SliceAccumulator& acc) {
                if (rec.is_attacked && predicted) ++acc.counts.tp;
                else if (rec.is_attacked) ++acc.counts.fn;
                else if (predicted) ++acc.counts.fp;
                else ++acc.counts.tn;
            };
            tally(total);
            if (rec.is_attacked) {
                tally(slices[{rec.category, record_kind_name(rec)}]);
            } else if (kinds_in_category.empty()) {
                tally(slices[{rec.category, "none"}]);
            } else {
                for (const auto& kind : kinds_in_category) {
                    tally(slices[{rec.category, kind}]);
                }
            }
        }

        if (set.target_id) {
            const corpus::ProductRecord* target = nullptr;
            for (const auto& rec : set.records) {
                if (rec.id == *set.target_id) target = &rec;
            }
            if (target == nullptr) {
                throw DataError("evaluate: target '" + *set.target_id + "' not in its set");
            }
            std::vector<std::string> pre_order = ranking.ordered_ids;  // same membership
            bool b3 = block_at_k(pre_order, ranking.ordered_ids, target->id, 3);
            bool b5 = block_at_k(pre_order, ranking.ordered_ids, target->id, 5);
            auto bump = [&](SliceAccumulator& acc) {
                ++acc.targeted;
                if (b3) ++acc.blocked3;
                if (b5) ++acc.blocked5;
            };
            bump(total);
            bump(slices[{target->category, record_kind_name(*target)}]);
        }
    }

    MetricsReport report;
    report.dataset = dataset_name;
    report.defense = defense_name;
    for (const auto& [key, acc] : slices) {
        report.rows.push_back(finalize_row(key.first, key.second, acc));
    }
    report.rows.push_back(finalize_row("all", "all", total));
    return report;
}

EvaluationRun evaluate_dataset(const corpus::Dataset& dataset, const DefenseSelector& selector,
                               const config::DefenseConfig& cfg,
                               const providers::ProviderSet& providers) {
    EvaluationRun run;
    run.rankings.reserve(dataset.sets.size());

    pipeline::BaselineIndex baselines;
    if (!selector.baseline) {
        baselines = pipeline::BaselineIndex::fit(dataset, *providers.embed);
    }
    for (const auto& set : dataset.sets) {
        if (selector.baseline) {
            run.rankings.push_back(pipeline::run_baseline(set, *selector.baseline, cfg, providers));
        } else {
            run.rankings.push_back(
                pipeline::run_sci_defense(set, cfg, providers, baselines, selector.toggles));
        }
    }
    run.report = build_report(dataset.manifest.name, defense_selector_name(selector),
                              dataset.sets, run.rankings);
    return run;
}

MetricsReport run_ablation(const corpus::Dataset& dataset,
                           const pipeline::ComponentToggles& toggles,
                           const config::DefenseConfig& cfg,
                           const providers::ProviderSet& providers) {
    if (!toggles.ppl && !toggles.sis && !toggles.icd) {
        throw UsageError("ablation: at least one component must stay enabled");
    }
    DefenseSelector selector;
    selector.toggles = toggles;
    return evaluate_dataset(dataset, selector, cfg, providers).report;
}

CalibrationGrid CalibrationGrid::defaults(const config::DefenseConfig& base) {
    CalibrationGrid grid;
    for (int s = 0; s <= 6; ++s) {
        double tau_s = 0.40 + 0.05 * s;
        for (double gap : {0.05, 0.10}) {
            GridPoint point{base.weights, base.thresholds, base.boost};
            point.thresholds.tau_s = tau_s;
            point.thresholds.tau_m = tau_s + gap;
            grid.points.push_back(point);
        }
    }
    return grid;
}

namespace {

// Lexicographic parameter order for the final calibration tie-break.
std::vector<double> point_key(const GridPoint& p) {
    return {p.thresholds.tau_ppl,
            p.thresholds.tau_s,
            p.thresholds.tau_m,
            p.thresholds.alpha,
            p.weights.lambda_aa,
            p.weights.lambda_np,
            p.weights.lambda_ca,
            p.weights.lambda_tc,
            double(int(p.boost.variant)),
            p.boost.theta_np,
            p.boost.theta_ca,
            p.boost.theta_tc,
            p.boost.theta_np_prime,
            p.boost.theta_maxdim,
            p.boost.beta};
}

struct RecordSignals {
    double ppl = 0.0;
    providers::DimScores dims;
    bool is_attacked = false;
};

}  // namespace

CalibrationResult calibrate(const std::vector<corpus::CandidateSet>& validation,
                            const CalibrationGrid& grid,
                            const providers::ProviderSet& providers) {
    if (grid.points.empty()) throw DataError("calibrate: empty grid");

    // Expensive provider calls happen once per record; every grid point is
    // then pure threshold arithmetic over these signals.
    std::vector<std::vector<RecordSignals>> signals(validation.size());
    std::vector<std::vector<providers::UnitVector>> embeddings(validation.size());
    bool any_attacked = false;
    for (std::size_t s = 0; s < validation.size(); ++s) {
        const auto& set = validation[s];
        signals[s].resize(set.records.size());
        embeddings[s].resize(set.records.size());
        for (std::size_t i = 0; i < set.records.size(); ++i) {
            std::string combined = corpus::concat_description(set.records[i]);
            signals[s][i].ppl = providers.perplexity->perplexity(combined);
            signals[s][i].dims = providers.judge->judge_dimensions(combined);
            signals[s][i].is_attacked = set.records[i].is_attacked;
            embeddings[s][i] = providers.embed->embed(combined);
            any_attacked |= set.records[i].is_attacked;
        }
    }
    if (!any_attacked) throw DataError("calibrate: validation data has no attacked records");

    auto baselines = pipeline::BaselineIndex::fit(validation, *providers.embed);

    // s_icd only depends on which records pass the perplexity gate, so
    // cache it per distinct tau_ppl in the grid.
    std::map<double, std::vector<std::vector<double>>> icd_cache;
    auto icd_for = [&](double tau_ppl) -> const std::vector<std::vector<double>>& {
        auto it = icd_cache.find(tau_ppl);
        if (it != icd_cache.end()) return it->second;
        std::vector<std::vector<double>> icd(validation.size());
        for (std::size_t s = 0; s < validation.size(); ++s) {
            const auto& set = validation[s];
            icd[s].assign(set.records.size(), 0.5);
            for (std::size_t i = 0; i < set.records.size(); ++i) {
                if (signals[s][i].ppl > tau_ppl) continue;
                std::vector<providers::UnitVector> peers;
                for (std::size_t j = 0; j < set.records.size(); ++j) {
                    if (j != i && signals[s][j].ppl <= tau_ppl) peers.push_back(embeddings[s][j]);
                }
                if (peers.empty()) continue;  // stays at the neutral 0.5
                const auto* baseline = baselines.find(set.records[i].category);
                if (baseline == nullptr) {
                    throw DataError("calibrate: no fitted baseline for category '" +
                                    set.records[i].category + "'");
                }
                icd[s][i] = detect::icd_score(embeddings[s][i], peers, *baseline);
            }
        }
        return icd_cache.emplace(tau_ppl, std::move(icd)).first->second;
    };

    struct Scored {
        std::size_t index;
        Metrics metrics;
    };
    std::vector<Scored> scored;
    scored.reserve(grid.points.size());
    for (std::size_t p = 0; p < grid.points.size(); ++p) {
        const auto& point = grid.points[p];
        const auto& icd = icd_for(point.thresholds.tau_ppl);
        ConfusionCounts counts;
        for (std::size_t s = 0; s < signals.size(); ++s) {
            for (std::size_t i = 0; i < signals[s].size(); ++i) {
                const auto& sig = signals[s][i];
                bool flag;
                if (detect::ppl_gate(sig.ppl, point.thresholds)) {
                    flag = true;
                } else {
                    double s_sis = detect::sis_score(sig.dims, point.weights, point.boost);
                    double s_final = detect::blend_scores(s_sis, icd[s][i], point.thresholds);
                    flag = detect::classify_label(s_final, point.thresholds) != Label::Clean;
                }
                if (sig.is_attacked && flag) ++counts.tp;
                else if (sig.is_attacked) ++counts.fn;
                else if (flag) ++counts.fp;
                else ++counts.tn;
            }
        }
        scored.push_back({p, compute_metrics(counts)});
    }

    // Max F1, ties to higher recall, then lower tau_s, then lexicographic
    // parameter order.
    auto better = [&](const Scored& a, const Scored& b) {
        if (a.metrics.f1 != b.metrics.f1) return a.metrics.f1 > b.metrics.f1;
        if (a.metrics.recall != b.metrics.recall) return a.metrics.recall > b.metrics.recall;
        double tau_a = grid.points[a.index].thresholds.tau_s;
        double tau_b = grid.points[b.index].thresholds.tau_s;
        if (tau_a != tau_b) return tau_a < tau_b;
        return point_key(grid.points[a.index]) < point_key(grid.points[b.index]);
    };

    const Scored* best = nullptr;
    bool zero_fpr_exists = false;
    for (const auto& candidate : scored) {
        if (candidate.metrics.fpr == 0.0) {
            if (!zero_fpr_exists) {
                zero_fpr_exists = true;
                best = &candidate;
            } else if (better(candidate, *best)) {
                best = &candidate;
            }
        }
    }
    if (!zero_fpr_exists) {
        // Frontier fallback: minimum FPR first, then the same F1 ordering.
        for (const auto& candidate : scored) {
            if (best == nullptr || candidate.metrics.fpr < best->metrics.fpr ||
                (candidate.metrics.fpr == best->metrics.fpr && better(candidate, *best))) {
                best = &candidate;
            }
        }
    }

    CalibrationResult result;
    result.chosen = grid.points[best->index];
    result.f1 = best->metrics.f1;
    result.fpr = best->metrics.fpr;
    result.recall = best->metrics.recall;
    result.grid_size = grid.points.size();
    result.no_zero_fpr_point = !zero_fpr_exists;
    return result;
}

namespace {

std::string fmt3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

}  // namespace

std::string render_report(const MetricsReport& report, ReportFormat format) {
    if (format == ReportFormat::Jsonl) {
        std::string out;
        for (const auto& row : report.rows) {
            nlohmann::json j;
            j["dataset"] = report.dataset;
            j["category"] = row.category;
            j["attack_kind"] = row.attack_kind;
            j["defense"] = report.defense;
            j["recall"] = fmt3(row.metrics.recall);
            j["precision"] = fmt3(row.metrics.precision);
            j["f1"] = fmt3(row.metrics.f1);
            j["fpr"] = fmt3(row.metrics.fpr);
            j["block_at_3"] = fmt3(row.block_at_3);
            j["block_at_5"] = fmt3(row.block_at_5);
            j["defpsr_at_3"] = fmt3(row.defpsr_at_3);
            out += j.dump();
            out += '\n';
        }
        return out;
    }

    std::string out;
    out += "| Category | Attack | Recall | Precision | F1 | FPR | Block@3 | Block@5 | DefPSR@3 |\n";
    out += "|---|---|---|---|---|---|---|---|---|\n";
    for (const auto& row : report.rows) {
        out += "| " + row.category + " | " + row.attack_kind + " | " + fmt3(row.metrics.recall) +
               " | " + fmt3(row.metrics.precision) + " | " + fmt3(row.metrics.f1) + " | " +
               fmt3(row.metrics.fpr) + " | " + fmt3(row.block_at_3) + " | " +
               fmt3(row.block_at_5) + " | " + fmt3(row.defpsr_at_3) + " |\n";
    }
    return out;
}

void emit_report(const MetricsReport& report, ReportFormat format, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write report: " + path);
    out << render_report(report, format);
    if (!out) throw DataError("report write failed: " + path);
}

}  // namespace geoshield::eval
