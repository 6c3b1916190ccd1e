#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "geoshield/config.hpp"
#include "geoshield/corpus.hpp"
#include "geoshield/pipeline.hpp"

namespace geoshield::eval {

struct ConfusionCounts {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    std::size_t tn = 0;
};

struct Metrics {
    double recall = 0.0;
    double precision = 0.0;
    double f1 = 0.0;
    double fpr = 0.0;
    /// True when precision is 1.0 only by the no-predicted-positives
    /// convention rather than by actual true positives.
    bool precision_by_convention = false;
};

/// recall = tp/(tp+fn), 0 when there are no positives; precision =
/// tp/(tp+fp), 1 by convention when nothing was predicted positive;
/// fpr = fp/(fp+tn), 0 when there are no negatives; f1 harmonic (0 when
/// precision + recall = 0).
Metrics compute_metrics(const ConfusionCounts& counts);

/// One report row: metrics for a (category, attack_kind) slice. The
/// aggregate row uses "all" for both.
struct GroupMetrics {
    std::string category;
    std::string attack_kind;
    ConfusionCounts counts;
    Metrics metrics;
    double block_at_3 = 0.0;
    double block_at_5 = 0.0;
    double defpsr_at_3 = 1.0;  // always 1 - block_at_3
    std::size_t targeted_sets = 0;
};

struct MetricsReport {
    std::string dataset;
    std::string defense;
    std::vector<GroupMetrics> rows;  // sorted (category, attack_kind), aggregate last
};

/// True iff the target sits outside the top k of the post-defense
/// ranking (position k itself still counts as "in"). Throws DataError
/// when the target is missing from either ranking.
bool block_at_k(const std::vector<std::string>& pre, const std::vector<std::string>& post,
                const std::string& target_id, std::size_t k);

/// Which defense to evaluate: the full pipeline when `baseline` is empty.
struct DefenseSelector {
    std::optional<pipeline::BaselineSpec> baseline;
    pipeline::ComponentToggles toggles;
};

std::string defense_selector_name(const DefenseSelector& selector);

struct EvaluationRun {
    std::vector<pipeline::DefendedRanking> rankings;  // one per candidate set
    MetricsReport report;
};

/// Score already-defended rankings against ground truth. Rows cover each
/// (category, attack kind) slice — clean records of a category count as
/// that slice's negatives — plus the aggregate row.
MetricsReport build_report(const std::string& dataset_name, const std::string& defense_name,
                           const std::vector<corpus::CandidateSet>& sets,
                           const std::vector<pipeline::DefendedRanking>& rankings);

/// Defend every candidate set, then build_report the outcomes.
EvaluationRun evaluate_dataset(const corpus::Dataset& dataset, const DefenseSelector& selector,
                               const config::DefenseConfig& cfg,
                               const providers::ProviderSet& providers);

/// Metrics with a subset of {ppl, sis, icd} active. Throws UsageError
/// when every toggle is off.
MetricsReport run_ablation(const corpus::Dataset& dataset,
                           const pipeline::ComponentToggles& toggles,
                           const config::DefenseConfig& cfg,
                           const providers::ProviderSet& providers);

/// One candidate parameterization for grid search.
struct GridPoint {
    detect::SISWeights weights;
    detect::Thresholds thresholds;
    detect::BoostRule boost;
};

struct CalibrationGrid {
    std::vector<GridPoint> points;

    /// tau_s in {0.40..0.70 step 0.05}, tau_m = tau_s + {0.05, 0.10},
    /// other parameters at their defaults.
    static CalibrationGrid defaults(const config::DefenseConfig& base);
};

struct CalibrationResult {
    GridPoint chosen;
    double f1 = 0.0;
    double fpr = 0.0;
    double recall = 0.0;
    std::size_t grid_size = 0;
    /// Set when no grid point reached FPR = 0 and the min-FPR/max-F1
    /// frontier point was returned instead.
    bool no_zero_fpr_point = false;
};

/// Exhaustive grid search maximizing F1 subject to FPR = 0. Ties break
/// by higher recall, then lower tau_s, then lexicographic parameter
/// order. Throws DataError on an empty grid or when the validation data
/// has no attacked records.
CalibrationResult calibrate(const std::vector<corpus::CandidateSet>& validation,
                            const CalibrationGrid& grid,
                            const providers::ProviderSet& providers);

enum class ReportFormat { Jsonl, MarkdownTable };

/// Deterministic serialization; the jsonl rows carry dataset, category,
/// attack_kind, defense, recall, precision, f1, fpr, block_at_3,
/// block_at_5, defpsr_at_3.
std::string render_report(const MetricsReport& report, ReportFormat format);
void emit_report(const MetricsReport& report, ReportFormat format, const std::string& path);

}  // namespace geoshield::eval
