#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "geoshield/providers.hpp"

namespace geoshield::detect {

using providers::DimScores;
using providers::UnitVector;

/// Per-dimension weights for the composite semantic score. Must sum to 1.
struct SISWeights {
    double lambda_aa = 0.30;
    double lambda_np = 0.25;
    double lambda_ca = 0.25;
    double lambda_tc = 0.20;
};

bool weights_valid(const SISWeights& w);

enum class BoostVariant {
    /// (np >= theta_np) OR (ca >= theta_ca) OR (tc >= theta_tc AND np >= theta_np_prime)
    AlgorithmOne,
    /// max(aa,np,ca,tc) >= theta_maxdim AND (np >= theta_np OR ca >= theta_ca).
    /// Fixes the spurious boost where AA and TC alone fire on legitimate text.
    RevisedMaxDim,
};

struct BoostRule {
    BoostVariant variant = BoostVariant::RevisedMaxDim;
    double theta_np = 0.5;
    double theta_ca = 0.5;
    double theta_tc = 0.7;        // AlgorithmOne only
    double theta_np_prime = 0.3;  // AlgorithmOne only
    double theta_maxdim = 0.65;   // RevisedMaxDim only
    double beta = 1.5;            // boost multiplier, >= 1
};

struct Thresholds {
    double tau_ppl = 500.0;
    double tau_s = 0.55;
    double tau_m = 0.65;  // invariant: tau_m > tau_s
    double alpha = 0.9;   // blend weight on the semantic score
};

enum class Label { Clean, Suspicious, Manipulated };

std::string_view label_name(Label label);

/// Full per-candidate score audit trail.
struct ScoreBreakdown {
    double ppl = 0.0;
    DimScores dims;
    double s_base = 0.0;
    bool boosted = false;
    double s_sis = 0.0;
    double s_icd = 0.0;
    double s_final = 0.0;
    Label label = Label::Clean;
    bool ppl_short_circuited = false;
};

/// Within-category similarity statistics fitted on legitimate records.
struct CategoryBaseline {
    double mean = 0.0;
    double stddev = 0.0;
    std::size_t pair_count = 0;

    bool fitted() const { return pair_count >= 2; }
};

/// Mean/stddev of pairwise cosine similarities across legitimate
/// same-category embeddings. Throws DataError with fewer than 3 vectors.
CategoryBaseline fit_category_baseline(const std::vector<UnitVector>& legitimate);

/// True iff ppl strictly exceeds tau_ppl.
bool ppl_gate(double ppl, const Thresholds& thresholds);

/// Weighted sum of the four dimensions.
double sis_base(const DimScores& dims, const SISWeights& weights);

/// Whether the boost multiplier fires under the given rule.
bool boost_applies(const DimScores& dims, const BoostRule& rule);

/// min(sis_base * beta, 1) when boosted, sis_base otherwise.
double sis_score(const DimScores& dims, const SISWeights& weights, const BoostRule& rule);

/// Anomaly of the candidate's mean peer similarity relative to the
/// category baseline, mapped through a logistic: logistic((m - mean) /
/// max(stddev, 1e-6)). Throws DataError on empty peers or an unfitted
/// baseline.
double icd_score(const UnitVector& candidate, const std::vector<UnitVector>& peers,
                 const CategoryBaseline& baseline);

/// alpha * s_sis + (1 - alpha) * s_icd.
double blend_scores(double s_sis, double s_icd, const Thresholds& thresholds);

/// manipulated iff s_final >= tau_m, else suspicious iff >= tau_s, else clean.
Label classify_label(double s_final, const Thresholds& thresholds);

}  // namespace geoshield::detect
