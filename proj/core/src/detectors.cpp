#include "geoshield/detectors.hpp"

#include <algorithm>
#include <cmath>

#include "geoshield/error.hpp"

namespace geoshield::detect {

namespace {
constexpr double kStddevFloor = 1e-6;

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }
}  // namespace

bool weights_valid(const SISWeights& w) {
    auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    double sum = w.lambda_aa + w.lambda_np + w.lambda_ca + w.lambda_tc;
    return in_unit(w.lambda_aa) && in_unit(w.lambda_np) && in_unit(w.lambda_ca) &&
           in_unit(w.lambda_tc) && std::abs(sum - 1.0) <= 1e-9;
}

std::string_view label_name(Label label) {
    switch (label) {
        case Label::Clean: return "clean";
        case Label::Suspicious: return "suspicious";
        case Label::Manipulated: return "manipulated";
    }
    return "clean";
}

CategoryBaseline fit_category_baseline(const std::vector<UnitVector>& legitimate) {
    if (legitimate.size() < 3) {
        throw DataError("category baseline needs at least 3 legitimate records, got " +
                        std::to_string(legitimate.size()));
    }
    std::vector<double> sims;
    for (std::size_t i = 0; i < legitimate.size(); ++i) {
        for (std::size_t j = i + 1; j < legitimate.size(); ++j) {
            sims.push_back(providers::cosine(legitimate[i], legitimate[j]));
        }
    }
    double mean = 0.0;
    for (double s : sims) mean += s;
    mean /= double(sims.size());
    double var = 0.0;
    for (double s : sims) var += (s - mean) * (s - mean);
    var /= double(sims.size());

    CategoryBaseline baseline;
    baseline.mean = mean;
    baseline.stddev = std::sqrt(var);
    baseline.pair_count = sims.size();
    return baseline;
}

bool ppl_gate(double ppl, const Thresholds& thresholds) {
    return ppl > thresholds.tau_ppl;  // strict, per the gate definition
}

double sis_base(const DimScores& dims, const SISWeights& weights) {
    return weights.lambda_aa * dims.aa + weights.lambda_np * dims.np +
           weights.lambda_ca * dims.ca + weights.lambda_tc * dims.tc;
}

bool boost_applies(const DimScores& dims, const BoostRule& rule) {
    switch (rule.variant) {
        case BoostVariant::AlgorithmOne:
            return dims.np >= rule.theta_np || dims.ca >= rule.theta_ca ||
                   (dims.tc >= rule.theta_tc && dims.np >= rule.theta_np_prime);
        case BoostVariant::RevisedMaxDim: {
            double max_dim = std::max({dims.aa, dims.np, dims.ca, dims.tc});
            return max_dim >= rule.theta_maxdim &&
                   (dims.np >= rule.theta_np || dims.ca >= rule.theta_ca);
        }
    }
    return false;
}

double sis_score(const DimScores& dims, const SISWeights& weights, const BoostRule& rule) {
    double base = sis_base(dims, weights);
    if (boost_applies(dims, rule)) {
        return std::min(base * rule.beta, 1.0);
    }
    return base;
}

double icd_score(const UnitVector& candidate, const std::vector<UnitVector>& peers,
                 const CategoryBaseline& baseline) {
    if (peers.empty()) throw DataError("icd_score: no peers");
    if (!baseline.fitted()) throw DataError("icd_score: unfitted baseline");

    double mean_sim = 0.0;
    for (const auto& peer : peers) mean_sim += providers::cosine(candidate, peer);
    mean_sim /= double(peers.size());

    double z = (mean_sim - baseline.mean) / std::max(baseline.stddev, kStddevFloor);
    return logistic(z);
}

double blend_scores(double s_sis, double s_icd, const Thresholds& thresholds) {
    return thresholds.alpha * s_sis + (1.0 - thresholds.alpha) * s_icd;
}

Label classify_label(double s_final, const Thresholds& thresholds) {
    if (s_final >= thresholds.tau_m) return Label::Manipulated;
    if (s_final >= thresholds.tau_s) return Label::Suspicious;
    return Label::Clean;
}

}  // namespace geoshield::detect
