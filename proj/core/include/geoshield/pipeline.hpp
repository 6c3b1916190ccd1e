#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "geoshield/config.hpp"
#include "geoshield/corpus.hpp"
#include "geoshield/detectors.hpp"
#include "geoshield/providers.hpp"

namespace geoshield::pipeline {

struct DefenseOutcome {
    std::string record_id;
    detect::ScoreBreakdown breakdown;
    std::size_t pre_rank = 0;   // 1-based position before penalization
    std::size_t post_rank = 0;  // 1-based position after penalization
    bool penalized = false;
    std::string audit_note;  // non-empty only for best-effort downgrades
};

struct DefendedRanking {
    std::string query;
    std::vector<std::string> ordered_ids;       // post-defense order
    std::vector<DefenseOutcome> outcomes;       // sorted by record id
};

enum class BaselineKind { PplOnly, SafetyClf, Paraphrase };

struct BaselineSpec {
    BaselineKind kind = BaselineKind::PplOnly;
    providers::RewriteVariant variant = providers::RewriteVariant::NeutralEditor;
    double safety_threshold = 0.5;
};

/// Ablation switches; disabled components contribute neutrally (ppl off:
/// no early exit; sis off: s_sis = 0 and the blend weight moves to ICD;
/// icd off: s_final = s_sis).
struct ComponentToggles {
    bool ppl = true;
    bool sis = true;
    bool icd = true;
};

/// Per-category similarity baselines fitted on the legitimate records of
/// a dataset.
class BaselineIndex {
public:
    static BaselineIndex fit(const corpus::Dataset& dataset,
                             const providers::EmbedProvider& embedder);
    /// Also usable with a bare list of sets.
    static BaselineIndex fit(const std::vector<corpus::CandidateSet>& sets,
                             const providers::EmbedProvider& embedder);

    const detect::CategoryBaseline* find(const std::string& category) const;
    void insert(const std::string& category, detect::CategoryBaseline baseline);

private:
    std::map<std::string, detect::CategoryBaseline> by_category_;
};

/// Stable partition: clean ids first in original relative order, then
/// flagged ids in original relative order. Throws DataError when a
/// flagged id is not in the ranking.
std::vector<std::string> penalize(const std::vector<std::string>& ranking,
                                  const std::set<std::string>& flagged);

/// The full detection pipeline over one candidate set: concatenate,
/// perplexity-gate with early exit, judge, boost, ICD, blend, classify,
/// rank, penalize. Provider failures abort the run (tagged with the
/// record id) unless cfg.fail_fast is false, in which case the record is
/// downgraded to clean with an audit note.
DefendedRanking run_sci_defense(const corpus::CandidateSet& set,
                                const config::DefenseConfig& cfg,
                                const providers::ProviderSet& providers,
                                const BaselineIndex& baselines,
                                const ComponentToggles& toggles = {});

DefendedRanking run_baseline(const corpus::CandidateSet& set, const BaselineSpec& baseline,
                             const config::DefenseConfig& cfg,
                             const providers::ProviderSet& providers);

}  // namespace geoshield::pipeline
