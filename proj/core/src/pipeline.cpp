#include "geoshield/pipeline.hpp"

#include <algorithm>

#include "geoshield/error.hpp"

namespace geoshield::pipeline {

using detect::Label;

BaselineIndex BaselineIndex::fit(const corpus::Dataset& dataset,
                                 const providers::EmbedProvider& embedder) {
    return fit(dataset.sets, embedder);
}

BaselineIndex BaselineIndex::fit(const std::vector<corpus::CandidateSet>& sets,
                                 const providers::EmbedProvider& embedder) {
    std::map<std::string, std::vector<providers::UnitVector>> legit;
    for (const auto& set : sets) {
        for (const auto& rec : set.records) {
            if (!rec.is_attacked) {
                legit[rec.category].push_back(embedder.embed(rec.base_description));
            }
        }
    }
    BaselineIndex index;
    for (const auto& [category, vectors] : legit) {
        if (vectors.size() >= 3) {
            index.by_category_.emplace(category, detect::fit_category_baseline(vectors));
        }
    }
    return index;
}

const detect::CategoryBaseline* BaselineIndex::find(const std::string& category) const {
    auto it = by_category_.find(category);
    return it == by_category_.end() ? nullptr : &it->second;
}

void BaselineIndex::insert(const std::string& category, detect::CategoryBaseline baseline) {
    by_category_[category] = baseline;
}

std::vector<std::string> penalize(const std::vector<std::string>& ranking,
                                  const std::set<std::string>& flagged) {
    for (const auto& id : flagged) {
        if (std::find(ranking.begin(), ranking.end(), id) == ranking.end()) {
            throw DataError("penalize: unknown id '" + id + "'");
        }
    }
    std::vector<std::string> clean_block;
    std::vector<std::string> flagged_block;
    for (const auto& id : ranking) {
        (flagged.count(id) ? flagged_block : clean_block).push_back(id);
    }
    clean_block.insert(clean_block.end(), flagged_block.begin(), flagged_block.end());
    return clean_block;
}

namespace {

struct RankedOutcome {
    std::vector<std::string> pre_order;
    std::vector<std::string> post_order;
};

// Rank by provider, penalize flagged ids, and fill pre/post ranks into
// outcomes (indexed by record position in the set).
void apply_ranking(const corpus::CandidateSet& set, const std::vector<std::string>& texts,
                   const providers::ProviderSet& providers, std::vector<DefenseOutcome>& outcomes) {
    auto order = providers.rank->rank_candidates(set.query, texts);
    std::vector<std::string> pre_order;
    pre_order.reserve(order.size());
    for (std::size_t idx : order) pre_order.push_back(set.records[idx].id);

    std::set<std::string> flagged;
    for (const auto& outcome : outcomes) {
        if (outcome.breakdown.label != Label::Clean) flagged.insert(outcome.record_id);
    }
    auto post_order = penalize(pre_order, flagged);

    std::map<std::string, std::size_t> pre_pos;
    std::map<std::string, std::size_t> post_pos;
    for (std::size_t i = 0; i < pre_order.size(); ++i) pre_pos[pre_order[i]] = i + 1;
    for (std::size_t i = 0; i < post_order.size(); ++i) post_pos[post_order[i]] = i + 1;

    for (auto& outcome : outcomes) {
        outcome.pre_rank = pre_pos.at(outcome.record_id);
        outcome.post_rank = post_pos.at(outcome.record_id);
        outcome.penalized = flagged.count(outcome.record_id) > 0;
    }
}

DefendedRanking finish(const corpus::CandidateSet& set, const std::vector<std::string>& texts,
                       const providers::ProviderSet& providers,
                       std::vector<DefenseOutcome> outcomes) {
    apply_ranking(set, texts, providers, outcomes);

    DefendedRanking result;
    result.query = set.query;
    // Recover post order from post_rank.
    result.ordered_ids.resize(outcomes.size());
    for (const auto& outcome : outcomes) {
        result.ordered_ids[outcome.post_rank - 1] = outcome.record_id;
    }
    std::sort(outcomes.begin(), outcomes.end(),
              [](const DefenseOutcome& a, const DefenseOutcome& b) {
                  return a.record_id < b.record_id;
              });
    result.outcomes = std::move(outcomes);
    return result;
}

[[noreturn]] void rethrow_tagged(const std::string& record_id, const std::exception& e) {
    throw ProviderError("record '" + record_id + "': " + e.what());
}

}  // namespace

DefendedRanking run_sci_defense(const corpus::CandidateSet& set, const config::DefenseConfig& cfg,
                                const providers::ProviderSet& providers,
                                const BaselineIndex& baselines, const ComponentToggles& toggles) {
    if (set.records.size() < 2) throw DataError("candidate set needs at least 2 records");

    const std::size_t n = set.records.size();
    std::vector<std::string> texts(n);
    for (std::size_t i = 0; i < n; ++i) texts[i] = corpus::concat_description(set.records[i]);

    std::vector<DefenseOutcome> outcomes(n);
    std::vector<bool> gated(n, false);
    std::vector<bool> failed(n, false);

    // Step 1: perplexity gate with early exit.
    for (std::size_t i = 0; i < n; ++i) {
        auto& outcome = outcomes[i];
        outcome.record_id = set.records[i].id;
        if (!toggles.ppl) continue;
        try {
            outcome.breakdown.ppl = providers.perplexity->perplexity(texts[i]);
        } catch (const std::exception& e) {
            if (cfg.fail_fast) rethrow_tagged(outcome.record_id, e);
            failed[i] = true;
            outcome.audit_note = std::string("perplexity failed: ") + e.what();
            continue;
        }
        if (detect::ppl_gate(outcome.breakdown.ppl, cfg.thresholds)) {
            gated[i] = true;
            outcome.breakdown.ppl_short_circuited = true;
            outcome.breakdown.label = Label::Manipulated;
            outcome.breakdown.s_final = 1.0;
        }
    }

    // Embeddings only for records that survived the gate; gated records
    // generate no judge or embed calls and are excluded from peer sets.
    std::vector<providers::UnitVector> embeddings(n);
    std::vector<bool> embedded(n, false);
    if (toggles.icd) {
        for (std::size_t i = 0; i < n; ++i) {
            if (gated[i] || failed[i]) continue;
            try {
                embeddings[i] = providers.embed->embed(texts[i]);
                embedded[i] = true;
            } catch (const std::exception& e) {
                if (cfg.fail_fast) rethrow_tagged(outcomes[i].record_id, e);
                failed[i] = true;
                outcomes[i].audit_note = std::string("embed failed: ") + e.what();
            }
        }
    }

    // Steps 2-3 per surviving record.
    for (std::size_t i = 0; i < n; ++i) {
        if (gated[i] || failed[i]) continue;
        auto& br = outcomes[i].breakdown;

        if (toggles.sis) {
            try {
                br.dims = providers.judge->judge_dimensions(texts[i]);
            } catch (const std::exception& e) {
                if (cfg.fail_fast) rethrow_tagged(outcomes[i].record_id, e);
                failed[i] = true;
                outcomes[i].audit_note = std::string("judge failed: ") + e.what();
                continue;
            }
            br.s_base = detect::sis_base(br.dims, cfg.weights);
            br.boosted = detect::boost_applies(br.dims, cfg.boost);
            br.s_sis = detect::sis_score(br.dims, cfg.weights, cfg.boost);
        }

        if (toggles.icd) {
            std::vector<providers::UnitVector> peers;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i && embedded[j]) peers.push_back(embeddings[j]);
            }
            if (peers.empty()) {
                br.s_icd = 0.5;  // no usable peers: baseline-neutral
            } else {
                const auto* baseline = baselines.find(set.records[i].category);
                if (baseline == nullptr) {
                    throw DataError("no fitted baseline for category '" +
                                    set.records[i].category + "'");
                }
                br.s_icd = detect::icd_score(embeddings[i], peers, *baseline);
            }
            // With SIS disabled the blend weight moves entirely to ICD.
            br.s_final = toggles.sis
                             ? detect::blend_scores(br.s_sis, br.s_icd, cfg.thresholds)
                             : br.s_icd;
        } else {
            br.s_icd = 0.5;
            br.s_final = br.s_sis;  // alpha treated as 1
        }
        br.label = detect::classify_label(br.s_final, cfg.thresholds);
    }

    return finish(set, texts, providers, std::move(outcomes));
}

DefendedRanking run_baseline(const corpus::CandidateSet& set, const BaselineSpec& baseline,
                             const config::DefenseConfig& cfg,
                             const providers::ProviderSet& providers) {
    if (set.records.size() < 2) throw DataError("candidate set needs at least 2 records");

    const std::size_t n = set.records.size();
    std::vector<std::string> texts(n);
    for (std::size_t i = 0; i < n; ++i) texts[i] = corpus::concat_description(set.records[i]);

    std::vector<DefenseOutcome> outcomes(n);
    for (std::size_t i = 0; i < n; ++i) outcomes[i].record_id = set.records[i].id;

    switch (baseline.kind) {
        case BaselineKind::PplOnly:
            for (std::size_t i = 0; i < n; ++i) {
                auto& br = outcomes[i].breakdown;
                try {
                    br.ppl = providers.perplexity->perplexity(texts[i]);
                } catch (const std::exception& e) {
                    if (cfg.fail_fast) rethrow_tagged(outcomes[i].record_id, e);
                    outcomes[i].audit_note = std::string("perplexity failed: ") + e.what();
                    continue;
                }
                if (detect::ppl_gate(br.ppl, cfg.thresholds)) {
                    br.ppl_short_circuited = true;
                    br.label = Label::Manipulated;
                    br.s_final = 1.0;
                }
            }
            return finish(set, texts, providers, std::move(outcomes));

        case BaselineKind::SafetyClf:
            for (std::size_t i = 0; i < n; ++i) {
                double harm = 0.0;
                try {
                    harm = providers.safety->harmfulness(texts[i]);
                } catch (const std::exception& e) {
                    if (cfg.fail_fast) rethrow_tagged(outcomes[i].record_id, e);
                    outcomes[i].audit_note = std::string("safety failed: ") + e.what();
                    continue;
                }
                auto& br = outcomes[i].breakdown;
                br.s_final = harm;
                if (harm >= baseline.safety_threshold) br.label = Label::Manipulated;
            }
            return finish(set, texts, providers, std::move(outcomes));

        case BaselineKind::Paraphrase: {
            // Rank original text for pre-defense positions, rewritten text
            // for the defended ranking. No record is ever flagged.
            std::vector<std::string> rewritten(n);
            for (std::size_t i = 0; i < n; ++i) {
                try {
                    rewritten[i] = providers.rewrite->rewrite_text(texts[i], baseline.variant);
                } catch (const std::exception& e) {
                    if (cfg.fail_fast) rethrow_tagged(outcomes[i].record_id, e);
                    outcomes[i].audit_note = std::string("rewrite failed: ") + e.what();
                    rewritten[i] = texts[i];
                }
            }
            auto pre = providers.rank->rank_candidates(set.query, texts);
            auto post = providers.rank->rank_candidates(set.query, rewritten);
            std::map<std::string, std::size_t> pre_pos;
            std::map<std::string, std::size_t> post_pos;
            for (std::size_t i = 0; i < n; ++i) {
                pre_pos[set.records[pre[i]].id] = i + 1;
                post_pos[set.records[post[i]].id] = i + 1;
            }
            DefendedRanking result;
            result.query = set.query;
            result.ordered_ids.resize(n);
            for (std::size_t i = 0; i < n; ++i) result.ordered_ids[i] = set.records[post[i]].id;
            for (auto& outcome : outcomes) {
                outcome.pre_rank = pre_pos.at(outcome.record_id);
                outcome.post_rank = post_pos.at(outcome.record_id);
                outcome.penalized = false;
            }
            std::sort(outcomes.begin(), outcomes.end(),
                      [](const DefenseOutcome& a, const DefenseOutcome& b) {
                          return a.record_id < b.record_id;
                      });
            result.outcomes = std::move(outcomes);
            return result;
        }
    }
    throw UsageError("unknown baseline kind");
}

}  // namespace geoshield::pipeline
