#pragma once

#include <string_view>
#include <vector>

namespace geoshield::lexicon {

/// One scoring rule: a case-insensitive phrase and the score increment it
/// contributes when present. Each rule fires at most once per text.
struct Rule {
    std::string_view phrase;
    double increment;
};

/// Rule table version; bump when any table changes so audit output stays
/// attributable to a specific lexicon.
inline constexpr int kLexiconVersion = 1;

// Reference judge rule tables, one per SIS dimension.
const std::vector<Rule>& authority_rules();    // certifications, endorsements
const std::vector<Rule>& narrative_rules();    // conclusion-steering, imperatives
const std::vector<Rule>& comparative_rules();  // explicit superiority claims
const std::vector<Rule>& temporal_rules();     // urgency and recency pressure

/// Sentence-level attack markers used by the extractive rewriter and by
/// pattern-based recovery: review narrative cues, chain-of-thought
/// connectives, certification stacks.
const std::vector<std::string_view>& attack_marker_phrases();

/// Harmful-content terms backing the reference safety classifier.
const std::vector<Rule>& harmful_rules();

/// Sum of increments for rules whose phrase occurs in `text`
/// (case-insensitive), clamped to [0,1].
double score_rules(std::string_view text, const std::vector<Rule>& rules);

/// Harmfulness in [0,1] from harmful_rules(), matched on whole tokens.
double score_harmful(std::string_view text);

/// Number of attack-marker phrases present in `sentence`.
int count_markers(std::string_view sentence);

}  // namespace geoshield::lexicon
