#include "geoshield/lexicon.hpp"

#include <algorithm>

#include "geoshield/text.hpp"

namespace geoshield::lexicon {

const std::vector<Rule>& authority_rules() {
    static const std::vector<Rule> rules = {
        {"iso 9001", 0.25},
        {"iso 14001", 0.25},
        {"ce certified", 0.25},
        {"ce marked", 0.25},
        {"ul listed", 0.25},
        {"ul certified", 0.25},
        {"rohs", 0.25},
        {"fda approved", 0.25},
        {"certified by", 0.25},
        {"endorsed by", 0.25},
        {"recommended by experts", 0.25},
        {"award-winning", 0.25},
        {"rated #1", 0.25},
        {"trusted by professionals", 0.25},
        {"laboratory verified", 0.25},
        {"officially licensed", 0.25},
    };
    return rules;
}

const std::vector<Rule>& narrative_rules() {
    static const std::vector<Rule> rules = {
        {"therefore", 0.25},
        {"in conclusion", 0.25},
        {"concluded that", 0.25},
        {"the clear choice", 0.25},
        {"the best choice", 0.25},
        {"the right choice", 0.25},
        {"the obvious choice", 0.25},
        {"the superior choice", 0.25},
        {"you should", 0.25},
        {"which makes it", 0.25},
        {"this is why", 0.25},
        {"for these reasons", 0.25},
        {"look no further", 0.25},
        {"would recommend", 0.25},
        {"agree that", 0.25},
        {"step by step", 0.25},
        {"weighing the", 0.25},
        {"considering all", 0.25},
    };
    return rules;
}

const std::vector<Rule>& comparative_rules() {
    static const std::vector<Rule> rules = {
        {"better than", 0.30},
        {"superior to", 0.30},
        {"outperform", 0.30},  // matches outperforms/outperformed
        {"unlike other", 0.30},
        {"unlike competing", 0.30},
        {"beats the", 0.30},
        {"surpasses", 0.30},
        {"no other brand", 0.30},
        {"any competitor", 0.30},
        {"than competing", 0.30},
        {"leaves competitors", 0.30},
        {"ahead of the competition", 0.30},
    };
    return rules;
}

const std::vector<Rule>& temporal_rules() {
    static const std::vector<Rule> rules = {
        {"limited time", 0.25},
        {"act now", 0.25},
        {"while supplies last", 0.25},
        {"don't miss", 0.25},
        {"order today", 0.25},
        {"selling fast", 0.25},
        {"just released", 0.25},
        {"newest model", 0.25},
        {"latest release", 0.25},
        {"this season", 0.25},
        {"recently launched", 0.25},
        {"right now", 0.25},
    };
    return rules;
}

const std::vector<std::string_view>& attack_marker_phrases() {
    static const std::vector<std::string_view> phrases = {
        // review narrative cues
        "i purchased",
        "i bought",
        "i tested",
        "i compared",
        "after using",
        "my experience",
        "hands-on",
        "i would recommend",
        // chain-of-thought connectives
        "therefore",
        "in conclusion",
        "step by step",
        "weighing the",
        "considering all",
        "first examine",
        "comparing feature by feature",
        "the reasoning points",
        // certification stacks
        "iso 9001",
        "ce certified",
        "ul listed",
        "rohs",
        "fda approved",
        // steering and urgency
        "the clear choice",
        "the best choice",
        "the right choice",
        "the obvious choice",
        "you should",
        "which makes it",
        "look no further",
        "concluded that",
        "agree that",
        "rated #1",
        "limited time",
        "act now",
    };
    return phrases;
}

const std::vector<Rule>& harmful_rules() {
    static const std::vector<Rule> rules = {
        {"kill", 0.34},       {"weapon", 0.34},      {"explosive", 0.34},
        {"bomb", 0.34},       {"suicide", 0.34},     {"self-harm", 0.34},
        {"assault", 0.34},    {"illegal drugs", 0.34}, {"violence", 0.34},
        {"poison someone", 0.34},
    };
    return rules;
}

double score_rules(std::string_view txt, const std::vector<Rule>& rules) {
    double score = 0.0;
    for (const Rule& rule : rules) {
        if (text::contains_icase(txt, rule.phrase)) score += rule.increment;
    }
    return std::clamp(score, 0.0, 1.0);
}

double score_harmful(std::string_view txt) {
    // Whole-token matching: "skilled" must not match "kill".
    auto tokens = text::tokenize(txt);
    std::string joined = " " + text::join(tokens, " ") + " ";
    double score = 0.0;
    for (const Rule& rule : harmful_rules()) {
        std::string padded = " " + std::string(rule.phrase) + " ";
        if (text::contains_icase(joined, padded)) score += rule.increment;
    }
    return std::clamp(score, 0.0, 1.0);
}

int count_markers(std::string_view sentence) {
    int hits = 0;
    for (std::string_view phrase : attack_marker_phrases()) {
        if (text::contains_icase(sentence, phrase)) ++hits;
    }
    return hits;
}

}  // namespace geoshield::lexicon
