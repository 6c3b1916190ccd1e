#include "geoshield/recovery.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "geoshield/error.hpp"
#include "geoshield/lexicon.hpp"
#include "geoshield/text.hpp"

namespace geoshield::recovery {

std::string_view recovery_method_name(RecoveryMethod method) {
    switch (method) {
        case RecoveryMethod::PplTruncation: return "ppl_truncation";
        case RecoveryMethod::PatternCut: return "pattern_cut";
        case RecoveryMethod::LlmExtraction: return "llm_extraction";
        case RecoveryMethod::Hybrid: return "hybrid";
        case RecoveryMethod::TwoStage: return "two_stage";
    }
    return "two_stage";
}

std::optional<RecoveryMethod> parse_recovery_method(std::string_view name) {
    if (name == "ppl_truncation") return RecoveryMethod::PplTruncation;
    if (name == "pattern_cut") return RecoveryMethod::PatternCut;
    if (name == "llm_extraction") return RecoveryMethod::LlmExtraction;
    if (name == "hybrid") return RecoveryMethod::Hybrid;
    if (name == "two_stage") return RecoveryMethod::TwoStage;
    return std::nullopt;
}

namespace {

constexpr double kSpikeFactor = 3.0;

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

// Keep sentences up to the first two-sentence window whose perplexity
// spikes past kSpikeFactor times the running median of earlier windows.
std::string ppl_truncate(std::string_view input,
                         const providers::PerplexityProvider& perplexity) {
    auto sentences = text::split_sentences(input);
    if (sentences.size() < 3) return std::string(input);

    std::vector<double> window_ppl(sentences.size() - 1);
    for (std::size_t i = 0; i + 1 < sentences.size(); ++i) {
        window_ppl[i] = perplexity.perplexity(sentences[i] + " " + sentences[i + 1]);
    }

    std::vector<double> seen{window_ppl[0]};
    for (std::size_t i = 1; i < window_ppl.size(); ++i) {
        if (window_ppl[i] > kSpikeFactor * median(seen)) {
            // Earlier windows were calm, so sentence i is still sound and
            // the anomaly starts at sentence i+1.
            std::vector<std::string> kept(sentences.begin(),
                                          sentences.begin() + std::ptrdiff_t(i) + 1);
            return text::join(kept, " ");
        }
        seen.push_back(window_ppl[i]);
    }
    return std::string(input);
}

// Drop every sentence containing an attack marker. Idempotent: a clean
// survivor stays clean. Falls back to the least-marked sentence when all
// sentences carry markers.
std::string pattern_cut(std::string_view input) {
    auto sentences = text::split_sentences(input);
    if (sentences.empty()) return std::string(input);

    std::vector<std::string> kept;
    int fewest = std::numeric_limits<int>::max();
    std::size_t fewest_idx = 0;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
        int markers = lexicon::count_markers(sentences[i]);
        if (markers == 0) kept.push_back(sentences[i]);
        if (markers < fewest) {
            fewest = markers;
            fewest_idx = i;
        }
    }
    if (kept.empty()) return sentences[fewest_idx];
    return text::join(kept, " ");
}

std::string non_empty_floor(std::string candidate, std::string_view input) {
    if (!text::trim(candidate).empty()) return candidate;
    auto sentences = text::split_sentences(input);
    if (!sentences.empty()) return sentences.front();
    return std::string(input);
}

}  // namespace

std::string recover_text(std::string_view text_in, RecoveryMethod method,
                         const providers::ProviderSet& providers) {
    if (text::trim(text_in).empty()) throw DataError("recovery: empty input text");

    std::string out;
    switch (method) {
        case RecoveryMethod::PplTruncation:
            out = ppl_truncate(text_in, *providers.perplexity);
            break;
        case RecoveryMethod::PatternCut:
            out = pattern_cut(text_in);
            break;
        case RecoveryMethod::LlmExtraction:
            out = providers.rewrite->rewrite_text(
                text_in, providers::RewriteVariant::ExplicitAttackRemoval);
            break;
        case RecoveryMethod::Hybrid:
            out = pattern_cut(ppl_truncate(text_in, *providers.perplexity));
            break;
        case RecoveryMethod::TwoStage:
            throw UsageError("recovery: two_stage needs a record with an attack kind");
    }
    return non_empty_floor(std::move(out), text_in);
}

std::string recover_record(const corpus::ProductRecord& record, RecoveryMethod method,
                           const providers::ProviderSet& providers) {
    std::string combined = corpus::concat_description(record);
    if (method != RecoveryMethod::TwoStage) {
        return recover_text(combined, method, providers);
    }
    if (!record.is_attacked || !record.attack_kind) return combined;
    switch (*record.attack_kind) {
        case AttackKind::String:
            return recover_text(combined, RecoveryMethod::PplTruncation, providers);
        case AttackKind::Reasoning:
            return recover_text(combined, RecoveryMethod::PatternCut, providers);
        case AttackKind::Review:
            return recover_text(combined, RecoveryMethod::LlmExtraction, providers);
        default:
            return recover_text(combined, RecoveryMethod::Hybrid, providers);
    }
}

namespace {

std::size_t token_lcs(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.empty() || b.empty()) return 0;
    std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

}  // namespace

double composite_similarity(std::string_view original, std::string_view recovered,
                            const providers::EmbedProvider& embedder) {
    auto orig_tokens = text::tokenize(original);
    auto rec_tokens = text::tokenize(recovered);
    if (orig_tokens.empty()) throw DataError("composite_similarity: empty original");

    double lcs_ratio = double(token_lcs(orig_tokens, rec_tokens)) / double(orig_tokens.size());
    double cos = rec_tokens.empty()
                     ? 0.0
                     : providers::cosine(embedder.embed(original), embedder.embed(recovered));
    return 0.5 * lcs_ratio + 0.5 * std::max(0.0, cos);
}

}  // namespace geoshield::recovery
