#pragma once

#include <cstdint>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "geoshield/providers.hpp"

namespace geoshield::providers {

/// Character-trigram language model with add-one smoothing over a fixed
/// nominal vocabulary of kVocabSize symbols, trained on the shipped
/// plain-text fixture corpus. Tokenization: perplexity is computed per
/// character after whitespace normalization; the first two characters seed
/// the context and are not scored. Texts shorter than three characters
/// fall back to a character unigram model.
///
/// A text whose trigram contexts never occur in training scores exactly
/// kVocabSize, which puts fragment gibberish orders of magnitude above
/// natural prose.
class TrigramPerplexity final : public PerplexityProvider {
public:
    static constexpr double kVocabSize = 1024.0;

    /// Train on the given corpus; defaults to the embedded fixture corpus.
    explicit TrigramPerplexity(std::string_view corpus);
    TrigramPerplexity();

    double perplexity(std::string_view text) const override;

private:
    std::unordered_map<std::uint32_t, std::uint32_t> trigram_counts_;
    std::unordered_map<std::uint32_t, std::uint32_t> context_counts_;
    std::unordered_map<unsigned char, std::uint32_t> unigram_counts_;
    std::uint64_t total_chars_ = 0;
};

/// Pure lexicon/pattern judge: each dimension is scored by its rule table
/// (see geoshield/lexicon.hpp), increments summed and clamped to [0,1].
/// Input is truncated at kCharBudget characters before matching so
/// adversarially long inputs cannot change the contract.
class LexiconJudge final : public JudgeProvider {
public:
    static constexpr std::size_t kCharBudget = 4000;

    DimScores judge_dimensions(std::string_view text) const override;
};

/// Feature-hashed token-bigram embedding: bigrams over the token sequence
/// (with boundary sentinels) are hashed into kDim signed buckets and the
/// result is L2-normalized. Deterministic across runs and platforms.
class HashedBigramEmbedder final : public EmbedProvider {
public:
    static constexpr std::size_t kDim = 256;

    UnitVector embed(std::string_view text) const override;
    std::size_t dimension() const override { return kDim; }
};

/// Reference ranker: query-term overlap plus a term-frequency bonus, so
/// keyword-inflating injections raise rank. Ties break toward the earlier
/// candidate.
class OverlapRanker final : public RankProvider {
public:
    static constexpr double kTfBonus = 0.05;

    std::vector<std::size_t> rank_candidates(
        std::string_view query, const std::vector<std::string>& descriptions) const override;
};

/// Deterministic extractive rewriter standing in for an LLM paraphraser:
/// drops sentences that match attack-marker patterns, then applies a
/// per-variant sentence cap (ConservativeSummary keeps at most 3).
class ExtractiveRewriter final : public RewriteProvider {
public:
    std::string rewrite_text(std::string_view text, RewriteVariant variant) const override;
};

/// Harmful-content lexicon classifier. GEO injections are benign prose,
/// so this scores ~0 on all of them.
class LexiconSafety final : public SafetyProvider {
public:
    double harmfulness(std::string_view text) const override;
};

/// Bundle of reference providers (shared, stateless after construction).
ProviderSet make_reference_providers();

}  // namespace geoshield::providers
