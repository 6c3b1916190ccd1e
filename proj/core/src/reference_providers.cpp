#include "geoshield/reference_providers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "geoshield/embedded_data.hpp"
#include "geoshield/error.hpp"
#include "geoshield/lexicon.hpp"
#include "geoshield/text.hpp"

namespace geoshield::providers {

namespace {

std::uint32_t tri_key(unsigned char a, unsigned char b, unsigned char c) {
    return (std::uint32_t(a) << 16) | (std::uint32_t(b) << 8) | c;
}

std::uint32_t ctx_key(unsigned char a, unsigned char b) {
    return (std::uint32_t(a) << 8) | b;
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

TrigramPerplexity::TrigramPerplexity() : TrigramPerplexity(data::kReferenceCorpus) {}

TrigramPerplexity::TrigramPerplexity(std::string_view corpus) {
    std::string body = text::normalize_whitespace(corpus);
    total_chars_ = body.size();
    for (char ch : body) unigram_counts_[static_cast<unsigned char>(ch)]++;
    for (std::size_t i = 2; i < body.size(); ++i) {
        auto a = static_cast<unsigned char>(body[i - 2]);
        auto b = static_cast<unsigned char>(body[i - 1]);
        auto c = static_cast<unsigned char>(body[i]);
        trigram_counts_[tri_key(a, b, c)]++;
        context_counts_[ctx_key(a, b)]++;
    }
}

double TrigramPerplexity::perplexity(std::string_view txt) const {
    std::string body = text::normalize_whitespace(txt);
    if (body.empty()) throw ProviderError("perplexity: empty text");

    double neg_log_sum = 0.0;
    std::size_t scored = 0;

    if (body.size() < 3) {
        for (char ch : body) {
            auto it = unigram_counts_.find(static_cast<unsigned char>(ch));
            double count = it == unigram_counts_.end() ? 0.0 : it->second;
            double p = (count + 1.0) / (double(total_chars_) + kVocabSize);
            neg_log_sum -= std::log(p);
            ++scored;
        }
    } else {
        for (std::size_t i = 2; i < body.size(); ++i) {
            auto a = static_cast<unsigned char>(body[i - 2]);
            auto b = static_cast<unsigned char>(body[i - 1]);
            auto c = static_cast<unsigned char>(body[i]);
            auto ti = trigram_counts_.find(tri_key(a, b, c));
            auto ci = context_counts_.find(ctx_key(a, b));
            double tri = ti == trigram_counts_.end() ? 0.0 : ti->second;
            double ctx = ci == context_counts_.end() ? 0.0 : ci->second;
            double p = (tri + 1.0) / (ctx + kVocabSize);
            neg_log_sum -= std::log(p);
            ++scored;
        }
    }
    return std::exp(neg_log_sum / double(scored));
}

DimScores LexiconJudge::judge_dimensions(std::string_view txt) const {
    if (text::trim(txt).empty()) throw ProviderError("judge: empty text");
    std::string_view clipped = txt.substr(0, std::min(txt.size(), kCharBudget));
    DimScores dims;
    dims.aa = lexicon::score_rules(clipped, lexicon::authority_rules());
    dims.np = lexicon::score_rules(clipped, lexicon::narrative_rules());
    dims.ca = lexicon::score_rules(clipped, lexicon::comparative_rules());
    dims.tc = lexicon::score_rules(clipped, lexicon::temporal_rules());
    return dims;
}

UnitVector HashedBigramEmbedder::embed(std::string_view txt) const {
    auto tokens = text::tokenize(txt);
    if (tokens.empty()) throw ProviderError("embed: empty text");

    std::vector<double> acc(kDim, 0.0);
    std::string prev = "^";
    tokens.push_back("$");
    for (const auto& tok : tokens) {
        std::string bigram = prev + "\x1f" + tok;
        std::uint64_t h = fnv1a64(bigram);
        std::size_t idx = h % kDim;
        double sign = ((h >> 32) & 1u) ? 1.0 : -1.0;
        acc[idx] += sign;
        prev = tok;
    }

    double norm = std::sqrt(std::inner_product(acc.begin(), acc.end(), acc.begin(), 0.0));
    if (norm < 1e-12) {
        // All buckets cancelled; fall back to a single deterministic axis.
        acc.assign(kDim, 0.0);
        acc[fnv1a64(tokens.front()) % kDim] = 1.0;
        norm = 1.0;
    }
    for (double& v : acc) v /= norm;
    return UnitVector{std::move(acc)};
}

std::vector<std::size_t> OverlapRanker::rank_candidates(
    std::string_view query, const std::vector<std::string>& descriptions) const {
    if (descriptions.empty()) throw ProviderError("rank: empty candidate list");

    auto query_tokens = text::tokenize(query);
    std::vector<std::string> uniq(query_tokens);
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());

    std::vector<double> scores(descriptions.size(), 0.0);
    for (std::size_t i = 0; i < descriptions.size(); ++i) {
        auto doc_tokens = text::tokenize(descriptions[i]);
        double overlap = 0.0;
        double tf = 0.0;
        for (const auto& qt : uniq) {
            auto n = std::count(doc_tokens.begin(), doc_tokens.end(), qt);
            if (n > 0) overlap += 1.0;
            tf += double(n);
        }
        scores[i] = overlap + kTfBonus * tf;
    }

    std::vector<std::size_t> order(descriptions.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    return order;
}

std::string ExtractiveRewriter::rewrite_text(std::string_view txt, RewriteVariant variant) const {
    if (text::trim(txt).empty()) throw ProviderError("rewrite: empty text");

    auto sentences = text::split_sentences(txt);
    int marker_threshold = (variant == RewriteVariant::NeutralEditor) ? 2 : 1;
    bool strip_persuasion = (variant == RewriteVariant::AdversarialAware);
    std::size_t cap = sentences.size();
    if (variant == RewriteVariant::ConservativeSummary) cap = 3;
    if (variant == RewriteVariant::StructuredExtraction) cap = 5;

    std::vector<std::string> kept;
    for (const auto& sent : sentences) {
        if (lexicon::count_markers(sent) >= marker_threshold) continue;
        if (strip_persuasion &&
            (lexicon::score_rules(sent, lexicon::narrative_rules()) > 0.0 ||
             lexicon::score_rules(sent, lexicon::comparative_rules()) > 0.0)) {
            continue;
        }
        kept.push_back(sent);
        if (kept.size() >= cap) break;
    }

    if (kept.empty()) {
        // Never return empty text: keep the least marked sentence.
        auto best = std::min_element(sentences.begin(), sentences.end(),
                                     [](const std::string& a, const std::string& b) {
                                         return lexicon::count_markers(a) < lexicon::count_markers(b);
                                     });
        kept.push_back(*best);
    }
    return text::join(kept, " ");
}

double LexiconSafety::harmfulness(std::string_view txt) const {
    if (text::trim(txt).empty()) throw ProviderError("safety: empty text");
    return lexicon::score_harmful(txt);
}

ProviderSet make_reference_providers() {
    ProviderSet set;
    set.perplexity = std::make_shared<TrigramPerplexity>();
    set.judge = std::make_shared<LexiconJudge>();
    set.embed = std::make_shared<HashedBigramEmbedder>();
    set.rank = std::make_shared<OverlapRanker>();
    set.rewrite = std::make_shared<ExtractiveRewriter>();
    set.safety = std::make_shared<LexiconSafety>();
    return set;
}

}  // namespace geoshield::providers
