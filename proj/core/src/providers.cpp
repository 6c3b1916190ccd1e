#include "geoshield/providers.hpp"

#include <cmath>

#include "geoshield/error.hpp"

namespace geoshield::providers {

bool dims_valid(const DimScores& dims) {
    auto ok = [](double v) { return v >= 0.0 && v <= 1.0 && std::isfinite(v); };
    return ok(dims.aa) && ok(dims.np) && ok(dims.ca) && ok(dims.tc);
}

double cosine(const UnitVector& a, const UnitVector& b) {
    if (a.components.size() != b.components.size()) {
        throw ProviderError("cosine: dimension mismatch");
    }
    double dot = 0.0;
    for (std::size_t i = 0; i < a.components.size(); ++i) {
        dot += a.components[i] * b.components[i];
    }
    return dot;
}

std::string_view rewrite_variant_name(RewriteVariant variant) {
    switch (variant) {
        case RewriteVariant::NeutralEditor: return "neutral_editor";
        case RewriteVariant::ExplicitAttackRemoval: return "explicit_attack_removal";
        case RewriteVariant::StructuredExtraction: return "structured_extraction";
        case RewriteVariant::AdversarialAware: return "adversarial_aware";
        case RewriteVariant::ConservativeSummary: return "conservative_summary";
    }
    return "unknown";
}

std::optional<RewriteVariant> parse_rewrite_variant(std::string_view name) {
    for (RewriteVariant v :
         {RewriteVariant::NeutralEditor, RewriteVariant::ExplicitAttackRemoval,
          RewriteVariant::StructuredExtraction, RewriteVariant::AdversarialAware,
          RewriteVariant::ConservativeSummary}) {
        if (rewrite_variant_name(v) == name) return v;
    }
    return std::nullopt;
}

namespace {

class CountingPerplexity : public PerplexityProvider {
public:
    CountingPerplexity(std::shared_ptr<const PerplexityProvider> inner,
                       std::shared_ptr<CallCounters> counters)
        : inner_(std::move(inner)), counters_(std::move(counters)) {}
    double perplexity(std::string_view text) const override {
        counters_->perplexity.fetch_add(1, std::memory_order_relaxed);
        return inner_->perplexity(text);
    }

private:
    std::shared_ptr<const PerplexityProvider> inner_;
    std::shared_ptr<CallCounters> counters_;
};

class CountingJudge : public JudgeProvider {
public:
    CountingJudge(std::shared_ptr<const JudgeProvider> inner,
                  std::shared_ptr<CallCounters> counters)
        : inner_(std::move(inner)), counters_(std::move(counters)) {}
    DimScores judge_dimensions(std::string_view text) const override {
        counters_->judge.fetch_add(1, std::memory_order_relaxed);
        return inner_->judge_dimensions(text);
    }

private:
    std::shared_ptr<const JudgeProvider> inner_;
    std::shared_ptr<CallCounters> counters_;
};

class CountingEmbed : public EmbedProvider {
public:
    CountingEmbed(std::shared_ptr<const EmbedProvider> inner,
                  std::shared_ptr<CallCounters> counters)
        : inner_(std::move(inner)), counters_(std::move(counters)) {}
    UnitVector embed(std::string_view text) const override {
        counters_->embed.fetch_add(1, std::memory_order_relaxed);
        return inner_->embed(text);
    }
    std::size_t dimension() const override { return inner_->dimension(); }

private:
    std::shared_ptr<const EmbedProvider> inner_;
    std::shared_ptr<CallCounters> counters_;
};

class CountingRank : public RankProvider {
public:
    CountingRank(std::shared_ptr<const RankProvider> inner,
                 std::shared_ptr<CallCounters> counters)
        : inner_(std::move(inner)), counters_(std::move(counters)) {}
    std::vector<std::size_t> rank_candidates(
        std::string_view query, const std::vector<std::string>& descriptions) const override {
        counters_->rank.fetch_add(1, std::memory_order_relaxed);
        return inner_->rank_candidates(query, descriptions);
    }

private:
    std::shared_ptr<const RankProvider> inner_;
    std::shared_ptr<CallCounters> counters_;
};

class CountingRewrite : public RewriteProvider {
public:
    CountingRewrite(std::shared_ptr<const RewriteProvider> inner,
                    std::shared_ptr<CallCounters> counters)
        : inner_(std::move(inner)), counters_(std::move(counters)) {}
    std::string rewrite_text(std::string_view text, RewriteVariant variant) const override {
        counters_->rewrite.fetch_add(1, std::memory_order_relaxed);
        return inner_->rewrite_text(text, variant);
    }

private:
    std::shared_ptr<const RewriteProvider> inner_;
    std::shared_ptr<CallCounters> counters_;
};

class CountingSafety : public SafetyProvider {
public:
    CountingSafety(std::shared_ptr<const SafetyProvider> inner,
                   std::shared_ptr<CallCounters> counters)
        : inner_(std::move(inner)), counters_(std::move(counters)) {}
    double harmfulness(std::string_view text) const override {
        counters_->safety.fetch_add(1, std::memory_order_relaxed);
        return inner_->harmfulness(text);
    }

private:
    std::shared_ptr<const SafetyProvider> inner_;
    std::shared_ptr<CallCounters> counters_;
};

}  // namespace

ProviderSet with_call_counting(const ProviderSet& inner, std::shared_ptr<CallCounters> counters) {
    ProviderSet out;
    if (inner.perplexity) out.perplexity = std::make_shared<CountingPerplexity>(inner.perplexity, counters);
    if (inner.judge) out.judge = std::make_shared<CountingJudge>(inner.judge, counters);
    if (inner.embed) out.embed = std::make_shared<CountingEmbed>(inner.embed, counters);
    if (inner.rank) out.rank = std::make_shared<CountingRank>(inner.rank, counters);
    if (inner.rewrite) out.rewrite = std::make_shared<CountingRewrite>(inner.rewrite, counters);
    if (inner.safety) out.safety = std::make_shared<CountingSafety>(inner.safety, counters);
    return out;
}

}  // namespace geoshield::providers
