#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace geoshield::providers {

/// The four semantic integrity dimensions, each in [0,1].
struct DimScores {
    double aa = 0.0;  // authority attribution
    double np = 0.0;  // narrative purposiveness
    double ca = 0.0;  // comparative claims
    double tc = 0.0;  // temporal claims
};

bool dims_valid(const DimScores& dims);

/// Embedding vector with unit Euclidean norm (within 1e-9).
struct UnitVector {
    std::vector<double> components;
};

double cosine(const UnitVector& a, const UnitVector& b);

enum class ProviderKind { Reference, Remote };

struct ProviderConfig {
    ProviderKind kind = ProviderKind::Reference;
    std::optional<std::string> endpoint;
    std::optional<std::string> model_name;
    std::chrono::milliseconds timeout{10000};
    int max_retries = 2;
    std::optional<int> request_budget;
};

enum class RewriteVariant {
    NeutralEditor,
    ExplicitAttackRemoval,
    StructuredExtraction,
    AdversarialAware,
    ConservativeSummary,
};

std::string_view rewrite_variant_name(RewriteVariant variant);
std::optional<RewriteVariant> parse_rewrite_variant(std::string_view name);

class PerplexityProvider {
public:
    virtual ~PerplexityProvider() = default;
    /// exp of mean negative log-probability per token. Throws
    /// ProviderError on empty text or remote failure.
    virtual double perplexity(std::string_view text) const = 0;
};

class JudgeProvider {
public:
    virtual ~JudgeProvider() = default;
    virtual DimScores judge_dimensions(std::string_view text) const = 0;
};

class EmbedProvider {
public:
    virtual ~EmbedProvider() = default;
    virtual UnitVector embed(std::string_view text) const = 0;
    virtual std::size_t dimension() const = 0;
};

class RankProvider {
public:
    virtual ~RankProvider() = default;
    /// Returns a permutation of [0, n): indices of descriptions ordered
    /// best-first.
    virtual std::vector<std::size_t> rank_candidates(
        std::string_view query, const std::vector<std::string>& descriptions) const = 0;
};

class RewriteProvider {
public:
    virtual ~RewriteProvider() = default;
    virtual std::string rewrite_text(std::string_view text, RewriteVariant variant) const = 0;
};

class SafetyProvider {
public:
    virtual ~SafetyProvider() = default;
    /// Harmfulness score in [0,1].
    virtual double harmfulness(std::string_view text) const = 0;
};

/// All model-dependent capabilities in one bundle.
struct ProviderSet {
    std::shared_ptr<const PerplexityProvider> perplexity;
    std::shared_ptr<const JudgeProvider> judge;
    std::shared_ptr<const EmbedProvider> embed;
    std::shared_ptr<const RankProvider> rank;
    std::shared_ptr<const RewriteProvider> rewrite;
    std::shared_ptr<const SafetyProvider> safety;
};

/// Per-capability call counts, shared by the counting decorators below.
struct CallCounters {
    std::atomic<std::size_t> perplexity{0};
    std::atomic<std::size_t> judge{0};
    std::atomic<std::size_t> embed{0};
    std::atomic<std::size_t> rank{0};
    std::atomic<std::size_t> rewrite{0};
    std::atomic<std::size_t> safety{0};
};

/// Wrap a provider set so every call bumps the matching counter.
ProviderSet with_call_counting(const ProviderSet& inner, std::shared_ptr<CallCounters> counters);

}  // namespace geoshield::providers
