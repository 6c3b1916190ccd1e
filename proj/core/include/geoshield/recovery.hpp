#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "geoshield/corpus.hpp"
#include "geoshield/providers.hpp"

namespace geoshield::recovery {

enum class RecoveryMethod {
    PplTruncation,  // cut at the first perplexity spike
    PatternCut,     // drop sentences bearing attack markers
    LlmExtraction,  // rewrite with the attack-removal variant
    Hybrid,         // truncation then pattern cut
    TwoStage,       // classify-then-dispatch by attack kind
};

std::string_view recovery_method_name(RecoveryMethod method);
std::optional<RecoveryMethod> parse_recovery_method(std::string_view name);

/// Strip injected content from `text`. Never returns an empty string: when
/// every sentence would be removed, the least-suspicious sentence is kept.
std::string recover_text(std::string_view text, RecoveryMethod method,
                         const providers::ProviderSet& providers);

/// Record-level recovery over the concatenated description. TwoStage uses
/// the record's attack kind to pick the per-kind best method (string ->
/// truncation, reasoning -> pattern cut, review -> extraction, anything
/// else -> hybrid); unattacked records pass through unchanged.
std::string recover_record(const corpus::ProductRecord& record, RecoveryMethod method,
                           const providers::ProviderSet& providers);

/// How much of the original survives: mean of the token-level longest
/// common subsequence ratio (against the original's length) and the
/// embedding cosine clamped at zero.
double composite_similarity(std::string_view original, std::string_view recovered,
                            const providers::EmbedProvider& embedder);

}  // namespace geoshield::recovery
