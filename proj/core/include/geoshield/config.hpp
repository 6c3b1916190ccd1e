#pragma once

#include <string>

#include "geoshield/detectors.hpp"
#include "geoshield/providers.hpp"

namespace geoshield::config {

/// Everything that parameterizes a defense run. Defaults are the
/// calibrated constants: weights 0.30/0.25/0.25/0.20, tau_ppl=500,
/// tau_s=0.55, tau_m=0.65, RevisedMaxDim boost, beta=1.5, alpha=0.9.
struct DefenseConfig {
    detect::Thresholds thresholds;
    detect::SISWeights weights;
    detect::BoostRule boost;
    providers::ProviderKind provider_kind = providers::ProviderKind::Reference;

    /// Fail the whole run on a provider error (default); when false,
    /// failed records are downgraded to clean with an audit note.
    bool fail_fast = true;
};

/// Throws DataError if thresholds/weights/boost violate their invariants.
void validate(const DefenseConfig& cfg);

/// Canonical JSON serialization (sorted keys, fixed precision) — the
/// input to config_hash, so equal configs hash equally byte-for-byte.
std::string to_canonical_json(const DefenseConfig& cfg);

/// Load from a JSON config file; unknown keys are rejected.
DefenseConfig load_config_file(const std::string& path);

/// Parse from a JSON string (exposed for tests).
DefenseConfig parse_config_json(const std::string& json_text);

/// Stable FNV-1a 64 digest of the canonical serialization, hex-encoded.
std::string config_hash(const DefenseConfig& cfg);

std::string_view boost_variant_name(detect::BoostVariant variant);

}  // namespace geoshield::config
