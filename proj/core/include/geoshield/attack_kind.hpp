#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace geoshield {

// Attack taxonomy. Serialized names are stable and CLI-facing.
enum class AttackKind {
    String,
    Reasoning,
    Review,
    SeoStuffing,
    AuthorityInjection,
    FakeSocialProof,
    SpecAmplification,
    UseCaseSaturation,
    HybridStealth,
};

inline constexpr AttackKind kAllAttackKinds[] = {
    AttackKind::String,
    AttackKind::Reasoning,
    AttackKind::Review,
    AttackKind::SeoStuffing,
    AttackKind::AuthorityInjection,
    AttackKind::FakeSocialProof,
    AttackKind::SpecAmplification,
    AttackKind::UseCaseSaturation,
    AttackKind::HybridStealth,
};

std::string_view attack_kind_name(AttackKind kind);

/// Parse a serialized kind name; nullopt for unknown strings.
std::optional<AttackKind> parse_attack_kind(std::string_view name);

}  // namespace geoshield
