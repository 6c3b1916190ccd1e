#include "geoshield/attack_kind.hpp"

namespace geoshield {

std::string_view attack_kind_name(AttackKind kind) {
    switch (kind) {
        case AttackKind::String: return "string";
        case AttackKind::Reasoning: return "reasoning";
        case AttackKind::Review: return "review";
        case AttackKind::SeoStuffing: return "seo_stuffing";
        case AttackKind::AuthorityInjection: return "authority_injection";
        case AttackKind::FakeSocialProof: return "fake_social_proof";
        case AttackKind::SpecAmplification: return "spec_amplification";
        case AttackKind::UseCaseSaturation: return "use_case_saturation";
        case AttackKind::HybridStealth: return "hybrid_stealth";
    }
    return "unknown";
}

std::optional<AttackKind> parse_attack_kind(std::string_view name) {
    for (AttackKind kind : kAllAttackKinds) {
        if (attack_kind_name(kind) == name) return kind;
    }
    return std::nullopt;
}

}  // namespace geoshield
