#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "geoshield/attack_kind.hpp"
#include "geoshield/corpus.hpp"

namespace geoshield::attacks {

struct AttackSpec {
    AttackKind kind = AttackKind::Reasoning;
    double intensity = 1.0;  // in (0,1], scales injection length
    std::uint64_t seed = 0;
};

/// A bank of injection templates for one attack kind. Semantic kinds use
/// one prose template per line with slots {title}, {category}, {term};
/// the string kind's bank holds rare token fragments, one per line.
class TemplateBank {
public:
    /// The embedded default bank for a kind.
    static const TemplateBank& builtin(AttackKind kind);

    /// Load `<dir>/<kind_name>.txt`. Throws DataError when unreadable or
    /// empty.
    static TemplateBank load_file(const std::string& path);

    explicit TemplateBank(std::vector<std::string> lines);

    const std::vector<std::string>& lines() const { return lines_; }

private:
    std::vector<std::string> lines_;
};

/// Banks for all kinds, defaulting to the builtins; individual kinds can
/// be overridden from a directory of template files.
class TemplateLibrary {
public:
    TemplateLibrary() = default;

    /// Override from a directory containing `<kind>.txt` files; kinds
    /// without a file keep their builtin bank.
    static TemplateLibrary from_directory(const std::string& dir);

    const TemplateBank& bank(AttackKind kind) const;

private:
    std::vector<std::pair<AttackKind, TemplateBank>> overrides_;
};

/// Deterministic injected text for (record, spec). The string kind draws
/// rare fragments sized to trip the perplexity gate; all other kinds fill
/// prose templates from the record's title/category; hybrid_stealth
/// composes seo_stuffing/authority_injection/use_case_saturation at
/// 20/40/40 character shares.
std::string generate_injection(const corpus::ProductRecord& record, const AttackSpec& spec,
                               const TemplateLibrary& library = {});

/// Copy of the record with the injection applied and ground truth set.
/// Throws DataError when the record is already attacked.
corpus::ProductRecord apply_attack(const corpus::ProductRecord& record, const AttackSpec& spec,
                                   const TemplateLibrary& library = {});

}  // namespace geoshield::attacks
