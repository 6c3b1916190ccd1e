#include "geoshield/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "geoshield/embedded_data.hpp"
#include "geoshield/error.hpp"
#include "geoshield/text.hpp"

namespace geoshield::attacks {

namespace {

std::vector<std::string> split_lines(std::string_view blob) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= blob.size()) {
        std::size_t end = blob.find('\n', start);
        if (end == std::string_view::npos) end = blob.size();
        std::string_view line = text::trim(blob.substr(start, end - start));
        if (!line.empty()) lines.emplace_back(line);
        if (end == blob.size()) break;
        start = end + 1;
    }
    return lines;
}

std::string_view builtin_blob(AttackKind kind) {
    switch (kind) {
        case AttackKind::String: return data::kTplString;
        case AttackKind::Reasoning: return data::kTplReasoning;
        case AttackKind::Review: return data::kTplReview;
        case AttackKind::SeoStuffing: return data::kTplSeoStuffing;
        case AttackKind::AuthorityInjection: return data::kTplAuthorityInjection;
        case AttackKind::FakeSocialProof: return data::kTplFakeSocialProof;
        case AttackKind::SpecAmplification: return data::kTplSpecAmplification;
        case AttackKind::UseCaseSaturation: return data::kTplUseCaseSaturation;
        case AttackKind::HybridStealth: return {};  // composed, no own bank
    }
    return {};
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::mt19937_64 make_rng(const corpus::ProductRecord& record, const AttackSpec& spec) {
    // Per-(record, spec) stream: reproducible under parallel generation.
    return std::mt19937_64(spec.seed ^ (fnv1a64(record.id) * 0x9e3779b97f4a7c15ull));
}

int sentence_budget(double intensity) {
    // Linear in intensity: 1..12 sentences.
    int n = int(std::lround(intensity * 12.0));
    return std::clamp(n, 1, 12);
}

std::string replace_all(std::string s, std::string_view slot, std::string_view value) {
    std::size_t pos = 0;
    while ((pos = s.find(slot, pos)) != std::string::npos) {
        s.replace(pos, slot.size(), value);
        pos += value.size();
    }
    return s;
}

std::string pick_term(const corpus::ProductRecord& record, std::mt19937_64& rng) {
    auto tokens = text::tokenize(record.title);
    if (tokens.empty()) tokens = text::tokenize(record.category);
    if (tokens.empty()) return "product";
    // Prefer content words over short function words when any exist.
    std::vector<std::string> content;
    for (const auto& t : tokens) {
        if (t.size() >= 4) content.push_back(t);
    }
    const auto& pool = content.empty() ? tokens : content;
    return pool[rng() % pool.size()];
}

std::string fill_template(const std::string& tpl, const corpus::ProductRecord& record,
                          std::mt19937_64& rng) {
    std::string out = tpl;
    out = replace_all(std::move(out), "{title}", record.title);
    out = replace_all(std::move(out), "{category}", record.category);
    if (out.find("{term}") != std::string::npos) {
        out = replace_all(std::move(out), "{term}", pick_term(record, rng));
    }
    return out;
}

std::string generate_semantic(const corpus::ProductRecord& record, AttackKind kind,
                              int sentences, std::mt19937_64& rng,
                              const TemplateLibrary& library) {
    const auto& lines = library.bank(kind).lines();
    std::vector<std::string> out;
    out.reserve(std::size_t(sentences));
    for (int i = 0; i < sentences; ++i) {
        const std::string& tpl = lines[rng() % lines.size()];
        out.push_back(fill_template(tpl, record, rng));
    }
    return text::join(out, " ");
}

std::string generate_string_gibberish(const corpus::ProductRecord& record,
                                      const AttackSpec& spec, std::mt19937_64& rng,
                                      const TemplateLibrary& library) {
    // Sized so the perplexity of description + injection clears the gate,
    // not just the injection alone.
    const auto& frags = library.bank(AttackKind::String).lines();
    std::size_t target = std::max<std::size_t>(
        std::size_t(std::lround(spec.intensity * 4.0 * double(record.base_description.size()))),
        300);
    std::string out;
    while (out.size() < target) {
        if (!out.empty()) out.push_back(' ');
        out += frags[rng() % frags.size()];
    }
    return out;
}

// Trim to at most `budget` characters at a word boundary.
std::string trim_to_chars(const std::string& s, std::size_t budget) {
    if (s.size() <= budget) return s;
    std::size_t cut = s.rfind(' ', budget);
    if (cut == std::string::npos || cut == 0) cut = budget;
    return s.substr(0, cut);
}

std::string generate_hybrid(const corpus::ProductRecord& record, const AttackSpec& spec,
                            std::mt19937_64& rng, const TemplateLibrary& library) {
    int sentences = sentence_budget(spec.intensity);
    // Oversample each constituent, then cut to the 20/40/40 length shares.
    std::string seo = generate_semantic(record, AttackKind::SeoStuffing,
                                        std::max(2, sentences), rng, library);
    std::string authority = generate_semantic(record, AttackKind::AuthorityInjection,
                                              std::max(2, sentences), rng, library);
    std::string usecase = generate_semantic(record, AttackKind::UseCaseSaturation,
                                            std::max(2, sentences), rng, library);

    std::size_t total = std::max<std::size_t>(std::size_t(sentences) * 75, 150);
    std::string part_seo = trim_to_chars(seo, total / 5);             // 20%
    std::string part_auth = trim_to_chars(authority, total * 2 / 5);  // 40%
    std::string part_use = trim_to_chars(usecase, total * 2 / 5);     // 40%
    return part_seo + " " + part_auth + " " + part_use;
}

}  // namespace

TemplateBank::TemplateBank(std::vector<std::string> lines) : lines_(std::move(lines)) {
    if (lines_.empty()) throw DataError("template bank is empty");
}

const TemplateBank& TemplateBank::builtin(AttackKind kind) {
    static const auto* banks = [] {
        auto* map = new std::vector<std::pair<AttackKind, TemplateBank>>();
        for (AttackKind k : kAllAttackKinds) {
            if (k == AttackKind::HybridStealth) continue;
            map->emplace_back(k, TemplateBank(split_lines(builtin_blob(k))));
        }
        return map;
    }();
    for (const auto& [k, bank] : *banks) {
        if (k == kind) return bank;
    }
    throw DataError("no builtin template bank for kind '" +
                    std::string(attack_kind_name(kind)) + "'");
}

TemplateBank TemplateBank::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read template bank: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return TemplateBank(split_lines(buf.str()));
}

TemplateLibrary TemplateLibrary::from_directory(const std::string& dir) {
    TemplateLibrary lib;
    for (AttackKind kind : kAllAttackKinds) {
        if (kind == AttackKind::HybridStealth) continue;
        std::string path = dir + "/" + std::string(attack_kind_name(kind)) + ".txt";
        if (std::ifstream probe(path); probe) {
            lib.overrides_.emplace_back(kind, TemplateBank::load_file(path));
        }
    }
    return lib;
}

const TemplateBank& TemplateLibrary::bank(AttackKind kind) const {
    for (const auto& [k, b] : overrides_) {
        if (k == kind) return b;
    }
    return TemplateBank::builtin(kind);
}

std::string generate_injection(const corpus::ProductRecord& record, const AttackSpec& spec,
                               const TemplateLibrary& library) {
    if (!(spec.intensity > 0.0 && spec.intensity <= 1.0)) {
        throw DataError("attack intensity must be in (0,1]");
    }
    auto rng = make_rng(record, spec);
    switch (spec.kind) {
        case AttackKind::String:
            return generate_string_gibberish(record, spec, rng, library);
        case AttackKind::HybridStealth:
            return generate_hybrid(record, spec, rng, library);
        default:
            return generate_semantic(record, spec.kind, sentence_budget(spec.intensity), rng,
                                     library);
    }
}

corpus::ProductRecord apply_attack(const corpus::ProductRecord& record, const AttackSpec& spec,
                                   const TemplateLibrary& library) {
    if (record.is_attacked || record.injected_text) {
        throw DataError("record '" + record.id + "' is already attacked");
    }
    corpus::ProductRecord out = record;
    out.injected_text = generate_injection(record, spec, library);
    out.attack_kind = spec.kind;
    out.is_attacked = true;
    return out;
}

}  // namespace geoshield::attacks
