#include "fixtures.hpp"

#include <random>

#include "geoshield/embedded_data.hpp"
#include "geoshield/text.hpp"

namespace fixtures {

namespace gs = geoshield;

const std::vector<std::string> kCategories = {
    "Automotive", "Electronics", "Kitchen", "Toys", "Tools", "Reference",
};

namespace {

// Corpus lines, split once; each category draws from its own contiguous
// slice so same-category records look related.
const std::vector<std::string>& corpus_lines() {
    static const std::vector<std::string> lines = [] {
        std::vector<std::string> out;
        std::string_view blob = gs::data::kReferenceCorpus;
        std::size_t start = 0;
        while (start < blob.size()) {
            std::size_t end = blob.find('\n', start);
            if (end == std::string_view::npos) end = blob.size();
            std::string_view line = gs::text::trim(blob.substr(start, end - start));
            if (!line.empty()) out.emplace_back(line);
            start = end + 1;
        }
        return out;
    }();
    return lines;
}

std::pair<std::size_t, std::size_t> category_slice(const std::string& category) {
    std::size_t n = corpus_lines().size();
    std::size_t chunk = n / kCategories.size();
    for (std::size_t c = 0; c < kCategories.size(); ++c) {
        if (kCategories[c] == category) return {c * chunk, chunk};
    }
    return {0, n};  // unknown category: draw from anywhere
}

std::string title_from(const std::string& sentence, std::size_t index) {
    auto tokens = gs::text::tokenize(sentence);
    std::string title;
    for (std::size_t i = 0; i < tokens.size() && i < 3; ++i) {
        if (!title.empty()) title += ' ';
        title += tokens[i];
    }
    return title + " unit " + std::to_string(index + 1);
}

}  // namespace

gs::corpus::CandidateSet clean_set(const std::string& category, std::size_t n,
                                   std::uint64_t seed) {
    auto [offset, span] = category_slice(category);
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + offset);

    gs::corpus::CandidateSet set;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t sentences = 2 + rng() % 2;
        std::size_t start = offset + rng() % (span - sentences);
        std::string description;
        for (std::size_t s = 0; s < sentences; ++s) {
            if (!description.empty()) description += ' ';
            description += corpus_lines()[start + s];
        }
        gs::corpus::ProductRecord rec;
        rec.id = category.substr(0, 3) + "-" + std::to_string(seed) + "-" + std::to_string(i);
        rec.category = category;
        rec.title = title_from(corpus_lines()[start], i);
        rec.base_description = description;
        set.records.push_back(std::move(rec));
    }
    set.query = set.records.front().title;
    return set;
}

gs::corpus::Dataset clean_dataset(std::size_t per_category, std::uint64_t seed) {
    gs::corpus::Dataset dataset;
    dataset.manifest.name = "fixture-clean";
    dataset.manifest.source = gs::corpus::DatasetSource::Synthetic;
    std::size_t total = 0;
    for (std::size_t c = 0; c < kCategories.size(); ++c) {
        dataset.sets.push_back(clean_set(kCategories[c], per_category, seed + c));
        dataset.manifest.categories.push_back(kCategories[c]);
        total += per_category;
    }
    dataset.manifest.record_count = total;
    return dataset;
}

gs::corpus::Dataset attacked_dataset(std::size_t per_category, std::size_t attacked_per_set,
                                     const gs::attacks::AttackSpec& spec, std::uint64_t seed) {
    auto dataset = clean_dataset(per_category, seed);
    dataset.manifest.name = "fixture-" + std::string(gs::attack_kind_name(spec.kind));
    for (auto& set : dataset.sets) {
        for (std::size_t i = 0; i < attacked_per_set && i < set.records.size(); ++i) {
            set.records[i] = gs::attacks::apply_attack(set.records[i], spec);
        }
        set.target_id = set.records.front().id;
        set.query = set.records.front().title;
    }
    return dataset;
}

}  // namespace fixtures
