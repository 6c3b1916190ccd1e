#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "geoshield/attack_kind.hpp"

namespace geoshield::corpus {

/// One candidate description, optionally carrying injected attack text
/// and the ground-truth attack label.
struct ProductRecord {
    std::string id;
    std::string category;
    std::string title;
    std::string base_description;
    std::optional<std::string> injected_text;
    std::optional<AttackKind> attack_kind;
    bool is_attacked = false;
};

/// A query plus an ordered set of candidates, with an optional
/// ground-truth target (the attacked candidate).
struct CandidateSet {
    std::string query;
    std::vector<ProductRecord> records;
    std::optional<std::string> target_id;
};

enum class DatasetSource { Product, WebPassage, Synthetic };

struct DatasetManifest {
    std::string name;
    DatasetSource source = DatasetSource::Synthetic;
    std::vector<std::string> categories;
    std::size_t record_count = 0;
};

struct MalformedLine {
    std::size_t line_number = 0;  // 1-based
    std::string reason;
};

struct Dataset {
    DatasetManifest manifest;
    std::vector<CandidateSet> sets;
    std::vector<MalformedLine> malformed;  // populated only with skip_invalid
};

struct LoadOptions {
    /// When false (default), the first malformed line aborts the load.
    bool skip_invalid = false;
};

/// Raw field bag used by validate_record; optional fields absent when the
/// JSON key is missing.
struct RawRecord {
    std::optional<std::string> id;
    std::optional<std::string> category;
    std::optional<std::string> title;
    std::optional<std::string> description;
    std::optional<std::string> injected_text;
    std::optional<std::string> attack_kind;
    std::optional<bool> is_attacked;
};

/// Validate raw fields into a ProductRecord. Throws DataError with a
/// MissingField/InvariantViolation style message.
ProductRecord validate_record(const RawRecord& raw);

/// The attacker-visible surface: base_description, then a single space,
/// then injected_text (when present and non-empty).
std::string concat_description(const ProductRecord& record);

/// Load a JSONL dataset. Each line is either a bare record object or a
/// candidate-set object with `query`, optional `target_id`, and `records`.
/// Bare records sharing a category are grouped into one candidate set per
/// category. Throws DataError on unreadable files, malformed lines (unless
/// skip_invalid), or an empty dataset.
Dataset load_dataset(const std::string& path, const LoadOptions& options = {});

/// Serialize back to JSONL, one candidate set per line. Field order is
/// fixed so output is deterministic.
void save_dataset(const Dataset& dataset, const std::string& path);
std::string dataset_to_jsonl(const Dataset& dataset);

std::string_view dataset_source_name(DatasetSource source);

}  // namespace geoshield::corpus
