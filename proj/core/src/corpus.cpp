#include "geoshield/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "geoshield/error.hpp"
#include "geoshield/text.hpp"

namespace geoshield::corpus {

using nlohmann::json;

std::string_view dataset_source_name(DatasetSource source) {
    switch (source) {
        case DatasetSource::Product: return "product";
        case DatasetSource::WebPassage: return "web_passage";
        case DatasetSource::Synthetic: return "synthetic";
    }
    return "synthetic";
}

ProductRecord validate_record(const RawRecord& raw) {
    auto missing = [](const char* name) -> DataError {
        return DataError(std::string("missing ") + name);
    };
    if (!raw.id || raw.id->empty()) throw missing("id");
    if (!raw.category) throw missing("category");
    if (!raw.title) throw missing("title");
    if (!raw.description) throw missing("description");

    ProductRecord rec;
    rec.id = *raw.id;
    rec.category = *raw.category;
    rec.title = *raw.title;
    rec.base_description = *raw.description;

    if (text::trim(rec.base_description).empty()) {
        throw DataError("invariant violation: base_description blank after trimming (id=" +
                        rec.id + ")");
    }

    if (raw.injected_text && !raw.injected_text->empty()) {
        rec.injected_text = *raw.injected_text;
    }
    if (raw.attack_kind) {
        auto kind = parse_attack_kind(*raw.attack_kind);
        if (!kind) throw DataError("unknown attack_kind '" + *raw.attack_kind + "'");
        rec.attack_kind = *kind;
    }
    rec.is_attacked = raw.is_attacked.value_or(rec.injected_text.has_value());

    // is_attacked must track the presence of non-empty injected text.
    bool has_injection = rec.injected_text.has_value();
    if (rec.is_attacked != has_injection) {
        throw DataError("invariant violation: is_attacked=" +
                        std::string(rec.is_attacked ? "true" : "false") +
                        " but injected_text is " +
                        (has_injection ? "present" : "absent/empty") + " (id=" + rec.id + ")");
    }
    return rec;
}

std::string concat_description(const ProductRecord& record) {
    if (!record.injected_text || record.injected_text->empty()) {
        return record.base_description;
    }
    return record.base_description + " " + *record.injected_text;
}

namespace {

RawRecord raw_from_json(const json& j) {
    RawRecord raw;
    auto get_str = [&](const char* key) -> std::optional<std::string> {
        auto it = j.find(key);
        if (it == j.end() || it->is_null()) return std::nullopt;
        if (!it->is_string()) throw DataError(std::string("field '") + key + "' must be a string");
        return it->get<std::string>();
    };
    raw.id = get_str("id");
    raw.category = get_str("category");
    raw.title = get_str("title");
    raw.description = get_str("description");
    raw.injected_text = get_str("injected_text");
    raw.attack_kind = get_str("attack_kind");
    auto it = j.find("is_attacked");
    if (it != j.end() && !it->is_null()) {
        if (!it->is_boolean()) throw DataError("field 'is_attacked' must be a boolean");
        raw.is_attacked = it->get<bool>();
    }
    return raw;
}

json record_to_json(const ProductRecord& rec) {
    json j;
    j["id"] = rec.id;
    j["category"] = rec.category;
    j["title"] = rec.title;
    j["description"] = rec.base_description;
    if (rec.injected_text) j["injected_text"] = *rec.injected_text;
    if (rec.attack_kind) j["attack_kind"] = std::string(attack_kind_name(*rec.attack_kind));
    j["is_attacked"] = rec.is_attacked;
    return j;
}

void validate_set(const CandidateSet& set) {
    if (set.records.size() < 2) {
        throw DataError("candidate set needs at least 2 records (query='" + set.query + "')");
    }
    if (set.target_id) {
        bool found = std::any_of(set.records.begin(), set.records.end(),
                                 [&](const ProductRecord& r) { return r.id == *set.target_id; });
        if (!found) {
            throw DataError("target_id '" + *set.target_id + "' names no record in its set");
        }
    }
}

}  // namespace

Dataset load_dataset(const std::string& path, const LoadOptions& options) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read dataset file: " + path);

    Dataset ds;
    std::vector<ProductRecord> loose;  // bare record lines, grouped later
    std::set<std::string> seen_ids;
    std::set<std::string> categories;

    std::string line;
    std::size_t line_no = 0;
    auto fail_line = [&](const std::string& reason) {
        if (options.skip_invalid) {
            ds.malformed.push_back({line_no, reason});
        } else {
            throw DataError("line " + std::to_string(line_no) + ": " + reason);
        }
    };

    auto take_record = [&](ProductRecord rec) {
        if (!seen_ids.insert(rec.id).second) {
            throw DataError("line " + std::to_string(line_no) + ": duplicate id '" + rec.id + "'");
        }
        categories.insert(rec.category);
        ds.manifest.record_count++;
        return rec;
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (text::trim(line).empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            fail_line(std::string("invalid JSON: ") + e.what());
            continue;
        }
        if (!j.is_object()) {
            fail_line("line is not a JSON object");
            continue;
        }
        try {
            if (j.contains("records")) {
                CandidateSet set;
                set.query = j.value("query", std::string{});
                if (j.contains("target_id") && !j["target_id"].is_null()) {
                    set.target_id = j["target_id"].get<std::string>();
                }
                if (!j["records"].is_array()) throw DataError("'records' must be an array");
                for (const auto& rj : j["records"]) {
                    set.records.push_back(take_record(validate_record(raw_from_json(rj))));
                }
                validate_set(set);
                ds.sets.push_back(std::move(set));
            } else {
                loose.push_back(take_record(validate_record(raw_from_json(j))));
            }
        } catch (const DataError& e) {
            // take_record may have counted part of a rejected set; recompute below.
            fail_line(e.what());
        } catch (const json::exception& e) {
            fail_line(std::string("bad field: ") + e.what());
        }
    }

    // Group bare records into one candidate set per category, preserving order.
    std::map<std::string, CandidateSet> grouped;
    std::vector<std::string> group_order;
    for (auto& rec : loose) {
        auto [it, inserted] = grouped.try_emplace(rec.category);
        if (inserted) {
            it->second.query = rec.category;
            group_order.push_back(rec.category);
        }
        it->second.records.push_back(std::move(rec));
    }
    for (const auto& cat : group_order) {
        auto& set = grouped.at(cat);
        validate_set(set);
        ds.sets.push_back(std::move(set));
    }

    std::size_t total = 0;
    for (const auto& set : ds.sets) total += set.records.size();
    ds.manifest.record_count = total;
    if (total == 0) throw DataError("empty dataset: " + path);

    auto stem = path;
    if (auto pos = stem.find_last_of("/\\"); pos != std::string::npos) stem = stem.substr(pos + 1);
    if (auto pos = stem.rfind('.'); pos != std::string::npos) stem = stem.substr(0, pos);
    ds.manifest.name = stem;
    ds.manifest.categories.assign(categories.begin(), categories.end());
    return ds;
}

std::string dataset_to_jsonl(const Dataset& dataset) {
    std::ostringstream out;
    for (const auto& set : dataset.sets) {
        json j;
        j["query"] = set.query;
        if (set.target_id) j["target_id"] = *set.target_id;
        j["records"] = json::array();
        for (const auto& rec : set.records) j["records"].push_back(record_to_json(rec));
        out << j.dump() << "\n";
    }
    return out.str();
}

void save_dataset(const Dataset& dataset, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write dataset file: " + path);
    out << dataset_to_jsonl(dataset);
}

}  // namespace geoshield::corpus
