#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace geoshield::text {

/// Trim ASCII whitespace from both ends.
std::string_view trim(std::string_view s);

/// Lowercase a copy (ASCII only; byte-level, locale-independent).
std::string to_lower(std::string_view s);

/// Collapse runs of whitespace to single spaces and trim.
std::string normalize_whitespace(std::string_view s);

/// Whitespace-delimited tokens, lowercased, with leading/trailing
/// punctuation stripped. Empty tokens are dropped.
std::vector<std::string> tokenize(std::string_view s);

/// Split into sentences on [.!?] followed by whitespace or end of text.
/// The terminator stays attached to its sentence. A trailing fragment
/// without a terminator is returned as a final sentence.
std::vector<std::string> split_sentences(std::string_view s);

/// Case-insensitive substring search.
bool contains_icase(std::string_view haystack, std::string_view needle);

/// Join strings with a separator.
std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace geoshield::text
