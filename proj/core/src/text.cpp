#include "geoshield/text.hpp"

#include <algorithm>
#include <cctype>

namespace geoshield::text {

namespace {

bool is_space(char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
}

char lower(char c) {
    return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

}  // namespace

std::string_view trim(std::string_view s) {
    size_t b = 0;
    size_t e = s.size();
    while (b < e && is_space(s[b])) ++b;
    while (e > b && is_space(s[e - 1])) --e;
    return s.substr(b, e - b);
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), lower);
    return out;
}

std::string normalize_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool in_space = false;
    for (char c : trim(s)) {
        if (is_space(c)) {
            in_space = true;
            continue;
        }
        if (in_space && !out.empty()) out.push_back(' ');
        in_space = false;
        out.push_back(c);
    }
    return out;
}

std::vector<std::string> tokenize(std::string_view s) {
    std::vector<std::string> tokens;
    size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && is_space(s[i])) ++i;
        size_t start = i;
        while (i < s.size() && !is_space(s[i])) ++i;
        std::string_view raw = s.substr(start, i - start);
        size_t b = 0;
        size_t e = raw.size();
        auto is_punct = [](char c) {
            return std::ispunct(static_cast<unsigned char>(c)) != 0;
        };
        while (b < e && is_punct(raw[b])) ++b;
        while (e > b && is_punct(raw[e - 1])) --e;
        if (e > b) {
            std::string tok;
            tok.reserve(e - b);
            for (size_t k = b; k < e; ++k) tok.push_back(lower(raw[k]));
            tokens.push_back(std::move(tok));
        }
    }
    return tokens;
}

std::vector<std::string> split_sentences(std::string_view s) {
    std::vector<std::string> sentences;
    std::string_view body = trim(s);
    size_t start = 0;
    for (size_t i = 0; i < body.size(); ++i) {
        char c = body[i];
        if (c == '.' || c == '!' || c == '?') {
            bool at_end = (i + 1 == body.size());
            if (at_end || is_space(body[i + 1])) {
                std::string_view sent = trim(body.substr(start, i + 1 - start));
                if (!sent.empty()) sentences.emplace_back(sent);
                start = i + 1;
            }
        }
    }
    if (start < body.size()) {
        std::string_view tail = trim(body.substr(start));
        if (!tail.empty()) sentences.emplace_back(tail);
    }
    return sentences;
}

bool contains_icase(std::string_view haystack, std::string_view needle) {
    if (needle.empty()) return true;
    if (needle.size() > haystack.size()) return false;
    for (size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
        size_t j = 0;
        while (j < needle.size() && lower(haystack[i + j]) == lower(needle[j])) ++j;
        if (j == needle.size()) return true;
    }
    return false;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out.append(sep);
        out.append(parts[i]);
    }
    return out;
}

}  // namespace geoshield::text
