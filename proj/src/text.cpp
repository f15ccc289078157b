#include "pajama/text.hpp"

#include <unordered_set>

namespace pajama::text {

namespace {

bool is_ascii_alnum(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

char ascii_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool is_vowel(char c) {
    switch (c) {
        case 'a': case 'e': case 'i': case 'o': case 'u': case 'y': return true;
        default: return false;
    }
}

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

} // namespace

std::string to_lower(const std::string& s) {
    std::string out = s;
    for (char& c : out) c = ascii_lower(c);
    return out;
}

std::vector<std::string> tokenize(const std::string& s) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : s) {
        if (is_ascii_alnum(c)) {
            cur.push_back(ascii_lower(c));
        } else if (!cur.empty()) {
            tokens.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

std::vector<std::string> split_sentences(const std::string& s) {
    std::vector<std::string> sentences;
    std::string cur;
    for (std::size_t i = 0; i < s.size(); ++i) {
        cur.push_back(s[i]);
        const char c = s[i];
        if (c == '.' || c == '!' || c == '?') {
            const bool at_end = (i + 1 == s.size());
            if (at_end || is_space(s[i + 1])) {
                std::string seg = trim(cur);
                if (!tokenize(seg).empty()) sentences.push_back(std::move(seg));
                cur.clear();
            }
        }
    }
    std::string seg = trim(cur);
    if (!tokenize(seg).empty()) sentences.push_back(std::move(seg));
    return sentences;
}

std::size_t count_syllables(const std::string& word) {
    if (word.empty()) return 0;
    std::size_t groups = 0;
    bool in_group = false;
    for (char c : word) {
        const bool v = is_vowel(ascii_lower(c));
        if (v && !in_group) ++groups;
        in_group = v;
    }
    const std::size_t n = word.size();
    const bool trailing_e = ascii_lower(word[n - 1]) == 'e';
    const bool ends_le = n >= 2 && trailing_e && ascii_lower(word[n - 2]) == 'l';
    if (trailing_e && !ends_le && groups > 0) --groups;
    return groups == 0 ? 1 : groups;
}

TextStats compute_stats(const std::string& s) {
    TextStats stats;
    stats.sentence_count = split_sentences(s).size();
    const auto tokens = tokenize(s);
    stats.word_count = tokens.size();
    std::unordered_set<std::string> unique(tokens.begin(), tokens.end());
    stats.unique_word_count = unique.size();
    for (const auto& t : tokens) {
        const std::size_t syl = count_syllables(t);
        stats.syllable_count += syl;
        if (syl >= 3) ++stats.polysyllable_count;
    }
    return stats;
}

std::size_t count_non_overlapping(const std::string& haystack, const std::string& needle) {
    if (needle.empty()) return 0;
    std::size_t count = 0;
    std::size_t pos = 0;
    while ((pos = haystack.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && is_space(s[b])) ++b;
    while (e > b && is_space(s[e - 1])) --e;
    return s.substr(b, e - b);
}

} // namespace pajama::text
