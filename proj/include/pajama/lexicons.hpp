// Word lists and stance patterns backing the built-in judges. The canonical
// copies ship as data files (one entry per line, UTF-8, '#' comments; stance
// patterns tab-separated pattern/weight/label). The same content is embedded
// in the binary so judges work without a data directory; a test keeps the
// two in sync.

#pragma once

#include <regex>
#include <string>
#include <unordered_set>
#include <vector>

namespace pajama::lexicons {

struct StanceEntry {
    std::string pattern; // lowercase regex, matched against lowercased text
    double weight = 0.0; // > 0
    std::string label;
    std::regex compiled;
};

struct StancePatternSet {
    std::vector<StanceEntry> entries;
};

// One entry per line, '#' starts a comment, blank lines skipped.
std::vector<std::string> parse_word_list(const std::string& content);

// Tab-separated (pattern, weight, label); throws ParseError with the line
// number on malformed rows, InvalidArgument on weight <= 0 or a pattern that
// does not compile.
StancePatternSet parse_stance_patterns(const std::string& content);

std::vector<std::string> load_word_list(const std::string& path);
StancePatternSet load_stance_patterns(const std::string& path);

struct LexiconSet {
    std::unordered_set<std::string> stopwords;
    std::vector<std::string> transition_markers;
    std::unordered_set<std::string> sentiment_positive;
    std::unordered_set<std::string> sentiment_negative;
    std::unordered_set<std::string> pronouns;
    std::unordered_set<std::string> function_verbs;
    StancePatternSet stance;
};

// Parsed from the embedded defaults below.
LexiconSet default_lexicons();

struct EmbeddedFile {
    const char* name;    // matches the file name under data/
    const char* content; // byte-identical to that file
};

const std::vector<EmbeddedFile>& embedded_files();

} // namespace pajama::lexicons
