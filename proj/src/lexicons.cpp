#include "pajama/lexicons.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "pajama/error.hpp"
#include "pajama/text.hpp"

namespace pajama::lexicons {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), ErrorCode::NotFound, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* embedded_content(const char* name) {
    for (const auto& f : embedded_files()) {
        if (std::string(f.name) == name) return f.content;
    }
    throw Error(ErrorCode::NotFound, std::string("no embedded lexicon ") + name);
}

std::unordered_set<std::string> as_set(const std::vector<std::string>& words) {
    return {words.begin(), words.end()};
}

} // namespace

std::vector<std::string> parse_word_list(const std::string& content) {
    std::vector<std::string> words;
    std::istringstream in(content);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = text::trim(line);
        if (!line.empty()) words.push_back(text::to_lower(line));
    }
    return words;
}

StancePatternSet parse_stance_patterns(const std::string& content) {
    StancePatternSet set;
    std::istringstream in(content);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string trimmed = text::trim(line);
        if (trimmed.empty() || trimmed[0] == '#') continue;

        const auto tab1 = line.find('\t');
        const auto tab2 = tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
        require(tab2 != std::string::npos, ErrorCode::ParseError,
                "stance patterns line " + std::to_string(lineno) +
                ": expected pattern<TAB>weight<TAB>label");

        StanceEntry entry;
        entry.pattern = line.substr(0, tab1);
        const std::string weight_str = line.substr(tab1 + 1, tab2 - tab1 - 1);
        entry.label = text::trim(line.substr(tab2 + 1));

        char* end = nullptr;
        entry.weight = std::strtod(weight_str.c_str(), &end);
        require(end && *end == '\0' && !weight_str.empty(), ErrorCode::ParseError,
                "stance patterns line " + std::to_string(lineno) + ": bad weight '" +
                weight_str + "'");
        require(entry.weight > 0.0, ErrorCode::InvalidArgument,
                "stance patterns line " + std::to_string(lineno) + ": weight must be > 0");
        try {
            entry.compiled = std::regex(entry.pattern, std::regex::ECMAScript);
        } catch (const std::regex_error& e) {
            throw Error(ErrorCode::InvalidArgument,
                        "stance patterns line " + std::to_string(lineno) +
                        ": pattern does not compile: " + e.what());
        }
        set.entries.push_back(std::move(entry));
    }
    return set;
}

std::vector<std::string> load_word_list(const std::string& path) {
    return parse_word_list(read_file(path));
}

StancePatternSet load_stance_patterns(const std::string& path) {
    return parse_stance_patterns(read_file(path));
}

LexiconSet default_lexicons() {
    LexiconSet lex;
    lex.stopwords = as_set(parse_word_list(embedded_content("stopwords.txt")));
    lex.transition_markers = parse_word_list(embedded_content("transition_markers.txt"));
    lex.sentiment_positive = as_set(parse_word_list(embedded_content("sentiment_positive.txt")));
    lex.sentiment_negative = as_set(parse_word_list(embedded_content("sentiment_negative.txt")));
    lex.pronouns = as_set(parse_word_list(embedded_content("pronouns.txt")));
    lex.function_verbs = as_set(parse_word_list(embedded_content("function_verbs.txt")));
    lex.stance = parse_stance_patterns(embedded_content("stance_patterns.tsv"));
    return lex;
}

} // namespace pajama::lexicons
