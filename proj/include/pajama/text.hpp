// Shared text machinery for the built-in judges. The rules here are part of
// the judging contract and are pinned so scores stay reproducible:
//
//   tokens     lowercased maximal runs of ASCII [a-z0-9]; everything else
//              separates (non-ASCII bytes included; English-only heuristics)
//   sentences  segments ending at '.', '!' or '?' followed by whitespace or
//              end of text; a segment only counts if it contains a token
//   syllables  runs of vowels [aeiouy] per token, minus a silent trailing
//              'e' (kept when the token ends in "le"), minimum 1

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace pajama::text {

struct TextStats {
    std::size_t sentence_count = 0;
    std::size_t word_count = 0;
    std::size_t syllable_count = 0;
    std::size_t polysyllable_count = 0; // words with >= 3 syllables
    std::size_t unique_word_count = 0;
};

std::string to_lower(const std::string& s);

std::vector<std::string> tokenize(const std::string& s);

// Raw sentence segments (original casing, trimmed); token-free segments are
// dropped.
std::vector<std::string> split_sentences(const std::string& s);

std::size_t count_syllables(const std::string& word);

TextStats compute_stats(const std::string& s);

// Non-overlapping occurrences of `needle` in `haystack`, scanning left to
// right (Python str.count semantics).
std::size_t count_non_overlapping(const std::string& haystack, const std::string& needle);

std::string trim(const std::string& s);

} // namespace pajama::text
