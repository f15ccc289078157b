// Judge-program synthesis support: prompt construction per criterion, code
// extraction from chat replies, the append-only JSONL catalog, and cost
// estimation. Synthesized sources are catalogued verbatim and never executed
// by this toolkit.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pajama/clients.hpp"
#include "pajama/core.hpp"

namespace pajama::synthesis {

enum class ExtractionStatus { Extracted, ExtractionFailed };

const char* extraction_status_name(ExtractionStatus s);
ExtractionStatus extraction_status_from_name(const std::string& name);

struct SynthesizedProgram {
    std::string id;
    Criterion criterion = Criterion::Structure;
    std::string source_text;   // nonempty iff status == Extracted
    std::string language_tag;  // from the code fence, may be empty
    std::string model_name;
    std::string created_at;    // ISO-8601 UTC
    std::string prompt;        // exact prompt sent
    std::string prompt_hash;   // fnv1a64 of prompt, 16 hex digits
    ExtractionStatus status = ExtractionStatus::ExtractionFailed;
    std::string raw_reply;     // attached when extraction failed
};

// 64-bit FNV-1a, zero-padded lowercase hex.
std::string fnv1a64_hex(const std::string& data);

// Repo-defined one-line description of each criterion, interpolated into the
// synthesis prompt.
std::string criterion_description(Criterion criterion);

// Full judging-program prompt for one criterion. The template asks for Python
// code scoring a response (higher = better) and names the required entry
// point `def judging_function(query, response):`.
std::string judging_prompt(Criterion criterion);

struct ExtractedBlock {
    std::string code;
    std::string language_tag;
};

// First fenced code block that defines judging_function(query, response);
// blocks without the entry point are skipped.
std::optional<ExtractedBlock> extract_judging_function(const std::string& reply);

// Sends the criterion prompt through the chat client and catalogs the reply.
// `sequence` disambiguates ids within a batch.
SynthesizedProgram synthesize_judge(Criterion criterion, clients::HttpChatClient& chat,
                                    std::size_t sequence = 0);

// Builds the program record from a raw reply (shared by synthesize_judge and
// tests; no network).
SynthesizedProgram make_program(Criterion criterion, const std::string& prompt,
                                const std::string& reply, const std::string& model_name,
                                const std::string& created_at, std::size_t sequence);

// JSONL catalog. Save appends; load reads the whole file and reports the
// 1-based line number of the first malformed record.
void catalog_save(const std::vector<SynthesizedProgram>& programs, const std::string& path);
std::vector<SynthesizedProgram> catalog_load(const std::string& path);

// n * (prompt_tokens*price_prompt + completion_tokens*price_completion) / 1000.
double estimate_synthesis_cost(long n_programs, long avg_prompt_tokens,
                               long avg_completion_tokens, double price_per_1k_prompt,
                               double price_per_1k_completion);

} // namespace pajama::synthesis
