// Built-in suite of deterministic scoring functions over (query, response)
// pairs, plus the registry that exposes them as judges. Every function here
// is pure given its lexicons; service-backed scorers are deterministic given
// the service's answers and never fabricate a score on failure.

#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "pajama/core.hpp"
#include "pajama/lexicons.hpp"
#include "pajama/services.hpp"

namespace pajama::judges {

// --- readability ---------------------------------------------------------

// 100 - Flesch reading ease; higher = harder to read (polarity -1).
// FRE = 206.835 - 1.015*(words/sentences) - 84.6*(syllables/words).
double flesch_reading_ease_inverted(const std::string& query, const std::string& response);

// 1.0430*sqrt(polysyllables*30/sentences) + 3.1291; higher = harder (polarity -1).
double smog_index(const std::string& query, const std::string& response);

// Content words (non-stopwords) per token, in [0,1].
double information_density(const std::string& query, const std::string& response,
                           const std::unordered_set<std::string>& stopwords);

// --- relevance ------------------------------------------------------------

// Two-document tf-idf cosine with smoothed idf = ln((1+N)/(1+df)) + 1, N = 2,
// L2-normalized; stopwords dropped first; 0.0 when either side empties.
double lexical_overlap_tfidf(const std::string& query, const std::string& response,
                             const std::unordered_set<std::string>& stopwords);

// Dot product of the service's two embeddings, clamped to [0,1]; 0.0 when
// either text is whitespace-only (no service call in that case).
double semantic_similarity(const std::string& query, const std::string& response,
                           EmbeddingService& embedder);

// --- structure ------------------------------------------------------------

// Lines whose trimmed form starts like a list entry: "1.", "- ", "* ", "+ ",
// "a)", "IV.".
double list_usage(const std::string& query, const std::string& response);

double type_token_ratio(const std::string& query, const std::string& response);

// Noun/pronoun overlap between consecutive sentences divided by sentence
// count. Tagging is lexicon-based: the closed pronoun list plus tokens that
// are neither stopwords nor entries of the function-word/verb list.
double cohesion(const std::string& query, const std::string& response,
                const lexicons::LexiconSet& lex);

struct StructuralCounts {
    double headings = 0;          // lines starting "#"... "######" + space
    double questions_negated = 0; // minus the count of lines ending in '?'
    double emphasis = 0;          // count("*") + count("**") + count("_"),
                                  // non-overlapping per needle ("**" also
                                  // counted by "*", reproduced literally)
};

StructuralCounts structural_elements(const std::string& query, const std::string& response);

// Transition-marker occurrences (word-boundary, case-insensitive) per 100
// words; 0 on empty text.
double transition_marker_density(const std::string& query, const std::string& response,
                                 const std::vector<std::string>& markers);

// --- bias -----------------------------------------------------------------

// Weighted mean of matched stance-pattern weights over the lowercased
// response; 0.0 when nothing matches.
double stance_strength(const std::string& query, const std::string& response,
                       const lexicons::StancePatternSet& patterns);

// 1 - |(pos - neg)/max(1, pos + neg)| over sentiment lexicon hits.
double sentiment_neutrality(const std::string& query, const std::string& response,
                            const lexicons::LexiconSet& lex);

// --- safety / factuality (service-backed) ----------------------------------

// Positive-class probability reported by the classifier for the response.
double hate_speech_probability(const std::string& query, const std::string& response,
                               ClassifierService& classifier, const std::string& model_id);

// Correctness probability for the pair, sent to the classifier as a single
// "query\n\nresponse" text; positive class is component [1].
double factuality_score(const std::string& query, const std::string& response,
                        ClassifierService& classifier, const std::string& model_id);

// --- registry ---------------------------------------------------------------

struct Judge {
    JudgeDescriptor descriptor;
    std::function<double(const std::string& query, const std::string& response)> score;
};

struct RegistryConfig {
    lexicons::LexiconSet lexicons = lexicons::default_lexicons();
    std::shared_ptr<EmbeddingService> embedder;     // null: judge fails when scored
    std::shared_ptr<ClassifierService> classifier;  // null: judge fails when scored
    std::string hate_model_id = "hate-speech";
    std::string factuality_model_id = "factuality";
};

class JudgeRegistry {
public:
    explicit JudgeRegistry(RegistryConfig config = {});

    // All judges, sorted by id.
    const std::vector<Judge>& all() const { return judges_; }

    // Throws NotFound on unknown id.
    const Judge& get(const std::string& id) const;

    std::vector<JudgeDescriptor> descriptors() const;

    // Subset in the given id order; unknown ids throw NotFound.
    std::vector<JudgeDescriptor> descriptors_for(const std::vector<std::string>& ids) const;

    // Adapter for build_vote_matrix: scores both responses of an item.
    Scorer scorer() const;

private:
    std::shared_ptr<const lexicons::LexiconSet> lex_;
    std::shared_ptr<EmbeddingService> embedder_;
    std::shared_ptr<ClassifierService> classifier_;
    std::vector<Judge> judges_;
};

} // namespace pajama::judges
