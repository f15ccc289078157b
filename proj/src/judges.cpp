#include "pajama/judges.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <regex>
#include <unordered_map>
#include <unordered_set>

#include "pajama/text.hpp"

namespace pajama::judges {

using text::tokenize;
using text::to_lower;
using text::trim;

double flesch_reading_ease_inverted(const std::string&, const std::string& response) {
    const auto stats = text::compute_stats(response);
    require(stats.word_count >= 1 && stats.sentence_count >= 1, ErrorCode::EmptyText,
            "readability needs at least one word and one sentence");
    const double words = static_cast<double>(stats.word_count);
    const double sentences = static_cast<double>(stats.sentence_count);
    const double syllables = static_cast<double>(stats.syllable_count);
    const double fre = 206.835 - 1.015 * (words / sentences) - 84.6 * (syllables / words);
    return 100.0 - fre;
}

double smog_index(const std::string&, const std::string& response) {
    const auto stats = text::compute_stats(response);
    require(stats.sentence_count >= 1, ErrorCode::EmptyText, "smog needs at least one sentence");
    const double poly = static_cast<double>(stats.polysyllable_count);
    const double sentences = static_cast<double>(stats.sentence_count);
    return 1.0430 * std::sqrt(poly * 30.0 / sentences) + 3.1291;
}

double information_density(const std::string&, const std::string& response,
                           const std::unordered_set<std::string>& stopwords) {
    const auto tokens = tokenize(response);
    if (tokens.empty()) return 0.0;
    std::size_t content = 0;
    for (const auto& t : tokens) {
        if (!stopwords.count(t)) ++content;
    }
    return static_cast<double>(content) / static_cast<double>(tokens.size());
}

double lexical_overlap_tfidf(const std::string& query, const std::string& response,
                             const std::unordered_set<std::string>& stopwords) {
    auto content_tokens = [&](const std::string& s) {
        std::vector<std::string> out;
        for (auto& t : tokenize(s)) {
            if (!stopwords.count(t)) out.push_back(std::move(t));
        }
        return out;
    };
    const auto q_tokens = content_tokens(query);
    const auto r_tokens = content_tokens(response);
    if (q_tokens.empty() || r_tokens.empty()) return 0.0;

    std::unordered_map<std::string, double> q_count, r_count;
    for (const auto& t : q_tokens) q_count[t] += 1.0;
    for (const auto& t : r_tokens) r_count[t] += 1.0;

    // Two-document corpus: df is 1 or 2; smoothed idf = ln((1+N)/(1+df)) + 1.
    auto idf = [&](const std::string& t) {
        const int df = (q_count.count(t) ? 1 : 0) + (r_count.count(t) ? 1 : 0);
        return std::log(3.0 / (1.0 + df)) + 1.0;
    };

    double q_norm2 = 0.0, r_norm2 = 0.0, dot = 0.0;
    for (const auto& [t, c] : q_count) {
        const double w = c * idf(t);
        q_norm2 += w * w;
        auto it = r_count.find(t);
        if (it != r_count.end()) dot += w * (it->second * idf(t));
    }
    for (const auto& [t, c] : r_count) {
        const double w = c * idf(t);
        r_norm2 += w * w;
    }
    if (q_norm2 == 0.0 || r_norm2 == 0.0) return 0.0;
    return dot / (std::sqrt(q_norm2) * std::sqrt(r_norm2));
}

double semantic_similarity(const std::string& query, const std::string& response,
                           EmbeddingService& embedder) {
    if (trim(query).empty() || trim(response).empty()) return 0.0;
    const auto vectors = embedder.embed({query, response});
    require(vectors.size() == 2, ErrorCode::ProtocolViolation,
            "embedder returned wrong vector count");
    require(vectors[0].size() == vectors[1].size(), ErrorCode::ProtocolViolation,
            "embedding dimensions differ");
    double dot = 0.0;
    for (std::size_t i = 0; i < vectors[0].size(); ++i) dot += vectors[0][i] * vectors[1][i];
    return std::clamp(dot, 0.0, 1.0);
}

namespace {

const std::regex& list_prefix_pattern() {
    static const std::regex re(R"(^(?:[0-9]+\.|[-*+][ \t]|[a-zA-Z]\)|[IVXLCDM]+\.))");
    return re;
}

const std::regex& heading_pattern() {
    static const std::regex re(R"(^#{1,6}[ \t]+\S)");
    return re;
}

std::vector<std::string> split_lines(const std::string& s) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : s) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    lines.push_back(cur);
    return lines;
}

std::size_t count_regex_matches(const std::string& s, const std::regex& re) {
    return static_cast<std::size_t>(
        std::distance(std::sregex_iterator(s.begin(), s.end(), re), std::sregex_iterator()));
}

std::string marker_regex(const std::string& marker) {
    std::string out = "\\b";
    for (char c : marker) {
        if (c == ' ') {
            out += "\\s+";
        } else if (std::string("\\^$.|?*+()[]{}").find(c) != std::string::npos) {
            out += '\\';
            out += c;
        } else {
            out += c;
        }
    }
    out += "\\b";
    return out;
}

} // namespace

double list_usage(const std::string&, const std::string& response) {
    std::size_t count = 0;
    for (const auto& line : split_lines(response)) {
        const std::string t = trim(line);
        if (!t.empty() && std::regex_search(t, list_prefix_pattern())) ++count;
    }
    return static_cast<double>(count);
}

double type_token_ratio(const std::string&, const std::string& response) {
    const auto tokens = tokenize(response);
    if (tokens.empty()) return 0.0;
    const std::unordered_set<std::string> unique(tokens.begin(), tokens.end());
    return static_cast<double>(unique.size()) / static_cast<double>(tokens.size());
}

double cohesion(const std::string&, const std::string& response,
                const lexicons::LexiconSet& lex) {
    const auto sentences = text::split_sentences(response);
    if (sentences.empty()) return 0.0;

    auto noun_pronoun_set = [&](const std::string& sentence) {
        std::unordered_set<std::string> out;
        for (const auto& t : tokenize(sentence)) {
            const bool pronoun = lex.pronouns.count(t) > 0;
            const bool noun_like = !lex.stopwords.count(t) && !lex.function_verbs.count(t);
            if (pronoun || noun_like) out.insert(t);
        }
        return out;
    };

    std::size_t overlap = 0;
    std::unordered_set<std::string> prev;
    for (const auto& sentence : sentences) {
        const auto cur = noun_pronoun_set(sentence);
        for (const auto& t : cur) {
            if (prev.count(t)) ++overlap;
        }
        prev = cur;
    }
    return static_cast<double>(overlap) / static_cast<double>(sentences.size());
}

StructuralCounts structural_elements(const std::string&, const std::string& response) {
    StructuralCounts counts;
    std::size_t headings = 0, questions = 0;
    for (const auto& line : split_lines(response)) {
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (std::regex_search(t, heading_pattern())) ++headings;
        if (t.back() == '?') ++questions;
    }
    counts.headings = static_cast<double>(headings);
    counts.questions_negated = -static_cast<double>(questions);
    counts.emphasis = static_cast<double>(text::count_non_overlapping(response, "*") +
                                          text::count_non_overlapping(response, "**") +
                                          text::count_non_overlapping(response, "_"));
    return counts;
}

double transition_marker_density(const std::string&, const std::string& response,
                                 const std::vector<std::string>& markers) {
    const auto word_count = tokenize(response).size();
    if (word_count == 0) return 0.0;
    const std::string lower = to_lower(response);
    std::size_t hits = 0;
    for (const auto& marker : markers) {
        const std::regex re(marker_regex(marker), std::regex::ECMAScript);
        hits += count_regex_matches(lower, re);
    }
    return static_cast<double>(hits) * 100.0 / static_cast<double>(word_count);
}

double stance_strength(const std::string&, const std::string& response,
                       const lexicons::StancePatternSet& patterns) {
    const std::string lower = to_lower(response);
    double weighted_sum = 0.0;
    std::size_t total = 0;
    for (const auto& entry : patterns.entries) {
        const std::size_t count = count_regex_matches(lower, entry.compiled);
        weighted_sum += static_cast<double>(count) * entry.weight;
        total += count;
    }
    return total ? weighted_sum / static_cast<double>(total) : 0.0;
}

double sentiment_neutrality(const std::string&, const std::string& response,
                            const lexicons::LexiconSet& lex) {
    std::size_t pos = 0, neg = 0;
    for (const auto& t : tokenize(response)) {
        if (lex.sentiment_positive.count(t)) ++pos;
        if (lex.sentiment_negative.count(t)) ++neg;
    }
    const double total = std::max<std::size_t>(1, pos + neg);
    const double polarity = (static_cast<double>(pos) - static_cast<double>(neg)) / total;
    return 1.0 - std::abs(polarity);
}

namespace {

double positive_class_probability(const std::vector<std::vector<double>>& probs) {
    require(probs.size() == 1, ErrorCode::ProtocolViolation,
            "classifier returned wrong vector count");
    require(probs[0].size() >= 2, ErrorCode::ProtocolViolation,
            "classifier must return at least two classes");
    return probs[0][1];
}

} // namespace

double hate_speech_probability(const std::string&, const std::string& response,
                               ClassifierService& classifier, const std::string& model_id) {
    return positive_class_probability(classifier.classify({response}, model_id));
}

double factuality_score(const std::string& query, const std::string& response,
                        ClassifierService& classifier, const std::string& model_id) {
    return positive_class_probability(classifier.classify({query + "\n\n" + response}, model_id));
}

JudgeRegistry::JudgeRegistry(RegistryConfig config)
    : lex_(std::make_shared<const lexicons::LexiconSet>(std::move(config.lexicons))),
      embedder_(std::move(config.embedder)),
      classifier_(std::move(config.classifier)) {
    const auto lex = lex_;
    const auto embedder = embedder_;
    const auto classifier = classifier_;
    const auto hate_model = config.hate_model_id;
    const auto fact_model = config.factuality_model_id;

    auto add = [&](std::string id, std::string name, Criterion criterion, int polarity,
                   ServiceKind service,
                   std::function<double(const std::string&, const std::string&)> fn) {
        Judge j;
        j.descriptor = {std::move(id), std::move(name), criterion, polarity,
                        JudgeSource::BuiltIn, service};
        j.score = std::move(fn);
        judges_.push_back(std::move(j));
    };

    auto need_embedder = [embedder]() -> EmbeddingService& {
        require(embedder != nullptr, ErrorCode::ServiceUnavailable,
                "embedding service not configured");
        return *embedder;
    };
    auto need_classifier = [classifier]() -> ClassifierService& {
        require(classifier != nullptr, ErrorCode::ServiceUnavailable,
                "classifier service not configured");
        return *classifier;
    };

    add("bias.sentiment_neutrality", "Sentiment neutrality", Criterion::Bias, +1,
        ServiceKind::None,
        [lex](const std::string& q, const std::string& r) { return sentiment_neutrality(q, r, *lex); });
    add("bias.stance_strength", "Stance strength", Criterion::Bias, -1, ServiceKind::None,
        [lex](const std::string& q, const std::string& r) { return stance_strength(q, r, lex->stance); });
    add("factuality.classifier", "Factuality classifier", Criterion::Factuality, +1,
        ServiceKind::Classifier,
        [need_classifier, fact_model](const std::string& q, const std::string& r) {
            return factuality_score(q, r, need_classifier(), fact_model);
        });
    add("readability.fre_inverted", "Flesch reading ease (inverted)", Criterion::Readability, -1,
        ServiceKind::None, flesch_reading_ease_inverted);
    add("readability.information_density", "Information density", Criterion::Readability, +1,
        ServiceKind::None,
        [lex](const std::string& q, const std::string& r) {
            return information_density(q, r, lex->stopwords);
        });
    add("readability.smog", "SMOG index", Criterion::Readability, -1, ServiceKind::None,
        smog_index);
    add("relevance.lexical_overlap_tfidf", "Lexical overlap (tf-idf cosine)",
        Criterion::Relevance, +1, ServiceKind::None,
        [lex](const std::string& q, const std::string& r) {
            return lexical_overlap_tfidf(q, r, lex->stopwords);
        });
    add("relevance.semantic_similarity", "Semantic similarity (embeddings)",
        Criterion::Relevance, +1, ServiceKind::Embedding,
        [need_embedder](const std::string& q, const std::string& r) {
            return semantic_similarity(q, r, need_embedder());
        });
    add("safety.hate_speech", "Hate speech probability", Criterion::Safety, -1,
        ServiceKind::Classifier,
        [need_classifier, hate_model](const std::string& q, const std::string& r) {
            return hate_speech_probability(q, r, need_classifier(), hate_model);
        });
    add("structure.cohesion", "Sentence cohesion", Criterion::Structure, +1, ServiceKind::None,
        [lex](const std::string& q, const std::string& r) { return cohesion(q, r, *lex); });
    add("structure.emphasis", "Emphasis marker count", Criterion::Structure, +1,
        ServiceKind::None,
        [](const std::string& q, const std::string& r) { return structural_elements(q, r).emphasis; });
    add("structure.headings", "Heading count", Criterion::Structure, +1, ServiceKind::None,
        [](const std::string& q, const std::string& r) { return structural_elements(q, r).headings; });
    add("structure.list_usage", "List usage", Criterion::Structure, +1, ServiceKind::None,
        list_usage);
    add("structure.questions_negated", "Question lines (negated)", Criterion::Structure, +1,
        ServiceKind::None,
        [](const std::string& q, const std::string& r) {
            return structural_elements(q, r).questions_negated;
        });
    add("structure.transition_density", "Transition marker density", Criterion::Structure, +1,
        ServiceKind::None,
        [lex](const std::string& q, const std::string& r) {
            return transition_marker_density(q, r, lex->transition_markers);
        });
    add("structure.type_token_ratio", "Type-token ratio", Criterion::Structure, +1,
        ServiceKind::None, type_token_ratio);

    std::sort(judges_.begin(), judges_.end(),
              [](const Judge& a, const Judge& b) { return a.descriptor.id < b.descriptor.id; });
}

const Judge& JudgeRegistry::get(const std::string& id) const {
    for (const auto& j : judges_) {
        if (j.descriptor.id == id) return j;
    }
    throw Error(ErrorCode::NotFound, "unknown judge id '" + id + "'");
}

std::vector<JudgeDescriptor> JudgeRegistry::descriptors() const {
    std::vector<JudgeDescriptor> out;
    out.reserve(judges_.size());
    for (const auto& j : judges_) out.push_back(j.descriptor);
    return out;
}

std::vector<JudgeDescriptor> JudgeRegistry::descriptors_for(
    const std::vector<std::string>& ids) const {
    std::vector<JudgeDescriptor> out;
    out.reserve(ids.size());
    for (const auto& id : ids) out.push_back(get(id).descriptor);
    return out;
}

Scorer JudgeRegistry::scorer() const {
    // Capture by value: the registry may be a temporary by the time the
    // scorer runs, and the lambda must stay thread-safe.
    std::unordered_map<std::string, std::function<double(const std::string&, const std::string&)>>
        by_id;
    for (const auto& j : judges_) by_id[j.descriptor.id] = j.score;
    return [by_id](const JudgeDescriptor& judge, const EvaluationItem& item) {
        auto it = by_id.find(judge.id);
        require(it != by_id.end(), ErrorCode::NotFound, "unknown judge id '" + judge.id + "'");
        const double score_a = it->second(item.query, item.response_a);
        const double score_b = it->second(item.query, item.response_b);
        return ScoreRecord::make_ok(judge.id, item.id, score_a, score_b);
    };
}

} // namespace pajama::judges
