#include "pajama/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "pajama/error.hpp"
#include "pajama/io.hpp"
#include "pajama/text.hpp"

namespace pajama::config {

namespace {

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            const std::string t = text::trim(cur);
            if (!t.empty()) out.push_back(t);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    const std::string t = text::trim(cur);
    if (!t.empty()) out.push_back(t);
    return out;
}

long parse_long(const std::string& value, const std::string& key) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(value, &pos);
        require(pos == value.size(), ErrorCode::ParseError, "trailing characters");
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "config key " + key + ": bad integer '" + value + "'");
    }
}

double parse_double(const std::string& value, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        require(pos == value.size(), ErrorCode::ParseError, "trailing characters");
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "config key " + key + ": bad number '" + value + "'");
    }
}

} // namespace

unsigned default_jobs() {
    return std::clamp(std::thread::hardware_concurrency(), 1u, 8u);
}

RunConfig parse_config(const std::string& content, const std::string& source_name) {
    RunConfig cfg;
    std::istringstream in(content);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = text::trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        require(eq != std::string::npos, ErrorCode::ParseError,
                source_name + " line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = text::trim(line.substr(0, eq));
        const std::string value = text::trim(line.substr(eq + 1));

        if (key == "judges") {
            cfg.judge_selection = (value == "all") ? std::vector<std::string>{}
                                                   : split_commas(value);
        } else if (key == "embed_url") {
            cfg.embed_url = value;
        } else if (key == "classify_url") {
            cfg.classify_url = value;
        } else if (key == "llm_url") {
            cfg.llm_url = value;
        } else if (key == "llm_model") {
            cfg.llm_model = value;
        } else if (key == "llm_api_key_env") {
            cfg.llm_api_key_env = value;
        } else if (key == "hate_model_id") {
            cfg.hate_model_id = value;
        } else if (key == "factuality_model_id") {
            cfg.factuality_model_id = value;
        } else if (key == "timeout_ms") {
            cfg.timeout_ms = parse_long(value, key);
        } else if (key == "max_in_flight") {
            cfg.max_in_flight = static_cast<int>(parse_long(value, key));
        } else if (key == "fitter") {
            require(value == "triplet" || value == "triplet+em", ErrorCode::ParseError,
                    source_name + " line " + std::to_string(lineno) +
                    ": fitter must be 'triplet' or 'triplet+em'");
            cfg.fitter = value;
        } else if (key == "prior") {
            cfg.prior = parse_double(value, key);
        } else if (key == "clamp_epsilon") {
            cfg.clamp_epsilon = parse_double(value, key);
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(parse_long(value, key));
        } else if (key == "jobs") {
            cfg.jobs = static_cast<unsigned>(parse_long(value, key));
        } else if (key == "price_per_1k_prompt") {
            cfg.price_per_1k_prompt = parse_double(value, key);
        } else if (key == "price_per_1k_completion") {
            cfg.price_per_1k_completion = parse_double(value, key);
        } else {
            throw Error(ErrorCode::ParseError, source_name + " line " + std::to_string(lineno) +
                                                   ": unknown key '" + key + "'");
        }
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    return parse_config(io::read_text_file(path), path);
}

void apply_env_overrides(RunConfig& config) {
    if (const char* v = std::getenv("PAJAMA_EMBED_URL"); v && *v) config.embed_url = v;
    if (const char* v = std::getenv("PAJAMA_CLASSIFY_URL"); v && *v) config.classify_url = v;
}

} // namespace pajama::config
