#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <cstdlib>
#include <map>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "pajama/io.hpp"
#include "pajama/label_model.hpp"
#include "pajama/synthesis.hpp"
#include "test_support.hpp"

using namespace pajama;
using json = nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output; // stdout + stderr
};

// Runs the CLI binary through the shell, capturing combined output.
RunResult run_cli(const std::string& args, const std::string& tmp,
                  const std::string& env = "") {
    const std::string out_file = tmp + "/cli_output.txt";
    const std::string cmd =
        env + " " + std::string(PAJAMA_CLI_PATH) + " " + args + " > " + out_file + " 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_file);
    std::ostringstream ss;
    ss << in.rdbuf();
    result.output = ss.str();
    return result;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

std::string slurp(const std::string& path) { return io::read_text_file(path); }

// Four gold-labeled items whose target response is structured and readable;
// score differences are irrelevant here, the texts just need every offline
// judge to produce finite scores.
std::string items_jsonl() {
    json lines = json::array();
    const std::vector<std::array<std::string, 3>> rows = {
        {"q1", "# Guide\nHowever, steps help. 1. start\n2. finish\nIt is definitely done.",
         "A short reply. Why not?"},
        {"q2", "# Notes\nTherefore, lists win. - one\n- two\nClearly structured and neat.",
         "Plain words with a good vibe."},
        {"q3", "# Plan\nMoreover, the plan holds. * alpha\n* beta\nObviously the plan works.",
         "Nothing special here, right?"},
        {"q4", "# Recap\nConsequently, the recap flows. 1. recap\n2. close\nSurely complete.",
         "A terrible rough sketch. Who knows?"},
    };
    std::string out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        json j;
        j["id"] = "item-" + std::to_string(i + 1);
        j["query"] = rows[i][0];
        j["response_a"] = rows[i][1];
        j["response_b"] = rows[i][2];
        j["gold"] = 1;
        out += j.dump() + "\n";
    }
    return out;
}

const char* kOfflineJudges =
    "bias.sentiment_neutrality,bias.stance_strength,readability.fre_inverted,"
    "readability.information_density,readability.smog,relevance.lexical_overlap_tfidf,"
    "structure.cohesion,structure.emphasis,structure.headings,structure.list_usage,"
    "structure.questions_negated,structure.transition_density,structure.type_token_ratio";

} // namespace

TEST_CASE("judges list and show") {
    testsupport::TempDir tmp("cli-judges");
    const auto list = run_cli("judges list", tmp.path());
    CHECK(list.exit_code == 0);
    CHECK(list.output.find("readability.fre_inverted") != std::string::npos);
    CHECK(list.output.find("16 judges") != std::string::npos);

    const auto show = run_cli("judges show readability.smog", tmp.path());
    CHECK(show.exit_code == 0);
    CHECK(show.output.find("polarity:  -1") != std::string::npos);

    const auto missing = run_cli("judges show nope", tmp.path());
    CHECK(missing.exit_code == 2);
}

TEST_CASE("score: shapes, determinism, and parse errors") {
    testsupport::TempDir tmp("cli-score");
    write_file(tmp.path("items.jsonl"), items_jsonl());

    const std::string args = "score --items " + tmp.path("items.jsonl") + " --judges " +
                             kOfflineJudges + " --seed 7 --out " + tmp.path("run1");
    const auto first = run_cli(args, tmp.path());
    CHECK(first.exit_code == 0);

    const auto votes = io::read_votes_csv(tmp.path("run1/votes.csv"));
    CHECK(votes.item_count() == 4);
    CHECK(votes.judge_count() == 13);
    const auto scores = slurp(tmp.path("run1/scores.jsonl"));
    CHECK(std::count(scores.begin(), scores.end(), '\n') == 4 * 13);

    // Rerun into a second directory: byte-identical artifacts.
    const std::string args2 = "score --items " + tmp.path("items.jsonl") + " --judges " +
                              kOfflineJudges + " --seed 7 --out " + tmp.path("run2");
    CHECK(run_cli(args2, tmp.path()).exit_code == 0);
    CHECK(slurp(tmp.path("run1/votes.csv")) == slurp(tmp.path("run2/votes.csv")));
    CHECK(slurp(tmp.path("run1/scores.jsonl")) == slurp(tmp.path("run2/scores.jsonl")));
    CHECK(slurp(tmp.path("run1/run_report.json")) == slurp(tmp.path("run2/run_report.json")));

    // Malformed line 7 is named, exit 3.
    std::string bad = items_jsonl();
    bad.insert(0, "\n\n");                  // two blank lines shift content to lines 3-6
    bad += "{not json\n";                   // line 7
    write_file(tmp.path("bad.jsonl"), bad);
    const auto broken =
        run_cli("score --items " + tmp.path("bad.jsonl") + " --out " + tmp.path("bad_out"),
                tmp.path());
    CHECK(broken.exit_code == 3);
    CHECK(broken.output.find("line 7") != std::string::npos);

    // Unknown judge id: exit 2.
    const auto unknown = run_cli("score --items " + tmp.path("items.jsonl") +
                                     " --judges no.such --out " + tmp.path("x"),
                                 tmp.path());
    CHECK(unknown.exit_code == 2);
}

TEST_CASE("score: an item failing on every judge exits 4") {
    testsupport::TempDir tmp("cli-allfail");
    json j;
    j["id"] = "empty-1";
    j["query"] = "q";
    j["response_a"] = "";
    j["response_b"] = "";
    write_file(tmp.path("items.jsonl"), j.dump() + "\n");
    // Both selected judges require non-empty text, so every cell fails.
    const auto res = run_cli("score --items " + tmp.path("items.jsonl") +
                                 " --judges readability.fre_inverted,readability.smog --out " +
                                 tmp.path("out"),
                             tmp.path());
    CHECK(res.exit_code == 4);
    CHECK(res.output.find("empty-1") != std::string::npos);
}

TEST_CASE("score: a service judge with no service fails per policy, run continues") {
    testsupport::TempDir tmp("cli-service-down");
    write_file(tmp.path("items.jsonl"), items_jsonl());
    // factuality.classifier has no classifier configured: every cell fails,
    // votes fill with -1, and the run still succeeds.
    const std::string selection = std::string(kOfflineJudges) + ",factuality.classifier";
    const auto res = run_cli("score --items " + tmp.path("items.jsonl") + " --judges " +
                                 selection + " --out " + tmp.path("out"),
                             tmp.path());
    CHECK(res.exit_code == 0);

    const auto votes = io::read_votes_csv(tmp.path("out/votes.csv"));
    const auto& ids = votes.judge_ids();
    const auto pos = std::find(ids.begin(), ids.end(), "factuality.classifier") - ids.begin();
    for (std::size_t i = 0; i < votes.item_count(); ++i) {
        CHECK(votes.vote(i, static_cast<std::size_t>(pos)) == -1);
    }
    const auto report = json::parse(slurp(tmp.path("out/run_report.json")));
    CHECK(report["per_judge"]["factuality.classifier"]["failures"] == 4);
    CHECK(report["per_judge"]["factuality.classifier"]["failure_rate"] == 1.0);
    CHECK(report["per_judge"]["structure.list_usage"]["failures"] == 0);
}

TEST_CASE("fit / infer / eval chain on synthetic votes") {
    testsupport::TempDir tmp("cli-chain");
    const auto planted = testsupport::spread_accuracies(6, 0.2, 0.8);
    const auto data = testsupport::generate_votes(planted, 3000, 0.5, 8);
    write_file(tmp.path("votes.csv"), io::votes_to_csv(data.votes, 8));

    // Matching items file carrying the planted gold.
    std::string items;
    for (std::size_t i = 0; i < data.gold.size(); ++i) {
        json j;
        j["id"] = data.votes.item_ids()[i];
        j["query"] = "q";
        j["response_a"] = "a";
        j["response_b"] = "b";
        j["gold"] = data.gold[i];
        items += j.dump() + "\n";
    }
    write_file(tmp.path("items.jsonl"), items);

    const auto fit = run_cli("fit --votes " + tmp.path("votes.csv") + " --out " +
                                 tmp.path("params.json") + " --seed 5",
                             tmp.path());
    CHECK(fit.exit_code == 0);
    const auto params = io::read_params_json(tmp.path("params.json"));
    CHECK(params.judge_count() == 6);
    CHECK(params.fitter == "triplet");
    CHECK(params.seed == 5);
    // Fitted accuracies track the planted generator values.
    for (std::size_t j = 0; j < planted.size(); ++j) {
        CHECK(std::abs(params.accuracies[j] - planted[j]) < 0.05);
    }

    // Deterministic: fitting again yields identical bytes.
    CHECK(run_cli("fit --votes " + tmp.path("votes.csv") + " --out " +
                      tmp.path("params2.json") + " --seed 5",
                  tmp.path())
              .exit_code == 0);
    CHECK(slurp(tmp.path("params.json")) == slurp(tmp.path("params2.json")));

    // triplet+em also fits.
    const auto fit_em = run_cli("fit --votes " + tmp.path("votes.csv") + " --fitter triplet+em" +
                                    " --out " + tmp.path("params_em.json"),
                                tmp.path());
    CHECK(fit_em.exit_code == 0);
    CHECK(io::read_params_json(tmp.path("params_em.json")).fitter == "em");

    const auto infer = run_cli("infer --votes " + tmp.path("votes.csv") + " --params " +
                                   tmp.path("params.json") + " --out " + tmp.path("labels.jsonl"),
                               tmp.path());
    CHECK(infer.exit_code == 0);
    const auto labels = io::read_labels_jsonl(tmp.path("labels.jsonl"));
    CHECK(labels.size() == 3000);
    for (const auto& rec : labels) {
        CHECK(rec.posterior > 0.0);
        CHECK(rec.posterior < 1.0);
    }

    const auto eval_res = run_cli("eval --labels " + tmp.path("labels.jsonl") + " --items " +
                                    tmp.path("items.jsonl"),
                                tmp.path());
    CHECK(eval_res.exit_code == 0);
    CHECK(eval_res.output.find("accuracy") != std::string::npos);

    // A 2-judge votes file cannot be fitted.
    write_file(tmp.path("two.csv"), io::votes_to_csv(data.votes.select_judges({0, 1})));
    const auto too_few = run_cli("fit --votes " + tmp.path("two.csv") + " --out " +
                                     tmp.path("p2.json"),
                                 tmp.path());
    CHECK(too_few.exit_code == 5);
}

TEST_CASE("eval: labels matching gold report accuracy 1.0") {
    testsupport::TempDir tmp("cli-perfect");
    std::string items, labels;
    for (int i = 1; i <= 4; ++i) {
        const int gold = i % 2 ? 1 : -1;
        json j;
        j["id"] = "item-" + std::to_string(i);
        j["query"] = "q";
        j["response_a"] = "a";
        j["response_b"] = "b";
        j["gold"] = gold;
        items += j.dump() + "\n";
        json l;
        l["item_id"] = "item-" + std::to_string(i);
        l["posterior"] = gold > 0 ? 0.9 : 0.1;
        l["label"] = gold;
        labels += l.dump() + "\n";
    }
    write_file(tmp.path("items.jsonl"), items);
    write_file(tmp.path("labels.jsonl"), labels);
    const auto res = run_cli("eval --labels " + tmp.path("labels.jsonl") + " --items " +
                                 tmp.path("items.jsonl") + " --out " + tmp.path("report.json"),
                             tmp.path());
    CHECK(res.exit_code == 0);
    const auto report = json::parse(slurp(tmp.path("report.json")));
    CHECK(report["accuracy"] == 1.0);
    CHECK(report["n"] == 4);
}

TEST_CASE("infer: shuffled rows give the same labels per item") {
    testsupport::TempDir tmp("cli-shuffle");
    const auto data = testsupport::generate_votes({0.7, 0.5, 0.3}, 50, 0.5, 8);
    write_file(tmp.path("votes.csv"), io::votes_to_csv(data.votes));
    CHECK(run_cli("fit --votes " + tmp.path("votes.csv") + " --out " + tmp.path("p.json"),
                  tmp.path())
              .exit_code == 0);
    CHECK(run_cli("infer --votes " + tmp.path("votes.csv") + " --params " + tmp.path("p.json") +
                      " --out " + tmp.path("l1.jsonl"),
                  tmp.path())
              .exit_code == 0);

    // Reverse the data rows (keep header and comment).
    std::istringstream in(slurp(tmp.path("votes.csv")));
    std::string line, header;
    std::vector<std::string> rows;
    while (std::getline(in, line)) {
        if (line.rfind("item_id", 0) == 0) {
            header = line;
        } else if (!line.empty() && line[0] != '#') {
            rows.push_back(line);
        }
    }
    std::string reversed = header + "\n";
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) reversed += *it + "\n";
    write_file(tmp.path("votes_rev.csv"), reversed);

    CHECK(run_cli("infer --votes " + tmp.path("votes_rev.csv") + " --params " +
                      tmp.path("p.json") + " --out " + tmp.path("l2.jsonl"),
                  tmp.path())
              .exit_code == 0);

    std::map<std::string, std::pair<double, int>> first;
    for (const auto& rec : io::read_labels_jsonl(tmp.path("l1.jsonl"))) {
        first[rec.item_id] = {rec.posterior, rec.label};
    }
    for (const auto& rec : io::read_labels_jsonl(tmp.path("l2.jsonl"))) {
        CHECK(first.at(rec.item_id).first == rec.posterior);
        CHECK(first.at(rec.item_id).second == rec.label);
    }
}

TEST_CASE("infer: judge-set mismatch exits 6") {
    testsupport::TempDir tmp("cli-mismatch");
    const auto data = testsupport::generate_votes({0.7, 0.5, 0.3}, 20, 0.5, 8);
    write_file(tmp.path("votes.csv"), io::votes_to_csv(data.votes));
    CHECK(run_cli("fit --votes " + tmp.path("votes.csv") + " --out " + tmp.path("p.json"),
                  tmp.path())
              .exit_code == 0);

    // Rename one judge column.
    std::string csv = slurp(tmp.path("votes.csv"));
    const auto pos = csv.find("judge-2");
    csv.replace(pos, 7, "judge-X");
    write_file(tmp.path("votes_bad.csv"), csv);
    const auto res = run_cli("infer --votes " + tmp.path("votes_bad.csv") + " --params " +
                                 tmp.path("p.json") + " --out " + tmp.path("l.jsonl"),
                             tmp.path());
    CHECK(res.exit_code == 6);
}

TEST_CASE("infer: uniform thetas reproduce majority vote on tie-free rows") {
    testsupport::TempDir tmp("cli-uniform");
    const auto data = testsupport::generate_votes({0.6, 0.6, 0.6}, 60, 0.5, 44);
    write_file(tmp.path("votes.csv"), io::votes_to_csv(data.votes));

    labelmodel::LabelModelParams uniform;
    uniform.judge_ids = data.votes.judge_ids();
    uniform.accuracies = {0.5, 0.5, 0.5};
    for (double a : uniform.accuracies) uniform.thetas.push_back(std::atanh(a));
    uniform.class_prior = 0.5;
    write_file(tmp.path("uniform.json"), io::params_to_json(uniform));

    CHECK(run_cli("infer --votes " + tmp.path("votes.csv") + " --params " +
                      tmp.path("uniform.json") + " --out " + tmp.path("labels.jsonl"),
                  tmp.path())
              .exit_code == 0);
    const auto labels = io::read_labels_jsonl(tmp.path("labels.jsonl"));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const auto row = data.votes.row(i);
        CHECK(labels[i].label == labelmodel::majority_vote(row).value); // m odd: no ties
    }
}

TEST_CASE("eval: missing gold exits 7") {
    testsupport::TempDir tmp("cli-nogold");
    json item;
    item["id"] = "item-1";
    item["query"] = "q";
    item["response_a"] = "a";
    item["response_b"] = "b";
    write_file(tmp.path("items.jsonl"), item.dump() + "\n");
    write_file(tmp.path("labels.jsonl"),
               R"({"item_id":"item-1","posterior":0.9,"label":1})" "\n");
    const auto res = run_cli("eval --labels " + tmp.path("labels.jsonl") + " --items " +
                                 tmp.path("items.jsonl"),
                             tmp.path());
    CHECK(res.exit_code == 7);
}

TEST_CASE("scale: shape and determinism") {
    testsupport::TempDir tmp("cli-scale");
    const auto planted = testsupport::spread_accuracies(10, 0.1, 0.7);
    const auto data = testsupport::generate_votes(planted, 300, 0.5, 12);
    write_file(tmp.path("votes.csv"), io::votes_to_csv(data.votes));
    std::string items;
    for (std::size_t i = 0; i < data.gold.size(); ++i) {
        json j;
        j["id"] = data.votes.item_ids()[i];
        j["query"] = "q";
        j["response_a"] = "a";
        j["response_b"] = "b";
        j["gold"] = data.gold[i];
        items += j.dump() + "\n";
    }
    write_file(tmp.path("items.jsonl"), items);

    const std::string args = "scale --votes " + tmp.path("votes.csv") + " --items " +
                             tmp.path("items.jsonl") + " --k 3,5,10 --trials 5 --seed 3 --out ";
    CHECK(run_cli(args + tmp.path("c1.csv"), tmp.path()).exit_code == 0);
    CHECK(run_cli(args + tmp.path("c2.csv"), tmp.path()).exit_code == 0);
    CHECK(slurp(tmp.path("c1.csv")) == slurp(tmp.path("c2.csv")));

    const auto csv = slurp(tmp.path("c1.csv"));
    CHECK(csv.find("k,trial_1,trial_2,trial_3,trial_4,trial_5,model_mean,mv_mean,model_source") !=
          std::string::npos);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5); // comment + header + 3 k rows

    const auto too_big = run_cli("scale --votes " + tmp.path("votes.csv") + " --items " +
                                     tmp.path("items.jsonl") + " --k 99 --out " +
                                     tmp.path("c3.csv"),
                                 tmp.path());
    CHECK(too_big.exit_code == 1);
}

TEST_CASE("synthesize: mock LLM, auth, extraction failure") {
    testsupport::TempDir tmp("cli-synth");

    httplib::Server server;
    int calls = 0;
    server.Post("/v1/chat/completions", [&](const httplib::Request&, httplib::Response& res) {
        ++calls;
        const std::string content =
            calls <= 2 ? "```python\ndef judging_function(query, response):\n    return 1.0\n```"
                       : "no code this time";
        json reply;
        reply["choices"] = {{{"message", {{"role", "assistant"}, {"content", content}}}}};
        res.set_content(reply.dump(), "application/json");
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread listener([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    write_file(tmp.path("pajama.cfg"),
               "llm_url=http://127.0.0.1:" + std::to_string(port) + "\nllm_model=gpt-4o\n");

    // Unset key: exit 8 naming the variable.
    const auto no_key = run_cli("synthesize --criterion relevance --count 1 --config " +
                                    tmp.path("pajama.cfg") + " --catalog " + tmp.path("cat.jsonl"),
                                tmp.path(), "env -u PAJAMA_LLM_API_KEY");
    CHECK(no_key.exit_code == 8);
    CHECK(no_key.output.find("PAJAMA_LLM_API_KEY") != std::string::npos);

    // Two good replies -> two extracted records.
    const auto ok = run_cli("synthesize --criterion relevance --count 2 --config " +
                                tmp.path("pajama.cfg") + " --catalog " + tmp.path("cat.jsonl"),
                            tmp.path(), "PAJAMA_LLM_API_KEY=sk-test");
    CHECK(ok.exit_code == 0);
    CHECK(ok.output.find("estimated cost") != std::string::npos);
    auto catalog = synthesis::catalog_load(tmp.path("cat.jsonl"));
    REQUIRE(catalog.size() == 2);
    CHECK(catalog[0].status == synthesis::ExtractionStatus::Extracted);
    CHECK(catalog[1].status == synthesis::ExtractionStatus::Extracted);

    // Prose-only reply -> stored as extraction_failed, still exit 0.
    const auto prose = run_cli("synthesize --criterion safety --count 1 --config " +
                                   tmp.path("pajama.cfg") + " --catalog " + tmp.path("cat.jsonl"),
                               tmp.path(), "PAJAMA_LLM_API_KEY=sk-test");
    CHECK(prose.exit_code == 0);
    CHECK(prose.output.find("warning") != std::string::npos);
    catalog = synthesis::catalog_load(tmp.path("cat.jsonl"));
    REQUIRE(catalog.size() == 3);
    CHECK(catalog[2].status == synthesis::ExtractionStatus::ExtractionFailed);

    server.stop();
    listener.join();
}

TEST_CASE("bias-eval writes per-type reports") {
    testsupport::TempDir tmp("cli-bias");
    // A tiny position + rich_content dataset; structured target vs plain other.
    const std::string target =
        "# Report\\nHowever, the data shows growth. The data is steady.\\n1. gather\\n2. verify\\nIt is definitely reliable.";
    std::string items;
    {
        json j;
        j["id"] = "p1";
        j["bias_type"] = "position";
        j["query"] = "summarize the data report";
        j["response_other"] = "A fine day for a chat. Why bother?";
        j["response_target"] = json::parse("\"" + target + "\"").get<std::string>();
        j["response_target_biased"] = j["response_target"];
        items += j.dump() + "\n";
        j["id"] = "r1";
        j["bias_type"] = "rich_content";
        j["response_target_biased"] =
            json::parse("\"" + target + "\"").get<std::string>() + "\n\n**Bonus** emphasis!";
        items += j.dump() + "\n";
    }
    write_file(tmp.path("bias.jsonl"), items);

    const auto res = run_cli("bias-eval --items " + tmp.path("bias.jsonl") + " --judges " +
                                 std::string(kOfflineJudges) + " --out " + tmp.path("out"),
                             tmp.path());
    CHECK(res.exit_code == 0);
    const auto report = slurp(tmp.path("out/bias_report.json"));
    CHECK(report.find("position") != std::string::npos);
    CHECK(report.find("rich_content") != std::string::npos);
    const auto csv = slurp(tmp.path("out/bias_report.csv"));
    CHECK(csv.find("bias_type,n,consistency,win_rate,failures") == 0);

    // Params fitted over a different judge set are rejected.
    labelmodel::LabelModelParams foreign;
    foreign.judge_ids = {"j0", "j1", "j2"};
    foreign.accuracies = {0.5, 0.5, 0.5};
    for (double a : foreign.accuracies) foreign.thetas.push_back(std::atanh(a));
    foreign.class_prior = 0.5;
    write_file(tmp.path("foreign.json"), io::params_to_json(foreign));
    const auto mismatch = run_cli("bias-eval --items " + tmp.path("bias.jsonl") + " --judges " +
                                      std::string(kOfflineJudges) + " --params " +
                                      tmp.path("foreign.json") + " --out " + tmp.path("out2"),
                                  tmp.path());
    CHECK(mismatch.exit_code == 6);
}
