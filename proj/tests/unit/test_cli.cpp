#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fixture_corpus.hpp"
#include "semrank/cli.hpp"

using namespace semrank;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "semrank");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

std::filesystem::path ten_sentences(const std::filesystem::path& dir) {
  const auto path = dir / "ten.txt";
  std::ofstream f(path);
  for (int i = 0; i < 10; ++i) f << "Sentence " << i << " mentions the harbor and ship number " << i % 4 << ". ";
  f << '\n';
  return path;
}

}  // namespace

TEST_CASE("summarize prints two of ten sentences") {
  const auto dir = test::scratch_dir("cli_summarize");
  const auto file = ten_sentences(dir).string();
  const auto r = run({"summarize", "--ratio", "0.2", file});
  CHECK(r.code == cli::kExitOk);
  CHECK(line_count(r.out) == 2);
  const auto d = run({"summarize", file});
  CHECK(d.out == r.out);
  const auto s = run({"summarize", "--format", "structured", file});
  CHECK(line_count(s.out) == 2);
  CHECK(s.out.find("\"text\":") != std::string::npos);
}

TEST_CASE("usage errors exit 1") {
  const auto dir = test::scratch_dir("cli_usage");
  const auto file = ten_sentences(dir).string();
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"summarize", "--ratio", "0", file},
           {"summarize", "--ratio", "1.5", file},
           {"summarize", "--ratio", "0.2", "--words", "10", file},
           {"summarize", "--no-such-flag", file},
           {"summarize"},
           {},
           {"frobnicate"},
           {"summarize", "--by-topics", file},
           {"keywords", "--top-k", "0", file},
           {"evaluate", "--corpus", test::news_root().string(), "--seeds", "1,1"},
       }) {
    CAPTURE(args.size());
    const auto r = run(args);
    CHECK(r.code == cli::kExitUsage);
    CHECK_FALSE(r.err.empty());
  }
  const auto unknown = run({"summarize", "--no-such-flag", file});
  CHECK(unknown.err.find("Usage:") != std::string::npos);
}

TEST_CASE("data errors exit 2") {
  const auto dir = test::scratch_dir("cli_data");
  std::ofstream(dir / "empty.txt") << "   \n";
  std::ofstream(dir / "bad.vec") << "2 3\nfoo 1 2\n";
  const auto file = ten_sentences(dir).string();
  CHECK(run({"summarize", (dir / "empty.txt").string()}).code == cli::kExitData);
  CHECK(run({"summarize", (dir / "missing.txt").string()}).code == cli::kExitData);
  const auto bad = run({"summarize", "--vectors", (dir / "bad.vec").string(), file});
  CHECK(bad.code == cli::kExitData);
  CHECK(bad.err.find("line 2") != std::string::npos);
}

TEST_CASE("help lists every flag with its default") {
  const std::vector<std::pair<std::string, std::vector<std::string>>> expected = {
      {"summarize", {"--ratio FLOAT:(0,1] [0.2]", "[auto]", "--damping", "[0.85]", "[1e-06]", "[100]", "[last]", "[en]",
                     "[plain]", "--seed UINT [1]"}},
      {"keywords", {"[bm25]", "--top-k UINT:POSITIVE [10]", "--max-n UINT:POSITIVE [10]", "[2]", "[1.5]", "[0.75]"}},
      {"cluster", {"--calibration", "[last]"}},
      {"train-embeddings", {"[100]", "--window UINT:POSITIVE [5]", "[20]", "[0.025]", "[docs]"}},
      {"calibrate", {"[similarity]"}},
      {"evaluate", {"[10]", "[0.2,0.5,0.8]", "--jobs UINT:POSITIVE [1]"}},
  };
  for (const auto& [cmd, needles] : expected) {
    CAPTURE(cmd);
    const auto r = run({cmd, "--help"});
    CHECK(r.code == 0);
    for (const auto& n : needles) {
      CAPTURE(n);
      CHECK(r.out.find(n) != std::string::npos);
    }
  }
}

TEST_CASE("train, calibrate, cluster and summarize by topics") {
  const auto dir = test::scratch_dir("cli_pipeline");
  const auto articles = (test::news_root() / "News Articles").string();
  const auto model = (dir / "model").string();
  auto r = run({"train-embeddings", articles, "--output", model, "--dim", "16", "--epochs", "3", "--min-count", "1"});
  REQUIRE(r.code == 0);
  CHECK(std::filesystem::exists(dir / "model" / "words.vec"));
  CHECK(std::filesystem::exists(dir / "model" / "context.vec"));

  const auto calib = (dir / "calib.txt").string();
  r = run({"calibrate", articles, "--output", calib, "--doc-model", model, "--doc-vectors", "average"});
  REQUIRE(r.code == 0);
  CHECK(std::filesystem::exists(calib));

  const auto article = (test::news_root() / "News Articles/tech/003.txt").string();
  r = run({"cluster", article, "--calibration", calib, "--doc-model", model, "--format", "structured"});
  CHECK(r.code == 0);
  CHECK(line_count(r.out) >= 1);

  r = run({"summarize", article, "--by-topics", "--calibration", calib, "--doc-model", model});
  CHECK(r.code == 0);
  CHECK(line_count(r.out) >= 1);

  const auto a = run({"summarize", article, "--doc-model", model, "--seed", "4"});
  const auto b = run({"summarize", article, "--doc-model", model, "--seed", "4"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  r = run({"keywords", article, "--method", "semantic", "--vectors", (dir / "model" / "words.vec").string()});
  CHECK(r.code == 0);
  CHECK(line_count(r.out) >= 1);
  CHECK(run({"keywords", article, "--method", "semantic"}).code == cli::kExitUsage);
}

TEST_CASE("evaluate twice gives byte-identical reports") {
  const auto dir = test::scratch_dir("cli_evaluate");
  const auto articles = (test::news_root() / "News Articles").string();
  const auto model = (dir / "model").string();
  REQUIRE(run({"train-embeddings", articles, "--output", model, "--dim", "12", "--epochs", "2", "--min-count", "1"})
              .code == 0);
  std::vector<std::string> args = {"evaluate", "--corpus", test::news_root().string(), "--seeds", "1..10",
                                   "--doc-model", model, "--infer-epochs", "5"};
  const auto first = run(args);
  const auto second = run(args);
  REQUIRE(first.code == 0);
  CHECK(first.out == second.out);
  CHECK(line_count(first.out) == 20 * 6 + 6);

  args.insert(args.end(), {"--jobs", "2", "--output", (dir / "report.jsonl").string()});
  REQUIRE(run(args).code == 0);
  CHECK(test::slurp(dir / "report.jsonl") == first.out);
}

TEST_CASE("Persian profile through the command line") {
  const auto r = run({"summarize", "--language", "fa", "--ratio", "0.4",
                      (test::data_dir() / "persian_five_sentences.txt").string()});
  CHECK(r.code == 0);
  CHECK(line_count(r.out) == 2);
}
