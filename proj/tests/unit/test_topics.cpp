#include <cmath>
#include <random>

#include "doctest.h"
#include "fixture_corpus.hpp"
#include "oracles.hpp"
#include "semrank/error.hpp"
#include "semrank/topics.hpp"

using namespace semrank;

namespace {

const LanguageProfile& en() {
  static const LanguageProfile p = builtin_profile("en");
  return p;
}

ThresholdCalibration calib(double mean, double std) {
  ThresholdCalibration c;
  c.mean = mean;
  c.std = std;
  c.sample_count = 2;
  return c;
}

// Random paragraph vectors that drift, so merges and breaks both happen.
std::vector<std::optional<Vector>> random_document(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_int_distribution<int> len(1, 14);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int paragraphs = len(rng);
  std::vector<std::optional<Vector>> out;
  Vector cur = {n(rng), n(rng), n(rng)};
  for (int p = 0; p < paragraphs; ++p) {
    const double jump = u(rng);
    for (auto& x : cur) x = jump < 0.3 ? n(rng) : x + 0.6 * n(rng);
    if (u(rng) < 0.1) {
      out.push_back(std::nullopt);
    } else {
      out.push_back(cur);
    }
  }
  if (!out.front()) out.front() = Vector{1.0, 0.0, 0.0};
  return out;
}

void check_partition(const std::vector<std::vector<std::size_t>>& clusters, std::size_t paragraphs) {
  std::size_t next = 0;
  for (const auto& c : clusters) {
    REQUIRE_FALSE(c.empty());
    for (auto p : c) REQUIRE(p == next++);
  }
  REQUIRE(next == paragraphs);
}

}  // namespace

TEST_CASE("sample statistics match the two-pass reference") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> xs;
  for (int i = 0; i < 500; ++i) xs.push_back(u(rng));
  const auto s = sample_statistics(xs);
  const auto r = oracle::two_pass_statistics(xs);
  CHECK(std::abs(s.mean - r.mean) < 1e-12);
  CHECK(std::abs(s.std - r.std) < 1e-12);
  CHECK(s.count == 500);
}

TEST_CASE("calibration examples") {
  VectorStore words(2);
  words.add("twin", {0.3, 0.4});
  words.add("east", {1.0, 0.0});
  words.add("low", {0.2, std::sqrt(1.0 - 0.04)});
  words.add("high", {0.8, 0.6});
  const Embeddings emb{&words, nullptr, {}};
  const DocEmbedder embedder(emb, DocVectorSource::kAverage, 1);

  std::vector<TokenizedDocument> same = {segment("Twin.\n\nTwin.\n\nTwin.", en())};
  const auto c1 = calibrate(same, embedder);
  CHECK(c1.mean == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c1.std < 1e-12);
  CHECK(c1.sample_count == 2);

  std::vector<TokenizedDocument> two = {segment("East.\n\nLow.", en()), segment("East.\n\nHigh.", en())};
  const auto c2 = calibrate(two, embedder, ClusterMetric::kSimilarity, "pairs");
  CHECK(std::abs(c2.mean - 0.5) < 1e-12);
  CHECK(std::abs(c2.std - 0.3) < 1e-12);
  CHECK(c2.source_corpus_id == "pairs");

  const auto c3 = calibrate(two, embedder, ClusterMetric::kOneMinusSimilarity);
  CHECK(std::abs(c3.mean - 0.5) < 1e-12);
  CHECK(std::abs(c3.std - 0.3) < 1e-12);

  std::vector<TokenizedDocument> one_pair = {segment("East.\n\nLow.", en())};
  try {
    calibrate(one_pair, embedder);
    FAIL("expected InsufficientCalibration");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInsufficientCalibration);
  }
}

TEST_CASE("calibration on the fixture corpus matches the two-pass oracle") {
  TrainConfig cfg;
  cfg.dimension = 20;
  cfg.epochs = 5;
  cfg.min_count = 1;
  const auto model = train(Corpus::build(test::news_training_documents(en()), 1), cfg);
  const Embeddings emb{&model.words, &model.doc_model, cfg};
  const DocEmbedder embedder(emb, DocVectorSource::kAverage, 1);
  std::vector<TokenizedDocument> corpus;
  for (const auto& p : test::news_articles()) corpus.push_back(segment(test::slurp(p), en()));
  const auto c = calibrate(corpus, embedder, ClusterMetric::kSimilarity, "news");

  std::vector<double> sims;
  for (const auto& doc : corpus) {
    for (std::size_t p = 0; p + 1 < doc.paragraphs.size(); ++p) {
      const auto a = embedder.embed(doc.paragraph_content(p));
      const auto b = embedder.embed(doc.paragraph_content(p + 1));
      if (!a || !b) continue;
      sims.push_back(oracle::naive_dot(*a, *b) / std::sqrt(oracle::naive_dot(*a, *a) * oracle::naive_dot(*b, *b)));
    }
  }
  const auto r = oracle::two_pass_statistics(sims);
  CHECK(c.sample_count == sims.size());
  CHECK(std::abs(c.mean - r.mean) < 1e-12);
  CHECK(std::abs(c.std - r.std) < 1e-12);
}

TEST_CASE("calibration file round-trips exactly") {
  ThresholdCalibration c;
  c.mean = 0.123456789012345678;
  c.std = 1.0 / 3.0;
  c.sample_count = 77;
  c.source_corpus_id = "bbc news";
  c.metric = ClusterMetric::kOneMinusSimilarity;
  const auto dir = test::scratch_dir("calibration");
  save_calibration(c, dir / "c.txt");
  const auto back = load_calibration(dir / "c.txt");
  CHECK(back.mean == c.mean);
  CHECK(back.std == c.std);
  CHECK(back.sample_count == 77);
  CHECK(back.source_corpus_id == "bbc news");
  CHECK(back.metric == ClusterMetric::kOneMinusSimilarity);

  std::ofstream(dir / "bad.txt") << "mean = 0.5\nstd = oops\n";
  try {
    load_calibration(dir / "bad.txt");
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("cluster examples") {
  const double t = calib(0.5, 0.1).threshold();
  for (auto rep : {ClusterRepresentative::kLastParagraph, ClusterRepresentative::kRunningMean}) {
    std::vector<std::optional<Vector>> same(4, Vector{0.2, 0.7, 0.1});
    CHECK(cluster_vectors(same, t, ClusterMetric::kSimilarity, rep).size() == 1);

    std::vector<std::optional<Vector>> ortho = {Vector{1, 0, 0}, Vector{0, 1, 0}, Vector{0, 0, 1}};
    CHECK(cluster_vectors(ortho, t, ClusterMetric::kSimilarity, rep).size() == 3);

    std::vector<std::optional<Vector>> four = {Vector{1, 0, 0}, Vector{1, 0.1, 0}, Vector{0, 1, 0}, Vector{0, 0, 1}};
    const auto c = cluster_vectors(four, t, ClusterMetric::kSimilarity, rep);
    CHECK(c == std::vector<std::vector<std::size_t>>{{0, 1}, {2}, {3}});
  }
}

TEST_CASE("distance metric merges below the threshold") {
  std::vector<std::optional<Vector>> four = {Vector{1, 0, 0}, Vector{1, 0.1, 0}, Vector{0, 1, 0}, Vector{0, 0, 1}};
  // 1 - cos is about 0.005 for the first pair and 1.0 otherwise.
  const auto c = cluster_vectors(four, 0.2, ClusterMetric::kOneMinusSimilarity, ClusterRepresentative::kLastParagraph);
  CHECK(c == std::vector<std::vector<std::size_t>>{{0, 1}, {2}, {3}});
}

TEST_CASE("paragraph without a vector joins the current cluster") {
  VectorStore words(2);
  words.add("apple", {1, 0});
  words.add("pear", {0.9, 0.1});
  words.add("engine", {0, 1});
  const DocEmbedder embedder({&words, nullptr, {}}, DocVectorSource::kAverage, 1);
  const auto doc = segment("Apple.\n\nXyzzy.\n\nPear.\n\nEngine.", en());
  const auto set = cluster(doc, calib(0.5, 0.1), embedder);
  CHECK(set.clusters == std::vector<std::vector<std::size_t>>{{0, 1, 2}, {3}});
  REQUIRE(set.warnings.size() == 2);
  CHECK(set.warnings[1].find("kept in current cluster") != std::string::npos);
  CHECK(set.calibration_used.mean == 0.5);
}

TEST_CASE("partition and threshold monotonicity on 1000 random documents") {
  std::mt19937_64 rng(20240);
  std::vector<double> thresholds;
  for (int i = -10; i <= 10; ++i) thresholds.push_back(i / 10.0);
  for (int doc = 0; doc < 1000; ++doc) {
    const auto vectors = random_document(rng);
    for (auto rep : {ClusterRepresentative::kLastParagraph, ClusterRepresentative::kRunningMean}) {
      for (double t : thresholds) check_partition(cluster_vectors(vectors, t, ClusterMetric::kSimilarity, rep), vectors.size());
    }
    std::size_t prev = 0;
    for (double t : thresholds) {
      const auto n = cluster_vectors(vectors, t, ClusterMetric::kSimilarity, ClusterRepresentative::kLastParagraph).size();
      CHECK(n >= prev);
      prev = n;
    }
    // Under the distance metric a larger threshold merges more.
    prev = vectors.size() + 1;
    for (double t : thresholds) {
      const auto n =
          cluster_vectors(vectors, t + 1.0, ClusterMetric::kOneMinusSimilarity, ClusterRepresentative::kLastParagraph)
              .size();
      CHECK(n <= prev);
      prev = n;
    }
  }
}

// Pinned counterexample: comparing against a running mean merges more at
// a higher threshold, so it produces fewer clusters.
TEST_CASE("running-mean representative is not threshold-monotone") {
  const std::vector<std::optional<Vector>> v = {Vector{0.2, -0.9}, Vector{0.4, 0.7}, Vector{-0.5, 0.6},
                                                Vector{0.8, -0.6}};
  const auto mean = ClusterRepresentative::kRunningMean;
  CHECK(cluster_vectors(v, -0.8, ClusterMetric::kSimilarity, mean).size() == 3);
  CHECK(cluster_vectors(v, -0.7, ClusterMetric::kSimilarity, mean).size() == 2);
  const auto last = ClusterRepresentative::kLastParagraph;
  CHECK(cluster_vectors(v, -0.8, ClusterMetric::kSimilarity, last).size() <=
        cluster_vectors(v, -0.7, ClusterMetric::kSimilarity, last).size());
}

TEST_CASE("one cluster gives the plain summary") {
  VectorStore words(2);
  words.add("storm", {1, 0.2});
  words.add("rain", {0.9, 0.3});
  words.add("wind", {0.8, 0.1});
  const Embeddings emb{&words, nullptr, {}};
  const auto doc = segment("Storm and rain. Wind and rain.\n\nRain again. Storm wind.", en());
  SummaryRequest r;
  r.doc_vector_source = DocVectorSource::kAverage;
  r.size = SummarySize::of_ratio(0.5);
  const auto topics = summarize_by_topics(doc, calib(0.5, 0.1), r, emb);
  REQUIRE(topics.size() == 1);
  CHECK(topics[0].sentences == summarize(doc, r, emb).selected);
}

TEST_CASE("two orthogonal topics give one sentence each") {
  VectorStore words(4);
  words.add("ship", {1, 0, 0, 0});
  words.add("harbor", {0.9, 0.2, 0, 0});
  words.add("sail", {0.8, 0.3, 0, 0});
  words.add("piano", {0, 0, 1, 0});
  words.add("violin", {0, 0, 0.8, 0.3});
  words.add("concert", {0, 0, 0.9, 0.2});
  const Embeddings emb{&words, nullptr, {}};
  const auto doc = segment(
      "Ship in harbor. Sail the ship. Harbor sail. Ship ship. Sail.\n\n"
      "Piano concert. Violin and piano. Concert violin. Piano. Violin concert.",
      en());
  SummaryRequest r;
  r.doc_vector_source = DocVectorSource::kAverage;
  const auto topics = summarize_by_topics(doc, calib(0.5, 0.1), r, emb);
  REQUIRE(topics.size() == 2);
  CHECK(topics[0].sentences.size() == 1);
  CHECK(topics[1].sentences.size() == 1);
  CHECK(topics[0].sentences[0] < 5);
  CHECK(topics[1].sentences[0] >= 5);
  for (const auto& t : topics) {
    for (std::size_t k = 0; k < t.summary.selected.size(); ++k) {
      CHECK(t.sentences[k] == doc.paragraphs[t.paragraphs[0]].sentences[0] + t.summary.selected[k]);
    }
  }
}
