#include <cmath>
#include <set>

#include "doctest.h"
#include "fixture_corpus.hpp"
#include "oracles.hpp"
#include "semrank/error.hpp"
#include "semrank/keywords.hpp"

using namespace semrank;

namespace {

const LanguageProfile& en() {
  static const LanguageProfile p = builtin_profile("en");
  return p;
}

std::string repeat(const std::string& sentence, int n) {
  std::string out;
  for (int i = 0; i < n; ++i) out += sentence + " ";
  return out;
}

KeywordResult collapse_one(const std::string& text, std::size_t min_count = 2, std::size_t max_n = 10) {
  const auto doc = segment(text, en());
  KeywordRequest r;
  r.top_k = 1;
  r.min_ngram_count = min_count;
  r.max_n = max_n;
  return collapse_to_ngrams(TokenScores{{"wolf", 1.0}}, doc, r);
}

bool occurs_verbatim(const TokenizedDocument& doc, const TokenSequence& ngram) {
  for (const auto& s : doc.sentences) {
    const auto& t = s.content_tokens;
    if (t.size() < ngram.size()) continue;
    for (std::size_t i = 0; i + ngram.size() <= t.size(); ++i) {
      if (std::equal(ngram.begin(), ngram.end(), t.begin() + i)) return true;
    }
  }
  return false;
}

VectorStore five_token_store() {
  VectorStore words(4);
  words.add("river", {1, 0, 0, 0.5});
  words.add("water", {0.9, 0.1, 0, 0.4});
  words.add("boat", {0.5, 0.5, 0.2, 0});
  words.add("fish", {0.2, 0.9, 0.1, 0.3});
  words.add("bank", {0.1, 0.2, 0.9, 0.1});
  return words;
}

}  // namespace

TEST_CASE("bigram above half the word count replaces the word") {
  const auto r = collapse_one(repeat("Wolf xray.", 6) + repeat("Wolf.", 4));
  REQUIRE(r.keywords.size() == 1);
  CHECK(r.keywords[0].ngram == TokenSequence{"wolf", "xray"});
  CHECK(r.keywords[0].source_word == "wolf");
}

TEST_CASE("n-gram must occur more than min_ngram_count times") {
  const auto r = collapse_one(repeat("Wolf xray.", 2) + "Wolf.");
  REQUIRE(r.keywords.size() == 1);
  CHECK(r.keywords[0].ngram == TokenSequence{"wolf"});
}

TEST_CASE("exactly half the word count is not enough") {
  const auto r = collapse_one(repeat("Wolf xray.", 2) + repeat("Wolf.", 2), 1);
  REQUIRE(r.keywords.size() == 1);
  CHECK(r.keywords[0].ngram == TokenSequence{"wolf"});
  // One more bigram tips it over.
  const auto r2 = collapse_one(repeat("Wolf xray.", 3) + repeat("Wolf.", 2), 1);
  CHECK(r2.keywords[0].ngram == TokenSequence{"wolf", "xray"});
}

TEST_CASE("longest qualifying n-gram wins, then count, then position") {
  CHECK(collapse_one(repeat("Wolf xray yak.", 6) + repeat("Wolf.", 4)).keywords[0].ngram ==
        TokenSequence{"wolf", "xray", "yak"});
  // Two qualifying bigrams of equal count: earlier first occurrence wins.
  const auto tied = repeat("Zulu wolf xray.", 3) + "Zulu wolf. Wolf xray.";
  CHECK(collapse_one(tied, 2, 2).keywords[0].ngram == TokenSequence{"zulu", "wolf"});
  // Higher count beats position.
  const auto counted = repeat("Zulu wolf xray.", 3) + repeat("Wolf xray.", 2);
  CHECK(collapse_one(counted, 2, 2).keywords[0].ngram == TokenSequence{"wolf", "xray"});
  // N-grams never cross sentence boundaries.
  CHECK(collapse_one(repeat("Xray wolf. Yak.", 1) + repeat("Wolf. Yak.", 5)).keywords[0].ngram ==
        TokenSequence{"wolf"});
}

TEST_CASE("max_n caps the n-gram length") {
  const auto doc = segment(repeat("Wolf xray yak zulu.", 5), en());
  KeywordRequest r;
  r.top_k = 1;
  r.max_n = 2;
  CHECK(collapse_to_ngrams(TokenScores{{"wolf", 1.0}}, doc, r).keywords[0].ngram.size() == 2);
  r.max_n = 1;
  CHECK(collapse_to_ngrams(TokenScores{{"wolf", 1.0}}, doc, r).keywords[0].ngram == TokenSequence{"wolf"});
}

TEST_CASE("words that collapse to the same n-gram are deduplicated") {
  const auto doc = segment(repeat("Wolf xray.", 5), en());
  KeywordRequest r;
  const auto result = collapse_to_ngrams(TokenScores{{"wolf", 1.0}, {"xray", 2.0}}, doc, r);
  REQUIRE(result.keywords.size() == 1);
  CHECK(result.keywords[0].ngram == TokenSequence{"wolf", "xray"});
  CHECK(result.keywords[0].source_word == "xray");
  CHECK(result.keywords[0].score == 2.0);
}

TEST_CASE("bm25 single repeated token") {
  const auto doc = segment("Cat cat cat.", en());
  const auto scores = score_bm25(doc, {});
  REQUIRE(scores.size() == 1);
  CHECK(std::abs(scores.at("cat") - 0.4794701207529681) < 1e-12);
  CHECK(scores.find("dog") == scores.end());
}

TEST_CASE("bm25 agrees with the naive implementation on fixture articles") {
  for (const auto& path : test::news_articles()) {
    CAPTURE(path.string());
    const auto doc = segment(test::slurp(path), en());
    std::vector<std::vector<std::string>> sentences;
    for (const auto& s : doc.sentences) sentences.push_back(s.content_tokens);
    const auto scores = score_bm25(doc, {});
    std::string best;
    double best_score = -1.0;
    for (const auto& [token, score] : scores) {
      const double expected = oracle::bm25(sentences, token, 1.5, 0.75);
      CHECK(std::abs(score - expected) < 1e-12);
      if (expected > best_score) {
        best_score = expected;
        best = token;
      }
    }
    const auto top = extract_keywords(doc, KeywordRequest{});
    REQUIRE_FALSE(top.keywords.empty());
    CHECK(top.keywords[0].source_word == best);
    CHECK(top.method_used == "bm25");
  }
}

TEST_CASE("semantic graph closed forms") {
  VectorStore words(2);
  words.add("echo", {1, 0.2});
  words.add("ping", {0.9, 0.44});
  const auto single = score_semantic_graph(segment("Echo echo. Echo.", en()), {}, words);
  REQUIRE(single.size() == 1);
  CHECK(single.at("echo") == doctest::Approx(0.15).epsilon(1e-12));

  const auto pair = score_semantic_graph(segment("Echo ping. Echo ping.", en()), {}, words);
  CHECK(std::abs(pair.at("echo") - 1.0) <= 1e-6);
  CHECK(std::abs(pair.at("ping") - 1.0) <= 1e-6);
}

TEST_CASE("semantic graph fixture matches the linear solve") {
  const auto words = five_token_store();
  const auto doc = segment("River water boat. Boat fish bank. Water fish river.", en());
  KeywordRequest r;
  r.rank.tolerance = 1e-12;
  r.rank.max_iterations = 1000;
  const auto wg = word_graph(doc, r, words);
  REQUIRE(wg.nodes == std::vector<Token>{"river", "water", "boat", "fish", "bank"});
  std::vector<std::vector<double>> dense(5, std::vector<double>(5, 0.0));
  for (std::size_t j = 0; j < 5; ++j) {
    for (const auto& [i, w] : wg.graph.out_edges(j)) dense[j][i] = w;
  }
  const auto exact = oracle::solve_rank_system(dense, 0.85, true);
  const auto scores = score_semantic_graph(doc, r, words);
  const std::vector<double> frozen = {0.9026910258076505, 1.37664858802791, 1.0188765887806275, 1.3380646407117291,
                                      0.363719156672084};
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(std::abs(scores.at(wg.nodes[i]) - exact[i]) < 1e-6);
    CHECK(std::abs(scores.at(wg.nodes[i]) - frozen[i]) < 1e-6);
  }
  // "river" ends sentence 3 and starts sentence 1: no edge to "boat" across sentences.
  CHECK(wg.graph.weight(0, 2) == 0.0);
}

TEST_CASE("window counts content-token positions") {
  const auto words = five_token_store();
  const auto doc = segment("River water boat fish.", en());
  KeywordRequest r;
  r.window = 3;
  const auto wg = word_graph(doc, r, words);
  CHECK(wg.graph.weight(0, 2) > 0.0);
  CHECK(wg.graph.weight(0, 3) == 0.0);
  // An unknown token keeps its position.
  const auto gap = word_graph(segment("River zorb boat.", en()), r, words);
  CHECK(gap.graph.weight(0, 1) > 0.0);
  r.window = 2;
  CHECK(word_graph(segment("River zorb boat.", en()), r, words).graph.edge_count() == 0);
}

TEST_CASE("identical vectors reduce to unweighted pagerank") {
  VectorStore words(3);
  for (const char* w : {"river", "water", "boat", "fish", "bank", "reed"}) words.add(w, {0.3, 0.3, 0.9});
  const auto doc = segment("River water boat. Boat fish bank reed. Water fish river reed bank.", en());
  for (std::size_t window : {2u, 3u, 4u}) {
    KeywordRequest r;
    r.window = window;
    const auto wg = word_graph(doc, r, words);
    const auto pr = pagerank(wg.graph, r.rank);
    const auto scores = score_semantic_graph(doc, r, words);
    for (std::size_t i = 0; i < wg.nodes.size(); ++i) CHECK(std::abs(scores.at(wg.nodes[i]) - pr.scores[i]) <= 1e-9);
  }
}

TEST_CASE("semantic graph needs a known token") {
  const auto words = five_token_store();
  try {
    score_semantic_graph(segment("Nothing known here.", en()), {}, words);
    FAIL("expected OOV");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kOutOfVocabulary);
  }
  KeywordRequest r;
  r.method = KeywordMethod::kSemanticGraph;
  CHECK_THROWS_AS(extract_keywords(segment("River.", en()), r, nullptr), Error);
}

TEST_CASE("keyword results are verbatim, bounded and unique") {
  TrainConfig cfg;
  cfg.dimension = 16;
  cfg.epochs = 3;
  cfg.min_count = 1;
  const auto model = train(Corpus::build(test::news_training_documents(en()), 1), cfg);
  for (const auto& path : test::news_articles()) {
    const auto doc = segment(test::slurp(path), en());
    for (auto method : {KeywordMethod::kBm25, KeywordMethod::kSemanticGraph}) {
      for (std::size_t top_k : {1u, 5u, 10u}) {
        KeywordRequest r;
        r.method = method;
        r.top_k = top_k;
        r.min_ngram_count = 1;
        const auto result = extract_keywords(doc, r, &model.words);
        CHECK(result.keywords.size() <= top_k);
        std::set<TokenSequence> seen;
        for (std::size_t i = 0; i < result.keywords.size(); ++i) {
          const auto& k = result.keywords[i];
          CHECK(occurs_verbatim(doc, k.ngram));
          CHECK(k.ngram.size() >= 1);
          CHECK(k.ngram.size() <= r.max_n);
          CHECK(std::find(k.ngram.begin(), k.ngram.end(), k.source_word) != k.ngram.end());
          CHECK(seen.insert(k.ngram).second);
          if (i > 0) CHECK(result.keywords[i - 1].score >= k.score);
        }
      }
    }
  }
}

TEST_CASE("request validation") {
  KeywordRequest r;
  CHECK_NOTHROW(r.validate());
  r.top_k = 0;
  CHECK_THROWS_AS(r.validate(), Error);
  r.top_k = 1;
  r.max_n = 0;
  CHECK_THROWS_AS(r.validate(), Error);
  r.max_n = 1;
  r.window = 0;
  CHECK_THROWS_AS(r.validate(), Error);
  r.window = 2;
  r.b = 1.5;
  CHECK_THROWS_AS(r.validate(), Error);
}
