#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "semrank/graph.hpp"
#include "semrank/text.hpp"
#include "semrank/vector_store.hpp"

namespace semrank {

enum class KeywordMethod {
  kBm25,           // sentence-level BM25, one query per candidate word
  kSemanticGraph,  // weighted TextRank over a co-occurrence graph with cosine edges
};

struct KeywordRequest {
  KeywordMethod method = KeywordMethod::kBm25;
  std::size_t top_k = 10;
  std::size_t max_n = 10;
  std::size_t window = 2;           // tokens closer than this co-occur
  std::size_t min_ngram_count = 2;  // an n-gram must occur strictly more often
  double k1 = 1.5;
  double b = 0.75;
  RankOptions rank;

  void validate() const;
};

using TokenScores = std::map<Token, double, std::less<>>;

struct Keyword {
  TokenSequence ngram;
  double score = 0.0;
  Token source_word;
};

struct KeywordResult {
  std::vector<Keyword> keywords;  // scores non-increasing, at most top_k
  std::string method_used;
};

// Each sentence is a BM25 document and each distinct content token a
// one-term query: sum_s IDF(t) * f(t,s)(k1+1) / (f(t,s) + k1(1 - b + b|s|/avg|s|))
// with IDF(t) = ln((N - n_t + 0.5) / (n_t + 0.5) + 1). Lengths count
// content tokens. Throws kEmptyDocument when there are no content tokens.
TokenScores score_bm25(const TokenizedDocument& document, const KeywordRequest& request);

// Builds the word co-occurrence graph used by score_semantic_graph: one
// node per distinct in-vocabulary content token, in order of first
// appearance, edges max(0, cosine) between tokens within the window.
struct WordGraph {
  std::vector<Token> nodes;
  WeightedGraph graph;
};
WordGraph word_graph(const TokenizedDocument& document, const KeywordRequest& request, const VectorStore& words);

// Throws kOutOfVocabulary when no content token has a vector.
TokenScores score_semantic_graph(const TokenizedDocument& document, const KeywordRequest& request,
                                 const VectorStore& words);

// Extends each of the top_k words to the longest n-gram (n <= max_n) that
// contains it, occurs more than half as often as the word, and occurs more
// than min_ngram_count times. Ties prefer the higher count, then the
// earlier first occurrence. N-grams never cross sentence boundaries.
KeywordResult collapse_to_ngrams(const TokenScores& important, const TokenizedDocument& document,
                                 const KeywordRequest& request);

// Scores with the request's method, then collapses. `words` is required
// for kSemanticGraph.
KeywordResult extract_keywords(const TokenizedDocument& document, const KeywordRequest& request,
                               const VectorStore* words = nullptr);

}  // namespace semrank
