#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semrank/doc_embedder.hpp"
#include "semrank/graph.hpp"
#include "semrank/text.hpp"

namespace semrank {

enum class SummaryMethod {
  kSemantic,         // edges weighted by document-vector cosine
  kBaselineOverlap,  // classic TextRank word-overlap similarity
};

// Exactly one of ratio / word_limit is set.
struct SummarySize {
  std::optional<double> ratio;
  std::optional<std::size_t> word_limit;

  static SummarySize of_ratio(double r) { return {r, std::nullopt}; }
  static SummarySize of_words(std::size_t n) { return {std::nullopt, n}; }
  void validate() const;
};

struct SummaryRequest {
  SummarySize size = SummarySize::of_ratio(0.2);
  SummaryMethod method = SummaryMethod::kSemantic;
  DocVectorSource doc_vector_source = DocVectorSource::kTrainedInference;
  double similarity_floor = 0.0;  // edges with weight <= floor are dropped
  RankOptions rank;
  std::uint64_t seed = 1;  // seeds document-vector inference

  void validate() const;
};

struct SentenceGraph {
  WeightedGraph graph;
  std::vector<std::string> warnings;
};

// One node per sentence. Semantic weights are max(0, cosine) between
// sentence vectors; baseline weights are overlap_similarity of content
// tokens. A sentence without a vector keeps its node but gets no edges.
SentenceGraph sentence_graph(const TokenizedDocument& document, const SummaryRequest& request,
                             const Embeddings& embeddings);

// |shared distinct tokens| / (log|a| + log|b|); denominator 1 when either
// sentence has at most one token.
double overlap_similarity(std::span<const Token> a, std::span<const Token> b);

// Whitespace-delimited words of a sentence's raw text.
std::size_t visible_word_count(std::string_view text);

// Picks sentences by descending score (earlier sentence wins ties) and
// returns them in document order. Ratio keeps ceil(ratio * N) sentences;
// a word limit adds sentences while the running total stays within the
// limit. At least one sentence is always selected.
std::vector<std::size_t> select_sentences(const TokenizedDocument& document, const RankVector& ranks,
                                          const SummarySize& size);

struct Summary {
  std::vector<std::size_t> selected;  // strictly increasing
  RankVector scores;
  SummaryRequest request;
  std::vector<std::string> warnings;
};

Summary summarize(const TokenizedDocument& document, const SummaryRequest& request, const Embeddings& embeddings);

}  // namespace semrank
