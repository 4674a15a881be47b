#include "semrank/summarize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "semrank/error.hpp"
#include "semrank/unicode.hpp"

namespace semrank {

void SummarySize::validate() const {
  if (ratio.has_value() == word_limit.has_value()) {
    throw Error(ErrorCode::kInvalidArgument, "exactly one of ratio and word limit must be set");
  }
  if (ratio && !(*ratio > 0.0 && *ratio <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "ratio must lie in (0, 1]");
  }
  if (word_limit && *word_limit == 0) throw Error(ErrorCode::kInvalidArgument, "word limit must be positive");
}

void SummaryRequest::validate() const {
  size.validate();
  rank.validate();
  if (!(similarity_floor >= 0.0) || !std::isfinite(similarity_floor)) {
    throw Error(ErrorCode::kInvalidArgument, "similarity floor must be a finite value >= 0");
  }
}

double overlap_similarity(std::span<const Token> a, std::span<const Token> b) {
  const std::set<std::string_view> left(a.begin(), a.end());
  std::set<std::string_view> shared;
  for (const auto& t : b) {
    if (left.contains(t)) shared.insert(t);
  }
  if (shared.empty()) return 0.0;
  const double denom = (a.size() <= 1 || b.size() <= 1)
                           ? 1.0
                           : std::log(static_cast<double>(a.size())) + std::log(static_cast<double>(b.size()));
  return static_cast<double>(shared.size()) / denom;
}

SentenceGraph sentence_graph(const TokenizedDocument& document, const SummaryRequest& request,
                             const Embeddings& embeddings) {
  request.validate();
  const std::size_t n = document.sentences.size();
  if (n == 0) throw Error(ErrorCode::kEmptyDocument, "document has no sentences");
  SentenceGraph out{WeightedGraph(n, false), {}};

  const auto add = [&](std::size_t i, std::size_t j, double w) {
    if (w > request.similarity_floor) out.graph.set_edge(i, j, w);
  };

  if (request.method == SummaryMethod::kBaselineOverlap) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        add(i, j, overlap_similarity(document.sentences[i].content_tokens, document.sentences[j].content_tokens));
      }
    }
    return out;
  }

  const DocEmbedder embedder(embeddings, request.doc_vector_source, request.seed);
  std::vector<std::optional<Vector>> vectors(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string warning;
    vectors[i] = embedder.embed(document.sentences[i].content_tokens, &warning);
    if (!warning.empty()) out.warnings.push_back("sentence " + std::to_string(i) + ": " + warning);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!vectors[i]) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!vectors[j]) continue;
      add(i, j, std::max(0.0, cosine(*vectors[i], *vectors[j])));
    }
  }
  return out;
}

std::size_t visible_word_count(std::string_view text) {
  std::size_t words = 0;
  bool in_word = false;
  for (std::size_t i = 0; i < text.size();) {
    const auto d = unicode::decode(text, i);
    const bool space = unicode::is_space(d.codepoint);
    if (!space && !in_word) ++words;
    in_word = !space;
    i += d.length;
  }
  return words;
}

std::vector<std::size_t> select_sentences(const TokenizedDocument& document, const RankVector& ranks,
                                          const SummarySize& size) {
  size.validate();
  const std::size_t n = document.sentences.size();
  if (n == 0) throw Error(ErrorCode::kEmptyDocument, "document has no sentences");
  if (ranks.scores.size() != n) throw Error(ErrorCode::kInvalidArgument, "rank vector does not match document");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return ranks.scores[a] > ranks.scores[b]; });

  std::vector<std::size_t> chosen;
  if (size.ratio) {
    // The epsilon keeps ratios like 0.7 * 10 from rounding up to 8.
    const double wanted = std::ceil(*size.ratio * static_cast<double>(n) - 1e-9);
    const auto k = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(wanted, 1.0)), 1, n);
    chosen.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  } else {
    std::size_t total = 0;
    for (std::size_t s : order) {
      const std::size_t words = visible_word_count(document.sentence_text(s));
      if (total + words > *size.word_limit) break;
      total += words;
      chosen.push_back(s);
    }
    if (chosen.empty()) chosen.push_back(order.front());
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

Summary summarize(const TokenizedDocument& document, const SummaryRequest& request, const Embeddings& embeddings) {
  auto graph = sentence_graph(document, request, embeddings);
  Summary summary;
  summary.scores = weighted_rank(graph.graph, request.rank);
  summary.selected = select_sentences(document, summary.scores, request.size);
  summary.request = request;
  summary.warnings = std::move(graph.warnings);
  return summary;
}

}  // namespace semrank
