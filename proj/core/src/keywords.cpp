#include "semrank/keywords.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>
#include <unordered_map>

#include "semrank/error.hpp"

namespace semrank {
namespace {

struct NgramStats {
  std::size_t count = 0;
  std::size_t first_sentence = 0;
  std::size_t first_offset = 0;
};

}  // namespace

void KeywordRequest::validate() const {
  if (top_k == 0 || max_n == 0 || window == 0 || min_ngram_count == 0) {
    throw Error(ErrorCode::kInvalidArgument, "top_k, max_n, window and min_ngram_count must be positive");
  }
  if (!(k1 >= 0.0) || !(b >= 0.0 && b <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "BM25 needs k1 >= 0 and b in [0, 1]");
  }
  rank.validate();
}

TokenScores score_bm25(const TokenizedDocument& document, const KeywordRequest& request) {
  request.validate();
  const std::size_t n_sentences = document.sentences.size();
  const std::size_t total = document.content_token_count();
  if (n_sentences == 0 || total == 0) throw Error(ErrorCode::kEmptyDocument, "document has no content tokens");
  const double avg_len = static_cast<double>(total) / static_cast<double>(n_sentences);

  std::vector<std::map<std::string_view, std::size_t>> tf(n_sentences);
  std::map<std::string_view, std::size_t> sentence_freq;
  for (std::size_t s = 0; s < n_sentences; ++s) {
    for (const auto& t : document.sentences[s].content_tokens) ++tf[s][t];
    for (const auto& [t, f] : tf[s]) ++sentence_freq[t];
  }

  const double n = static_cast<double>(n_sentences);
  TokenScores scores;
  for (const auto& [token, n_t] : sentence_freq) {
    const double nt = static_cast<double>(n_t);
    const double idf = std::log((n - nt + 0.5) / (nt + 0.5) + 1.0);
    double score = 0.0;
    for (std::size_t s = 0; s < n_sentences; ++s) {
      const auto it = tf[s].find(token);
      if (it == tf[s].end()) continue;
      const double f = static_cast<double>(it->second);
      const double len = static_cast<double>(document.sentences[s].content_tokens.size());
      score += idf * f * (request.k1 + 1.0) / (f + request.k1 * (1.0 - request.b + request.b * len / avg_len));
    }
    scores.emplace(token, score);
  }
  return scores;
}

WordGraph word_graph(const TokenizedDocument& document, const KeywordRequest& request, const VectorStore& words) {
  request.validate();
  std::unordered_map<std::string_view, std::size_t> node_of;
  std::vector<Token> nodes;
  for (const auto& s : document.sentences) {
    for (const auto& t : s.content_tokens) {
      if (words.contains(t) && node_of.emplace(t, nodes.size()).second) nodes.push_back(t);
    }
  }
  if (nodes.empty()) throw Error(ErrorCode::kOutOfVocabulary, "no content token has a word vector");

  WeightedGraph graph(nodes.size(), false);
  for (const auto& s : document.sentences) {
    const auto& seq = s.content_tokens;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      const auto a = node_of.find(seq[i]);
      if (a == node_of.end()) continue;
      for (std::size_t j = i + 1; j < seq.size() && j - i < request.window; ++j) {
        const auto b = node_of.find(seq[j]);
        if (b == node_of.end() || a->second == b->second) continue;
        const double w = std::max(0.0, cosine(words.at(seq[i]), words.at(seq[j])));
        graph.set_edge(a->second, b->second, w);
      }
    }
  }
  return {std::move(nodes), std::move(graph)};
}

TokenScores score_semantic_graph(const TokenizedDocument& document, const KeywordRequest& request,
                                 const VectorStore& words) {
  const auto wg = word_graph(document, request, words);
  const auto ranks = weighted_rank(wg.graph, request.rank);
  TokenScores scores;
  for (std::size_t i = 0; i < wg.nodes.size(); ++i) scores.emplace(wg.nodes[i], ranks.scores[i]);
  return scores;
}

KeywordResult collapse_to_ngrams(const TokenScores& important, const TokenizedDocument& document,
                                 const KeywordRequest& request) {
  request.validate();
  std::map<TokenSequence, NgramStats> ngrams;
  std::map<std::string_view, std::size_t> word_count;
  for (std::size_t s = 0; s < document.sentences.size(); ++s) {
    const auto& seq = document.sentences[s].content_tokens;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      ++word_count[seq[i]];
      for (std::size_t n = 2; n <= request.max_n && i + n <= seq.size(); ++n) {
        auto [it, inserted] = ngrams.try_emplace(TokenSequence(seq.begin() + i, seq.begin() + i + n));
        if (inserted) it->second.first_sentence = s, it->second.first_offset = i;
        ++it->second.count;
      }
    }
  }

  std::vector<std::pair<Token, double>> ranked(important.begin(), important.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  if (ranked.size() > request.top_k) ranked.resize(request.top_k);

  KeywordResult result;
  result.method_used = request.method == KeywordMethod::kBm25 ? "bm25" : "semantic_graph";
  std::set<TokenSequence> seen;
  for (const auto& [word, score] : ranked) {
    const auto wc = word_count.find(word);
    const std::size_t count_w = wc == word_count.end() ? 0 : wc->second;

    const TokenSequence* best = nullptr;
    const NgramStats* best_stats = nullptr;
    for (const auto& s : document.sentences) {
      const auto& seq = s.content_tokens;
      for (std::size_t p = 0; p < seq.size(); ++p) {
        if (seq[p] != word) continue;
        for (std::size_t n = 2; n <= request.max_n && n <= seq.size(); ++n) {
          const std::size_t lo = p + 1 >= n ? p + 1 - n : 0;
          for (std::size_t start = lo; start <= p && start + n <= seq.size(); ++start) {
            const auto it = ngrams.find(TokenSequence(seq.begin() + start, seq.begin() + start + n));
            const auto& st = it->second;
            if (!(2 * st.count > count_w && st.count > request.min_ngram_count)) continue;
            const auto key = [](const TokenSequence& g, const NgramStats& x) {
              return std::make_tuple(g.size(), x.count, std::size_t(-1) - x.first_sentence,
                                     std::size_t(-1) - x.first_offset);
            };
            if (best == nullptr || key(it->first, st) > key(*best, *best_stats)) {
              best = &it->first;
              best_stats = &st;
            }
          }
        }
      }
    }

    TokenSequence chosen = best != nullptr ? *best : TokenSequence{word};
    if (!seen.insert(chosen).second) continue;
    result.keywords.push_back({std::move(chosen), score, word});
  }
  return result;
}

KeywordResult extract_keywords(const TokenizedDocument& document, const KeywordRequest& request,
                               const VectorStore* words) {
  TokenScores scores;
  if (request.method == KeywordMethod::kBm25) {
    scores = score_bm25(document, request);
  } else {
    if (words == nullptr) throw Error(ErrorCode::kInvalidArgument, "semantic keyword graph requires word vectors");
    scores = score_semantic_graph(document, request, *words);
  }
  return collapse_to_ngrams(scores, document, request);
}

}  // namespace semrank
