#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "semrank/text.hpp"
#include "semrank/vector_store.hpp"

namespace semrank {

enum class TrainMode {
  kWordsOnly,     // skip-gram with negative sampling
  kDocsAndWords,  // skip-gram plus a PV-DBOW document vector per training document
};

struct TrainConfig {
  std::size_t dimension = 100;
  std::size_t window = 5;
  std::size_t negative_samples = 5;
  std::size_t epochs = 20;
  double initial_learning_rate = 0.025;
  std::size_t min_count = 2;
  std::uint64_t seed = 1;
  TrainMode mode = TrainMode::kDocsAndWords;

  // Throws kInvalidArgument unless every field is positive and dimension >= 2.
  void validate() const;
};

// Sampling distribution proportional to count^exponent.
class NoiseDistribution {
 public:
  NoiseDistribution() = default;
  explicit NoiseDistribution(std::span<const std::uint64_t> counts, double exponent = 0.75);

  std::size_t sample(std::mt19937_64& rng) const;
  double probability(std::size_t index) const { return probabilities_[index]; }
  std::size_t size() const noexcept { return probabilities_.size(); }

 private:
  std::vector<double> probabilities_;
  std::vector<double> cumulative_;
};

struct TrainingDocument {
  std::string id;
  TokenSequence tokens;
};

// One training document per paragraph, id "<name>#<paragraph-index>",
// holding the paragraph's content tokens.
std::vector<TrainingDocument> paragraph_documents(const TokenizedDocument& document, std::string_view name);

class Corpus {
 public:
  // Drops tokens seen fewer than `min_count` times. Vocabulary is ordered
  // by descending frequency, then token. Throws kEmptyCorpus when nothing
  // survives the filter.
  static Corpus build(std::vector<TrainingDocument> documents, std::size_t min_count);

  const std::vector<TrainingDocument>& documents() const noexcept { return documents_; }
  const std::vector<std::string>& vocab() const noexcept { return vocab_; }
  const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }
  // Documents as vocabulary indices; filtered tokens removed.
  const std::vector<std::vector<std::uint32_t>>& encoded() const noexcept { return encoded_; }
  const NoiseDistribution& noise() const noexcept { return noise_; }
  std::uint64_t frequency(std::string_view token) const;
  std::size_t min_count() const noexcept { return min_count_; }

 private:
  std::vector<TrainingDocument> documents_;
  std::vector<std::string> vocab_;
  std::vector<std::uint64_t> counts_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<std::vector<std::uint32_t>> encoded_;
  NoiseDistribution noise_;
  std::size_t min_count_ = 1;
};

// Output-layer ("context") vectors plus their noise distribution. This is
// what a document vector is trained against, so it is all inference needs.
struct DocModel {
  VectorStore context{1};
  std::vector<std::uint64_t> counts;  // indexed like context
  NoiseDistribution noise;            // built from counts
};

struct TrainedModel {
  VectorStore words{1};
  DocModel doc_model;
  std::optional<VectorStore> docs;  // keyed by TrainingDocument::id
  std::vector<double> epoch_loss;   // mean loss per positive pair, per epoch
};

// Single-threaded and fully determined by (corpus, config).
TrainedModel train(const Corpus& corpus, const TrainConfig& config);

// Linear decay from `initial` at step 0 to initial/100 at the last step.
double learning_rate(std::size_t step, std::size_t total_steps, double initial);

double sigmoid(double x);

// SGNS loss -log s(c.w) - sum_k log s(-n_k.w) for center w, context c and
// negatives n_k, and its exact gradient with respect to every argument.
double sgns_loss(std::span<const double> center, std::span<const double> context,
                 std::span<const Vector> negatives);

struct SgnsGradient {
  Vector center;
  Vector context;
  std::vector<Vector> negatives;
};

SgnsGradient sgns_gradient(std::span<const double> center, std::span<const double> context,
                           std::span<const Vector> negatives);

// Fits a fresh document vector against the frozen context vectors: random
// init from `seed`, then config.epochs passes of PV-DBOW updates. Throws
// kOutOfVocabulary when no token is known to the model.
Vector infer_doc_vector(std::span<const Token> tokens, const DocModel& model, const TrainConfig& config,
                        std::uint64_t seed);

// Model directory layout: words.vec, context.vec, vocab.txt ("token count"
// lines aligned with context.vec) and, when trained, docs.vec.
void save_model(const TrainedModel& model, const std::filesystem::path& dir);
DocModel load_doc_model(const std::filesystem::path& dir);

}  // namespace semrank
