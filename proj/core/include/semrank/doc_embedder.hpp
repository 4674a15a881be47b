#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "semrank/text.hpp"
#include "semrank/train.hpp"
#include "semrank/vector_store.hpp"

namespace semrank {

enum class DocVectorSource {
  kTrainedInference,  // infer_doc_vector against a trained DocModel
  kAverage,           // mean of word vectors
};

// Non-owning view of the models a pipeline may use. Either pointer may be
// null when the corresponding source is not needed.
struct Embeddings {
  const VectorStore* words = nullptr;
  const DocModel* doc_model = nullptr;
  TrainConfig inference;  // epochs, negatives and learning rate for inference
};

// Turns a content-token sequence into a document vector.
//
// Inference is seeded from the run seed and a hash of the tokens, so
// identical sentences get identical vectors within a run while different
// runs draw different initializations. When inference has no known token
// the embedder falls back to averaging word vectors, if a word store is
// available.
class DocEmbedder {
 public:
  // Throws kInvalidArgument when the store the source needs is missing.
  DocEmbedder(const Embeddings& embeddings, DocVectorSource source, std::uint64_t seed);

  // nullopt when no vector can be formed. A fallback or failure is
  // described in `warning` when provided.
  std::optional<Vector> embed(std::span<const Token> tokens, std::string* warning = nullptr) const;

  DocVectorSource source() const noexcept { return source_; }

 private:
  std::optional<Vector> average(std::span<const Token> tokens) const;

  Embeddings embeddings_;
  DocVectorSource source_;
  std::uint64_t seed_;
};

// Stable 64-bit mix of a run seed and a token sequence.
std::uint64_t token_seed(std::uint64_t seed, std::span<const Token> tokens);

}  // namespace semrank
