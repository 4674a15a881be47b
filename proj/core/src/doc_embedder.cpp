#include "semrank/doc_embedder.hpp"

#include "semrank/error.hpp"

namespace semrank {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t token_seed(std::uint64_t seed, std::span<const Token> tokens) {
  std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a
  for (const auto& t : tokens) {
    for (unsigned char c : t) {
      h ^= c;
      h *= 0x100000001B3ULL;
    }
    h ^= 0x1F;
    h *= 0x100000001B3ULL;
  }
  return splitmix64(seed ^ splitmix64(h));
}

DocEmbedder::DocEmbedder(const Embeddings& embeddings, DocVectorSource source, std::uint64_t seed)
    : embeddings_(embeddings), source_(source), seed_(seed) {
  if (source == DocVectorSource::kTrainedInference && embeddings.doc_model == nullptr) {
    throw Error(ErrorCode::kInvalidArgument, "trained inference requires a document model");
  }
  if (source == DocVectorSource::kAverage && embeddings.words == nullptr) {
    throw Error(ErrorCode::kInvalidArgument, "averaging requires word vectors");
  }
}

std::optional<Vector> DocEmbedder::average(std::span<const Token> tokens) const {
  if (embeddings_.words == nullptr) return std::nullopt;
  try {
    Vector v = doc_vector_by_average(tokens, *embeddings_.words);
    if (euclidean_norm(v) == 0.0) return std::nullopt;
    return v;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kOutOfVocabulary) throw;
    return std::nullopt;
  }
}

std::optional<Vector> DocEmbedder::embed(std::span<const Token> tokens, std::string* warning) const {
  if (source_ == DocVectorSource::kTrainedInference) {
    try {
      Vector v = infer_doc_vector(tokens, *embeddings_.doc_model, embeddings_.inference, token_seed(seed_, tokens));
      if (euclidean_norm(v) > 0.0) return v;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kOutOfVocabulary) throw;
    }
    auto fallback = average(tokens);
    if (warning != nullptr) {
      *warning = fallback ? "no token known to the document model; used word-vector average"
                          : "no token known to any model; no vector";
    }
    return fallback;
  }
  auto v = average(tokens);
  if (!v && warning != nullptr) *warning = "no in-vocabulary token; no vector";
  return v;
}

}  // namespace semrank
