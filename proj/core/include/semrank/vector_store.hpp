#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "semrank/text.hpp"

namespace semrank {

using Vector = std::vector<double>;

// Immutable-after-build map from token (or document id) to a dense vector
// of fixed dimension. Entries keep insertion order; each carries a cached
// Euclidean norm. Zero and non-finite vectors are rejected.
class VectorStore {
 public:
  explicit VectorStore(std::size_t dimension);

  // Throws kDimension on length mismatch, kZeroVector on a zero vector,
  // kInvalidArgument on duplicates or non-finite values.
  void add(std::string key, Vector vector);

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return keys_.size(); }
  bool empty() const noexcept { return keys_.empty(); }

  bool contains(std::string_view key) const;
  // Index of `key`, or size() when absent.
  std::size_t index_of(std::string_view key) const;
  // Throws kOutOfVocabulary naming the key.
  std::span<const double> at(std::string_view key) const;
  const double* find(std::string_view key) const;

  std::span<const double> vector(std::size_t index) const { return vectors_[index]; }
  double norm(std::size_t index) const { return norms_[index]; }
  const std::string& key(std::size_t index) const { return keys_[index]; }
  const std::vector<std::string>& keys() const noexcept { return keys_; }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };

  std::size_t dimension_;
  std::vector<std::string> keys_;
  std::vector<Vector> vectors_;
  std::vector<double> norms_;
  std::unordered_map<std::string, std::size_t, Hash, std::equal_to<>> index_;
};

// Text word-vector format: header "V D", then V lines "token v1 ... vD".
// Errors are FormatError with the offending 1-based line number.
VectorStore read_word_vectors(std::istream& in);
VectorStore load_word_vectors(const std::filesystem::path& path);

// Values are written with 9 significant digits.
void write_word_vectors(const VectorStore& store, std::ostream& out);
void save_word_vectors(const VectorStore& store, const std::filesystem::path& path);

double dot(std::span<const double> a, std::span<const double> b);
double euclidean_norm(std::span<const double> v);

// dot(a,b) / (|a||b|), clamped to [-1, 1]. Throws kDimension on length
// mismatch and kZeroVector when either operand is zero.
double cosine(std::span<const double> a, std::span<const double> b);

struct Neighbor {
  std::string token;
  double similarity;
};

// The k tokens closest by cosine to v(b) - v(a) + v(c), excluding a, b and
// c; ties broken lexicographically.
std::vector<Neighbor> analogy(std::string_view a, std::string_view b, std::string_view c,
                              const VectorStore& store, std::size_t k);

// Mean of the in-vocabulary token vectors. Throws kOutOfVocabulary when
// none of the tokens is known.
Vector doc_vector_by_average(std::span<const Token> tokens, const VectorStore& store);

}  // namespace semrank
