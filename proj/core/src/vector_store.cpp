#include "semrank/vector_store.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "semrank/error.hpp"

namespace semrank {

VectorStore::VectorStore(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) throw Error(ErrorCode::kDimension, "vector dimension must be positive");
}

void VectorStore::add(std::string key, Vector vector) {
  if (vector.size() != dimension_) {
    throw Error(ErrorCode::kDimension, "vector for '" + key + "' has length " +
                                           std::to_string(vector.size()) + ", expected " +
                                           std::to_string(dimension_));
  }
  for (double v : vector) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kInvalidArgument, "non-finite value in '" + key + "'");
  }
  const double n = euclidean_norm(vector);
  if (n == 0.0) throw Error(ErrorCode::kZeroVector, "zero vector for '" + key + "'");
  if (index_.contains(key)) throw Error(ErrorCode::kInvalidArgument, "duplicate key '" + key + "'");

  index_.emplace(key, keys_.size());
  keys_.push_back(std::move(key));
  vectors_.push_back(std::move(vector));
  norms_.push_back(n);
}

bool VectorStore::contains(std::string_view key) const { return index_.find(key) != index_.end(); }

std::size_t VectorStore::index_of(std::string_view key) const {
  const auto it = index_.find(key);
  return it == index_.end() ? keys_.size() : it->second;
}

std::span<const double> VectorStore::at(std::string_view key) const {
  const auto it = index_.find(key);
  if (it == index_.end()) throw Error(ErrorCode::kOutOfVocabulary, "'" + std::string(key) + "' not in store");
  return vectors_[it->second];
}

const double* VectorStore::find(std::string_view key) const {
  const auto it = index_.find(key);
  return it == index_.end() ? nullptr : vectors_[it->second].data();
}

VectorStore read_word_vectors(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError(1, "missing header");
  long long vocab = -1;
  long long dim = -1;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> vocab >> dim) || (header >> extra) || vocab < 0 || dim <= 0) {
      throw FormatError(1, "malformed header '" + line + "', expected 'V D'");
    }
  }

  VectorStore store(static_cast<std::size_t>(dim));
  std::size_t line_no = 1;
  for (long long row = 0; row < vocab; ++row) {
    ++line_no;
    if (!std::getline(in, line)) {
      throw FormatError(line_no, "expected " + std::to_string(vocab) + " vectors, found " + std::to_string(row));
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto sep = line.find(' ');
    if (sep == 0 || sep == std::string::npos) throw FormatError(line_no, "expected 'token v1 ... vD'");
    std::string token = line.substr(0, sep);

    Vector values;
    values.reserve(static_cast<std::size_t>(dim));
    const char* p = line.c_str() + sep;
    const char* end = line.c_str() + line.size();
    while (true) {
      while (p < end && (*p == ' ' || *p == '\t')) ++p;
      if (p >= end) break;
      char* next = nullptr;
      const double v = std::strtod(p, &next);
      if (next == p) throw FormatError(line_no, "invalid number in vector for '" + token + "'");
      if (!std::isfinite(v)) throw FormatError(line_no, "non-finite value in vector for '" + token + "'");
      values.push_back(v);
      p = next;
    }
    if (values.size() != static_cast<std::size_t>(dim)) {
      throw FormatError(line_no, "vector for '" + token + "' has " + std::to_string(values.size()) +
                                     " values, header says " + std::to_string(dim));
    }
    if (store.contains(token)) throw FormatError(line_no, "duplicate token '" + token + "'");
    try {
      store.add(std::move(token), std::move(values));
    } catch (const Error& e) {
      throw FormatError(line_no, e.what());
    }
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      throw FormatError(line_no, "more vectors than the header declares");
    }
  }
  return store;
}

VectorStore load_word_vectors(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return read_word_vectors(in);
}

void write_word_vectors(const VectorStore& store, std::ostream& out) {
  out << store.size() << ' ' << store.dimension() << '\n';
  char buf[32];
  for (std::size_t i = 0; i < store.size(); ++i) {
    out << store.key(i);
    for (double v : store.vector(i)) {
      std::snprintf(buf, sizeof buf, " %.9g", v);
      out << buf;
    }
    out << '\n';
  }
}

void save_word_vectors(const VectorStore& store, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  write_word_vectors(store, out);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double euclidean_norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }

double cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimension, "cosine of vectors with lengths " + std::to_string(a.size()) +
                                           " and " + std::to_string(b.size()));
  }
  const double na = euclidean_norm(a);
  const double nb = euclidean_norm(b);
  if (na == 0.0 || nb == 0.0) throw Error(ErrorCode::kZeroVector, "cosine of a zero vector");
  // Products commute exactly in IEEE arithmetic, so the result is symmetric.
  const double c = dot(a, b) / (na * nb);
  return std::clamp(c, -1.0, 1.0);
}

std::vector<Neighbor> analogy(std::string_view a, std::string_view b, std::string_view c,
                              const VectorStore& store, std::size_t k) {
  const auto va = store.at(a);
  const auto vb = store.at(b);
  const auto vc = store.at(c);
  Vector target(store.dimension());
  for (std::size_t i = 0; i < target.size(); ++i) target[i] = vb[i] - va[i] + vc[i];
  const double target_norm = euclidean_norm(target);

  std::vector<Neighbor> candidates;
  for (std::size_t i = 0; i < store.size(); ++i) {
    const auto& key = store.key(i);
    if (key == a || key == b || key == c) continue;
    const double sim = target_norm == 0.0
                           ? 0.0
                           : std::clamp(dot(target, store.vector(i)) / (target_norm * store.norm(i)), -1.0, 1.0);
    candidates.push_back({key, sim});
  }
  const auto order = [](const Neighbor& x, const Neighbor& y) {
    if (x.similarity != y.similarity) return x.similarity > y.similarity;
    return x.token < y.token;
  };
  const std::size_t keep = std::min(k, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                    candidates.end(), order);
  candidates.resize(keep);
  return candidates;
}

Vector doc_vector_by_average(std::span<const Token> tokens, const VectorStore& store) {
  Vector sum(store.dimension(), 0.0);
  std::size_t found = 0;
  for (const auto& t : tokens) {
    const double* v = store.find(t);
    if (v == nullptr) continue;
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += v[i];
    ++found;
  }
  if (found == 0) throw Error(ErrorCode::kOutOfVocabulary, "no token of the sequence is in the vocabulary");
  for (double& x : sum) x /= static_cast<double>(found);
  return sum;
}

}  // namespace semrank
