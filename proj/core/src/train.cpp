#include "semrank/train.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "semrank/error.hpp"

namespace semrank {
namespace {

// 53 random bits -> [0, 1).
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// -log s(x), evaluated without overflow.
double neg_log_sigmoid(double x) {
  return x >= 0.0 ? std::log1p(std::exp(-x)) : -x + std::log1p(std::exp(x));
}

void random_init(std::span<double> v, std::mt19937_64& rng) {
  const double scale = 1.0 / static_cast<double>(v.size());
  for (double& x : v) x = (uniform01(rng) - 0.5) * scale;
}

// One logistic term of the SGNS objective: label 1 for the observed pair,
// 0 for a noise sample. Returns g = s(in.out) - label, the factor shared by
// d/d(in) = g*out and d/d(out) = g*in; adds the term's loss to `loss`.
double logistic_coefficient(std::span<const double> in, std::span<const double> out, double label,
                            double& loss) {
  const double f = dot(in, out);
  loss += label > 0.5 ? neg_log_sigmoid(f) : neg_log_sigmoid(-f);
  return sigmoid(f) - label;
}

// In-place SGD on one (input, positive output) pair with sampled negatives.
// Outputs are updated as they are visited; the input update is applied last
// from the gradient accumulated at the original input.
class SgnsStep {
 public:
  SgnsStep(std::size_t dim, std::size_t negatives) : input_grad_(dim), negatives_(negatives) {}

  double apply(std::span<double> input, double* output_matrix, std::uint32_t target,
               const NoiseDistribution& noise, std::mt19937_64& rng, double lr) {
    const std::size_t dim = input.size();
    std::fill(input_grad_.begin(), input_grad_.end(), 0.0);
    double loss = 0.0;
    for (std::size_t k = 0; k <= negatives_; ++k) {
      std::uint32_t out_index = target;
      double label = 1.0;
      if (k > 0) {
        out_index = static_cast<std::uint32_t>(noise.sample(rng));
        if (out_index == target) continue;
        label = 0.0;
      }
      std::span<double> out(output_matrix + static_cast<std::size_t>(out_index) * dim, dim);
      const double g = logistic_coefficient(input, out, label, loss);
      for (std::size_t i = 0; i < dim; ++i) {
        input_grad_[i] += g * out[i];
        out[i] -= lr * g * input[i];
      }
    }
    for (std::size_t i = 0; i < dim; ++i) input[i] -= lr * input_grad_[i];
    return loss;
  }

  // Same update with the output vectors frozen.
  double apply_frozen(std::span<double> input, const DocModel& model, std::uint32_t target,
                      std::mt19937_64& rng, double lr) {
    std::fill(input_grad_.begin(), input_grad_.end(), 0.0);
    double loss = 0.0;
    for (std::size_t k = 0; k <= negatives_; ++k) {
      std::uint32_t out_index = target;
      double label = 1.0;
      if (k > 0) {
        out_index = static_cast<std::uint32_t>(model.noise.sample(rng));
        if (out_index == target) continue;
        label = 0.0;
      }
      const auto out = model.context.vector(out_index);
      const double g = logistic_coefficient(input, out, label, loss);
      for (std::size_t i = 0; i < input.size(); ++i) input_grad_[i] += g * out[i];
    }
    for (std::size_t i = 0; i < input.size(); ++i) input[i] -= lr * input_grad_[i];
    return loss;
  }

 private:
  Vector input_grad_;
  std::size_t negatives_;
};

}  // namespace

void TrainConfig::validate() const {
  if (dimension < 2) throw Error(ErrorCode::kInvalidArgument, "dimension must be at least 2");
  if (window == 0 || negative_samples == 0 || epochs == 0 || min_count == 0) {
    throw Error(ErrorCode::kInvalidArgument, "window, negative_samples, epochs and min_count must be positive");
  }
  if (!(initial_learning_rate > 0.0) || !std::isfinite(initial_learning_rate)) {
    throw Error(ErrorCode::kInvalidArgument, "initial_learning_rate must be positive");
  }
}

NoiseDistribution::NoiseDistribution(std::span<const std::uint64_t> counts, double exponent) {
  probabilities_.reserve(counts.size());
  double total = 0.0;
  for (auto c : counts) {
    const double w = std::pow(static_cast<double>(c), exponent);
    probabilities_.push_back(w);
    total += w;
  }
  if (total <= 0.0) throw Error(ErrorCode::kEmptyCorpus, "noise distribution over an empty vocabulary");
  double running = 0.0;
  cumulative_.reserve(counts.size());
  for (double& p : probabilities_) {
    p /= total;
    running += p;
    cumulative_.push_back(running);
  }
  cumulative_.back() = 1.0;
}

std::size_t NoiseDistribution::sample(std::mt19937_64& rng) const {
  const double u = uniform01(rng);
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return std::min(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
}

std::vector<TrainingDocument> paragraph_documents(const TokenizedDocument& document, std::string_view name) {
  std::vector<TrainingDocument> out;
  for (std::size_t p = 0; p < document.paragraphs.size(); ++p) {
    out.push_back({std::string(name) + "#" + std::to_string(p), document.paragraph_content(p)});
  }
  return out;
}

Corpus Corpus::build(std::vector<TrainingDocument> documents, std::size_t min_count) {
  if (min_count == 0) throw Error(ErrorCode::kInvalidArgument, "min_count must be positive");
  std::map<std::string, std::uint64_t> freq;
  for (const auto& d : documents) {
    for (const auto& t : d.tokens) ++freq[t];
  }

  std::vector<std::pair<std::string, std::uint64_t>> kept;
  for (auto& [token, count] : freq) {
    if (count >= min_count) kept.emplace_back(token, count);
  }
  if (kept.empty()) throw Error(ErrorCode::kEmptyCorpus, "no token reaches min_count " + std::to_string(min_count));
  std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.second > b.second; });

  Corpus corpus;
  corpus.min_count_ = min_count;
  for (auto& [token, count] : kept) {
    corpus.index_.emplace(token, static_cast<std::uint32_t>(corpus.vocab_.size()));
    corpus.vocab_.push_back(token);
    corpus.counts_.push_back(count);
  }
  corpus.noise_ = NoiseDistribution(corpus.counts_);
  for (const auto& d : documents) {
    std::vector<std::uint32_t> ids;
    for (const auto& t : d.tokens) {
      if (auto it = corpus.index_.find(t); it != corpus.index_.end()) ids.push_back(it->second);
    }
    corpus.encoded_.push_back(std::move(ids));
  }
  corpus.documents_ = std::move(documents);
  return corpus;
}

std::uint64_t Corpus::frequency(std::string_view token) const {
  const auto it = index_.find(std::string(token));
  return it == index_.end() ? 0 : counts_[it->second];
}

double learning_rate(std::size_t step, std::size_t total_steps, double initial) {
  const double floor = initial / 100.0;
  if (total_steps <= 1) return initial;
  const double progress = static_cast<double>(step) / static_cast<double>(total_steps - 1);
  return std::max(floor, initial - (initial - floor) * progress);
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double sgns_loss(std::span<const double> center, std::span<const double> context,
                 std::span<const Vector> negatives) {
  double loss = 0.0;
  logistic_coefficient(center, context, 1.0, loss);
  for (const auto& n : negatives) logistic_coefficient(center, n, 0.0, loss);
  return loss;
}

SgnsGradient sgns_gradient(std::span<const double> center, std::span<const double> context,
                           std::span<const Vector> negatives) {
  const std::size_t dim = center.size();
  if (context.size() != dim) throw Error(ErrorCode::kDimension, "context length differs from center");
  SgnsGradient grad{Vector(dim, 0.0), Vector(dim, 0.0), {}};
  double loss = 0.0;

  const double g = logistic_coefficient(center, context, 1.0, loss);
  for (std::size_t i = 0; i < dim; ++i) {
    grad.center[i] += g * context[i];
    grad.context[i] = g * center[i];
  }
  for (const auto& n : negatives) {
    if (n.size() != dim) throw Error(ErrorCode::kDimension, "negative length differs from center");
    const double gn = logistic_coefficient(center, n, 0.0, loss);
    Vector gneg(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      grad.center[i] += gn * n[i];
      gneg[i] = gn * center[i];
    }
    grad.negatives.push_back(std::move(gneg));
  }
  return grad;
}

TrainedModel train(const Corpus& corpus, const TrainConfig& config) {
  config.validate();
  if (corpus.vocab().empty()) throw Error(ErrorCode::kEmptyCorpus, "empty vocabulary");

  const std::size_t dim = config.dimension;
  const std::size_t vocab = corpus.vocab().size();
  const std::size_t n_docs = corpus.documents().size();
  const bool with_docs = config.mode == TrainMode::kDocsAndWords;

  std::mt19937_64 rng(config.seed);
  std::vector<double> input(vocab * dim);
  std::vector<double> output(vocab * dim, 0.0);
  std::vector<double> doc_vectors(with_docs ? n_docs * dim : 0);
  random_init(input, rng);
  for (std::size_t d = 0; d < (with_docs ? n_docs : 0); ++d) {
    random_init(std::span<double>(doc_vectors.data() + d * dim, dim), rng);
  }

  std::size_t positions = 0;
  for (const auto& doc : corpus.encoded()) positions += doc.size();
  const std::size_t total_steps = positions * config.epochs;

  SgnsStep step(dim, config.negative_samples);
  TrainedModel model;
  std::size_t t = 0;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    double epoch_loss = 0.0;
    std::size_t pairs = 0;
    for (std::size_t d = 0; d < n_docs; ++d) {
      const auto& ids = corpus.encoded()[d];
      for (std::size_t i = 0; i < ids.size(); ++i, ++t) {
        const double lr = learning_rate(t, total_steps, config.initial_learning_rate);
        if (with_docs) {
          std::span<double> dv(doc_vectors.data() + d * dim, dim);
          epoch_loss += step.apply(dv, output.data(), ids[i], corpus.noise(), rng, lr);
          ++pairs;
        }
        const std::size_t reduce = static_cast<std::size_t>(rng() % config.window);
        const std::size_t span_width = config.window - reduce;
        const std::size_t lo = i >= span_width ? i - span_width : 0;
        const std::size_t hi = std::min(ids.size() - 1, i + span_width);
        std::span<double> center(input.data() + static_cast<std::size_t>(ids[i]) * dim, dim);
        for (std::size_t j = lo; j <= hi; ++j) {
          if (j == i) continue;
          epoch_loss += step.apply(center, output.data(), ids[j], corpus.noise(), rng, lr);
          ++pairs;
        }
      }
    }
    model.epoch_loss.push_back(pairs == 0 ? 0.0 : epoch_loss / static_cast<double>(pairs));
  }

  model.words = VectorStore(dim);
  for (std::size_t w = 0; w < vocab; ++w) {
    model.words.add(corpus.vocab()[w], Vector(input.begin() + w * dim, input.begin() + (w + 1) * dim));
  }
  // Context rows that never received an update stay zero; they are dropped
  // together with their counts so the noise table stays aligned.
  model.doc_model.context = VectorStore(dim);
  for (std::size_t w = 0; w < vocab; ++w) {
    Vector row(output.begin() + w * dim, output.begin() + (w + 1) * dim);
    if (euclidean_norm(row) == 0.0) continue;
    model.doc_model.context.add(corpus.vocab()[w], std::move(row));
    model.doc_model.counts.push_back(corpus.counts()[w]);
  }
  if (model.doc_model.context.empty()) throw Error(ErrorCode::kEmptyCorpus, "no context vector was trained");
  model.doc_model.noise = NoiseDistribution(model.doc_model.counts);
  if (with_docs) {
    VectorStore docs(dim);
    for (std::size_t d = 0; d < n_docs; ++d) {
      Vector row(doc_vectors.begin() + d * dim, doc_vectors.begin() + (d + 1) * dim);
      if (euclidean_norm(row) == 0.0) continue;
      docs.add(corpus.documents()[d].id, std::move(row));
    }
    model.docs = std::move(docs);
  }
  return model;
}

Vector infer_doc_vector(std::span<const Token> tokens, const DocModel& model, const TrainConfig& config,
                        std::uint64_t seed) {
  config.validate();
  std::vector<std::uint32_t> ids;
  for (const auto& t : tokens) {
    const std::size_t i = model.context.index_of(t);
    if (i < model.context.size()) ids.push_back(static_cast<std::uint32_t>(i));
  }
  if (ids.empty()) throw Error(ErrorCode::kOutOfVocabulary, "no token is known to the document model");

  const std::size_t dim = model.context.dimension();
  std::mt19937_64 rng(seed);
  Vector doc(dim);
  random_init(doc, rng);
  SgnsStep step(dim, config.negative_samples);
  const std::size_t total_steps = ids.size() * config.epochs;
  std::size_t t = 0;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    for (auto id : ids) {
      step.apply_frozen(doc, model, id, rng, learning_rate(t++, total_steps, config.initial_learning_rate));
    }
  }
  return doc;
}

void save_model(const TrainedModel& model, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  save_word_vectors(model.words, dir / "words.vec");
  save_word_vectors(model.doc_model.context, dir / "context.vec");
  if (model.docs) save_word_vectors(*model.docs, dir / "docs.vec");
  std::ofstream vocab(dir / "vocab.txt");
  if (!vocab) throw Error(ErrorCode::kIo, "cannot write " + (dir / "vocab.txt").string());
  for (std::size_t i = 0; i < model.doc_model.context.size(); ++i) {
    vocab << model.doc_model.context.key(i) << ' ' << model.doc_model.counts[i] << '\n';
  }
}

DocModel load_doc_model(const std::filesystem::path& dir) {
  DocModel model;
  model.context = load_word_vectors(dir / "context.vec");
  std::ifstream in(dir / "vocab.txt");
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + (dir / "vocab.txt").string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string token;
    std::uint64_t count = 0;
    if (!(fields >> token >> count) || count == 0) throw FormatError(line_no, "expected 'token count'");
    const std::size_t index = model.counts.size();
    if (index >= model.context.size() || model.context.key(index) != token) {
      throw FormatError(line_no, "vocab.txt is not aligned with context.vec at '" + token + "'");
    }
    model.counts.push_back(count);
  }
  if (model.counts.size() != model.context.size()) {
    throw FormatError(line_no, "vocab.txt lists " + std::to_string(model.counts.size()) + " tokens, context.vec has " +
                                   std::to_string(model.context.size()));
  }
  model.noise = NoiseDistribution(model.counts);
  return model;
}

}  // namespace semrank
