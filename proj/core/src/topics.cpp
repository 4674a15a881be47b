#include "semrank/topics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "semrank/error.hpp"

namespace semrank {
namespace {

std::string_view metric_name(ClusterMetric m) {
  return m == ClusterMetric::kSimilarity ? "similarity" : "one_minus_similarity";
}

bool should_merge(double similarity, double threshold, ClusterMetric metric) {
  return metric == ClusterMetric::kSimilarity ? similarity > threshold : (1.0 - similarity) < threshold;
}

std::vector<std::optional<Vector>> paragraph_vectors(const TokenizedDocument& document, const DocEmbedder& embedder,
                                                     std::vector<std::string>* warnings) {
  std::vector<std::optional<Vector>> out;
  for (std::size_t p = 0; p < document.paragraphs.size(); ++p) {
    std::string warning;
    out.push_back(embedder.embed(document.paragraph_content(p), &warning));
    if (warnings != nullptr && !warning.empty()) {
      warnings->push_back("paragraph " + std::to_string(p) + ": " + warning);
    }
  }
  return out;
}

}  // namespace

SampleStatistics sample_statistics(std::span<const double> values) {
  SampleStatistics s;
  double m2 = 0.0;
  for (double x : values) {
    ++s.count;
    const double delta = x - s.mean;
    s.mean += delta / static_cast<double>(s.count);
    m2 += delta * (x - s.mean);
  }
  s.std = s.count == 0 ? 0.0 : std::sqrt(std::max(0.0, m2 / static_cast<double>(s.count)));
  return s;
}

ThresholdCalibration calibrate(std::span<const TokenizedDocument> corpus, const DocEmbedder& embedder,
                               ClusterMetric metric, std::string corpus_id) {
  std::vector<double> samples;
  for (const auto& doc : corpus) {
    const auto vectors = paragraph_vectors(doc, embedder, nullptr);
    for (std::size_t p = 0; p + 1 < vectors.size(); ++p) {
      if (!vectors[p] || !vectors[p + 1]) continue;
      const double sim = cosine(*vectors[p], *vectors[p + 1]);
      samples.push_back(metric == ClusterMetric::kSimilarity ? sim : 1.0 - sim);
    }
  }
  if (samples.size() < 2) {
    throw Error(ErrorCode::kInsufficientCalibration,
                "need at least 2 consecutive paragraph pairs, found " + std::to_string(samples.size()));
  }
  const auto stats = sample_statistics(samples);
  return {stats.mean, stats.std, stats.count, std::move(corpus_id), metric};
}

void save_calibration(const ThresholdCalibration& c, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  char buf[64];
  out << "# semrank topic calibration\n";
  std::snprintf(buf, sizeof buf, "%.17g", c.mean);
  out << "mean = " << buf << '\n';
  std::snprintf(buf, sizeof buf, "%.17g", c.std);
  out << "std = " << buf << '\n';
  out << "sample_count = " << c.sample_count << '\n';
  out << "corpus_id = " << c.source_corpus_id << '\n';
  out << "metric = " << metric_name(c.metric) << '\n';
}

ThresholdCalibration load_calibration(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open calibration file " + path.string());
  ThresholdCalibration c;
  bool has_mean = false, has_std = false, has_count = false;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw FormatError(line_no, "expected 'key = value'");
    auto strip = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    try {
      if (key == "mean") {
        c.mean = std::stod(value), has_mean = true;
      } else if (key == "std") {
        c.std = std::stod(value), has_std = true;
      } else if (key == "sample_count") {
        c.sample_count = std::stoull(value), has_count = true;
      } else if (key == "corpus_id") {
        c.source_corpus_id = value;
      } else if (key == "metric") {
        if (value == "similarity") {
          c.metric = ClusterMetric::kSimilarity;
        } else if (value == "one_minus_similarity") {
          c.metric = ClusterMetric::kOneMinusSimilarity;
        } else {
          throw FormatError(line_no, "unknown metric '" + value + "'");
        }
      } else {
        throw FormatError(line_no, "unknown key '" + key + "'");
      }
    } catch (const std::logic_error&) {
      throw FormatError(line_no, "invalid number '" + value + "'");
    }
  }
  if (!has_mean || !has_std || !has_count) throw FormatError(0, "calibration file lacks mean, std or sample_count");
  if (c.sample_count < 2 || !(c.std >= 0.0) || !std::isfinite(c.mean)) {
    throw FormatError(0, "calibration values out of range");
  }
  return c;
}

std::vector<std::vector<std::size_t>> cluster_vectors(std::span<const std::optional<Vector>> vectors,
                                                      double threshold, ClusterMetric metric,
                                                      ClusterRepresentative representative) {
  std::vector<std::vector<std::size_t>> clusters;
  if (vectors.empty()) return clusters;

  clusters.push_back({0});
  // Representative state: last vector seen, or running sum and count.
  std::optional<Vector> last = vectors[0];
  Vector sum = vectors[0] ? *vectors[0] : Vector{};
  std::size_t members_with_vectors = vectors[0] ? 1 : 0;

  for (std::size_t p = 1; p < vectors.size(); ++p) {
    const auto& v = vectors[p];
    if (!v) {
      clusters.back().push_back(p);
      continue;
    }
    bool merge = true;
    if (representative == ClusterRepresentative::kLastParagraph) {
      if (last) merge = should_merge(cosine(*v, *last), threshold, metric);
    } else if (members_with_vectors > 0) {
      Vector mean = sum;
      for (double& x : mean) x /= static_cast<double>(members_with_vectors);
      merge = euclidean_norm(mean) > 0.0 && should_merge(cosine(*v, mean), threshold, metric);
    }

    if (merge) {
      clusters.back().push_back(p);
    } else {
      clusters.push_back({p});
      sum.assign(v->size(), 0.0);
      members_with_vectors = 0;
    }
    last = v;
    if (sum.empty()) sum.assign(v->size(), 0.0);
    for (std::size_t i = 0; i < v->size(); ++i) sum[i] += (*v)[i];
    ++members_with_vectors;
  }
  return clusters;
}

ClusterSet cluster(const TokenizedDocument& document, const ThresholdCalibration& calibration,
                   const DocEmbedder& embedder, ClusterRepresentative representative) {
  if (document.paragraphs.empty()) throw Error(ErrorCode::kEmptyDocument, "document has no paragraphs");
  ClusterSet out;
  out.calibration_used = calibration;
  const auto vectors = paragraph_vectors(document, embedder, &out.warnings);
  for (std::size_t p = 0; p < vectors.size(); ++p) {
    if (!vectors[p]) out.warnings.push_back("paragraph " + std::to_string(p) + " has no vector; kept in current cluster");
  }
  out.clusters = cluster_vectors(vectors, calibration.threshold(), calibration.metric, representative);
  return out;
}

std::vector<TopicSummary> summarize_by_topics(const TokenizedDocument& document,
                                              const ThresholdCalibration& calibration,
                                              const SummaryRequest& request, const Embeddings& embeddings,
                                              ClusterRepresentative representative) {
  request.validate();
  const DocEmbedder embedder(embeddings, request.doc_vector_source, request.seed);
  const auto clusters = cluster(document, calibration, embedder, representative);

  std::vector<TopicSummary> out;
  for (const auto& paragraphs : clusters.clusters) {
    TopicSummary topic;
    topic.paragraphs = paragraphs;
    const auto sub = sub_document(document, paragraphs);
    topic.summary = summarize(sub, request, embeddings);

    std::vector<std::size_t> global;
    for (std::size_t p : paragraphs) {
      const auto& s = document.paragraphs[p].sentences;
      global.insert(global.end(), s.begin(), s.end());
    }
    for (std::size_t local : topic.summary.selected) topic.sentences.push_back(global[local]);
    out.push_back(std::move(topic));
  }
  return out;
}

}  // namespace semrank
