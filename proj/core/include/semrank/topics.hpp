#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semrank/doc_embedder.hpp"
#include "semrank/summarize.hpp"
#include "semrank/text.hpp"

namespace semrank {

// Space the calibration statistics and the merge test live in.
enum class ClusterMetric {
  kSimilarity,          // merge when cosine > mean + std
  kOneMinusSimilarity,  // merge when 1 - cosine < mean + std
};

// Paragraph the next candidate is compared against.
enum class ClusterRepresentative {
  kLastParagraph,  // previous paragraph that has a vector
  kRunningMean,    // mean vector of the current cluster's members
};

struct ThresholdCalibration {
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
  std::size_t sample_count = 0;
  std::string source_corpus_id;
  ClusterMetric metric = ClusterMetric::kSimilarity;

  double threshold() const { return mean + std; }
};

struct SampleStatistics {
  double mean = 0.0;
  double std = 0.0;
  std::size_t count = 0;
};

// One-pass (Welford) mean and population standard deviation.
SampleStatistics sample_statistics(std::span<const double> values);

// Cosine of every consecutive paragraph pair within each document (or
// 1 - cosine under kOneMinusSimilarity). Throws kInsufficientCalibration
// when fewer than two pairs have vectors on both sides.
ThresholdCalibration calibrate(std::span<const TokenizedDocument> corpus, const DocEmbedder& embedder,
                               ClusterMetric metric = ClusterMetric::kSimilarity, std::string corpus_id = {});

// Key-value text file: mean, std, sample_count, corpus_id, metric.
void save_calibration(const ThresholdCalibration& calibration, const std::filesystem::path& path);
ThresholdCalibration load_calibration(const std::filesystem::path& path);

struct ClusterSet {
  std::vector<std::vector<std::size_t>> clusters;  // contiguous paragraph runs, in order
  ThresholdCalibration calibration_used;
  std::vector<std::string> warnings;
};

// Left-to-right merge over paragraph vectors. A paragraph without a vector
// joins the current cluster. Pure: used by cluster() and property tests.
std::vector<std::vector<std::size_t>> cluster_vectors(std::span<const std::optional<Vector>> vectors,
                                                      double threshold, ClusterMetric metric,
                                                      ClusterRepresentative representative);

ClusterSet cluster(const TokenizedDocument& document, const ThresholdCalibration& calibration,
                   const DocEmbedder& embedder,
                   ClusterRepresentative representative = ClusterRepresentative::kLastParagraph);

struct TopicSummary {
  std::vector<std::size_t> paragraphs;
  Summary summary;                     // indices local to the cluster's sub-document
  std::vector<std::size_t> sentences;  // the same selection as document sentence indices
};

// Clusters the document, then summarizes every cluster on its own with the
// request's size and method. Concatenating the results in order gives the
// full-coverage summary.
std::vector<TopicSummary> summarize_by_topics(
    const TokenizedDocument& document, const ThresholdCalibration& calibration, const SummaryRequest& request,
    const Embeddings& embeddings, ClusterRepresentative representative = ClusterRepresentative::kLastParagraph);

}  // namespace semrank
