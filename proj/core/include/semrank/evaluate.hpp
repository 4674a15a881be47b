#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semrank/summarize.hpp"
#include "semrank/text.hpp"

namespace semrank {

// Clipped bigram recall of `candidate` against every reference:
//   sum_S sum_{bigram i in S} min(count(i, candidate), count(i, S))
//   ---------------------------------------------------------------
//   sum_S sum_{bigram i in S} count(i, S)
// Throws kDegenerateReference for a reference shorter than two tokens.
double rouge2(std::span<const Token> candidate, std::span<const TokenSequence> references);

std::string_view method_name(SummaryMethod method);

struct EvalConfig {
  std::size_t runs_per_document = 10;
  std::vector<double> ratios = {0.2, 0.5, 0.8};
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<SummaryMethod> methods = {SummaryMethod::kSemantic, SummaryMethod::kBaselineOverlap};
  DocVectorSource doc_vector_source = DocVectorSource::kTrainedInference;
  double similarity_floor = 0.0;
  RankOptions rank;
  std::size_t jobs = 1;  // worker threads over documents

  // seeds distinct and one per run; ratios in (0, 1].
  void validate() const;
};

struct MethodRecord {
  double ratio = 0.0;
  SummaryMethod method = SummaryMethod::kSemantic;
  std::vector<double> run_scores;
  double average = 0.0;
  double best = 0.0;
};

struct DocumentRecord {
  std::string id;
  std::vector<MethodRecord> records;  // ratio-major, then method, in config order
};

struct CorpusRecord {
  double ratio = 0.0;
  SummaryMethod method = SummaryMethod::kSemantic;
  std::size_t documents = 0;
  double average = 0.0;       // mean of per-document averages
  double best_average = 0.0;  // mean of per-document bests
};

struct SkippedFile {
  std::string path;
  std::string reason;
};

struct EvalReport {
  std::vector<DocumentRecord> documents;
  std::vector<CorpusRecord> corpus;
  std::vector<SkippedFile> skipped;
};

// Surface tokens (stopwords kept) of the listed sentences, concatenated.
TokenSequence surface_tokens(const TokenizedDocument& document, std::span<const std::size_t> sentences);

// Summarizes once per (ratio, method, run) and scores against the gold
// summary. Semantic runs seed inference with seeds[k]; the overlap
// baseline is deterministic, so its single score is replicated.
DocumentRecord evaluate_document(std::string id, const TokenizedDocument& document, const TokenizedDocument& gold,
                                 const EvalConfig& config, const Embeddings& embeddings);

struct CorpusEntry {
  std::string id;  // "<category>/<file stem>"
  std::filesystem::path article;
  std::filesystem::path summary;
};

struct CorpusListing {
  std::vector<CorpusEntry> entries;
  std::vector<SkippedFile> skipped;
};

// Pairs `<root>/News Articles/<category>/<id>.txt` with
// `<root>/Summaries/<category>/<id>.txt`, sorted by id. Articles with no
// summary are listed as skipped.
CorpusListing list_corpus(const std::filesystem::path& root);

std::string read_text_file(const std::filesystem::path& path);

EvalReport evaluate_corpus(const std::filesystem::path& root, const EvalConfig& config, const Embeddings& embeddings,
                           const LanguageProfile& profile);

// Aggregates per-document records into per-(ratio, method) corpus means.
std::vector<CorpusRecord> aggregate(std::span<const DocumentRecord> documents, const EvalConfig& config);

// Line-delimited JSON, one object per line:
//   {"record":"document","id":...,"ratio":...,"method":...,"run_scores":[...],"average":...,"best":...}
//   {"record":"corpus","ratio":...,"method":...,"documents":...,"average":...,"best_average":...}
//   {"record":"skipped","path":...,"reason":...}
void write_report(const EvalReport& report, std::ostream& out);

}  // namespace semrank
