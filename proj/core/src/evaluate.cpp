#include "semrank/evaluate.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "semrank/error.hpp"

namespace semrank {
namespace {

using Bigram = std::pair<std::string_view, std::string_view>;

std::map<Bigram, std::size_t> bigram_counts(std::span<const Token> tokens) {
  std::map<Bigram, std::size_t> counts;
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) ++counts[{tokens[i], tokens[i + 1]}];
  return counts;
}

TokenSequence all_tokens(const TokenizedDocument& document) {
  TokenSequence out;
  for (const auto& s : document.sentences) out.insert(out.end(), s.tokens.begin(), s.tokens.end());
  return out;
}

}  // namespace

double rouge2(std::span<const Token> candidate, std::span<const TokenSequence> references) {
  if (references.empty()) throw Error(ErrorCode::kDegenerateReference, "no reference summary");
  const auto cand = bigram_counts(candidate);
  std::size_t matched = 0;
  std::size_t total = 0;
  for (const auto& ref : references) {
    if (ref.size() < 2) throw Error(ErrorCode::kDegenerateReference, "reference has fewer than two tokens");
    for (const auto& [bigram, count] : bigram_counts(ref)) {
      const auto it = cand.find(bigram);
      matched += std::min(count, it == cand.end() ? std::size_t{0} : it->second);
      total += count;
    }
  }
  return static_cast<double>(matched) / static_cast<double>(total);
}

std::string_view method_name(SummaryMethod method) {
  return method == SummaryMethod::kSemantic ? "semantic" : "baseline_overlap";
}

void EvalConfig::validate() const {
  if (runs_per_document == 0) throw Error(ErrorCode::kInvalidArgument, "runs_per_document must be positive");
  if (seeds.size() != runs_per_document) {
    throw Error(ErrorCode::kInvalidArgument, "need exactly one seed per run (" + std::to_string(runs_per_document) +
                                                 "), got " + std::to_string(seeds.size()));
  }
  if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
    throw Error(ErrorCode::kInvalidArgument, "seeds must be pairwise distinct");
  }
  if (ratios.empty()) throw Error(ErrorCode::kInvalidArgument, "no ratios");
  for (double r : ratios) {
    if (!(r > 0.0 && r <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "ratio outside (0, 1]");
  }
  if (methods.empty()) throw Error(ErrorCode::kInvalidArgument, "no methods");
  if (jobs == 0) throw Error(ErrorCode::kInvalidArgument, "jobs must be positive");
  rank.validate();
}

TokenSequence surface_tokens(const TokenizedDocument& document, std::span<const std::size_t> sentences) {
  TokenSequence out;
  for (std::size_t s : sentences) {
    const auto& t = document.sentences.at(s).tokens;
    out.insert(out.end(), t.begin(), t.end());
  }
  return out;
}

DocumentRecord evaluate_document(std::string id, const TokenizedDocument& document, const TokenizedDocument& gold,
                                 const EvalConfig& config, const Embeddings& embeddings) {
  config.validate();
  const std::vector<TokenSequence> references = {all_tokens(gold)};

  DocumentRecord record;
  record.id = std::move(id);
  for (double ratio : config.ratios) {
    for (SummaryMethod method : config.methods) {
      SummaryRequest request;
      request.size = SummarySize::of_ratio(ratio);
      request.method = method;
      request.doc_vector_source = config.doc_vector_source;
      request.similarity_floor = config.similarity_floor;
      request.rank = config.rank;

      MethodRecord m{ratio, method, {}, 0.0, 0.0};
      if (method == SummaryMethod::kBaselineOverlap) {
        const auto summary = summarize(document, request, embeddings);
        const double score = rouge2(surface_tokens(document, summary.selected), references);
        m.run_scores.assign(config.runs_per_document, score);
      } else {
        for (std::size_t run = 0; run < config.runs_per_document; ++run) {
          request.seed = config.seeds[run];
          const auto summary = summarize(document, request, embeddings);
          m.run_scores.push_back(rouge2(surface_tokens(document, summary.selected), references));
        }
      }
      double sum = 0.0;
      for (double s : m.run_scores) sum += s;
      const auto [lo, hi] = std::minmax_element(m.run_scores.begin(), m.run_scores.end());
      m.best = *hi;
      // A rounded mean can drift an ulp outside [min, max]; equal runs keep their score.
      m.average = *lo == *hi ? *hi : std::clamp(sum / static_cast<double>(m.run_scores.size()), *lo, *hi);
      record.records.push_back(std::move(m));
    }
  }
  return record;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

CorpusListing list_corpus(const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  const fs::path articles = root / "News Articles";
  const fs::path summaries = root / "Summaries";
  if (!fs::is_directory(articles)) {
    throw Error(ErrorCode::kIo, "corpus root " + root.string() + " has no 'News Articles' directory");
  }
  CorpusListing listing;
  for (const auto& category : fs::directory_iterator(articles)) {
    if (!category.is_directory()) continue;
    for (const auto& file : fs::directory_iterator(category.path())) {
      if (!file.is_regular_file() || file.path().extension() != ".txt") continue;
      const auto cat = category.path().filename();
      const fs::path gold = summaries / cat / file.path().filename();
      const std::string id = cat.string() + "/" + file.path().stem().string();
      if (fs::is_regular_file(gold)) {
        listing.entries.push_back({id, file.path(), gold});
      } else {
        listing.skipped.push_back({file.path().string(), "missing gold summary"});
      }
    }
  }
  std::sort(listing.entries.begin(), listing.entries.end(),
            [](const CorpusEntry& a, const CorpusEntry& b) { return a.id < b.id; });
  std::sort(listing.skipped.begin(), listing.skipped.end(),
            [](const SkippedFile& a, const SkippedFile& b) { return a.path < b.path; });
  return listing;
}

std::vector<CorpusRecord> aggregate(std::span<const DocumentRecord> documents, const EvalConfig& config) {
  std::vector<CorpusRecord> out;
  std::size_t slot = 0;
  for (double ratio : config.ratios) {
    for (SummaryMethod method : config.methods) {
      CorpusRecord c{ratio, method, 0, 0.0, 0.0};
      for (const auto& d : documents) {
        c.average += d.records.at(slot).average;
        c.best_average += d.records.at(slot).best;
        ++c.documents;
      }
      if (c.documents > 0) {
        c.average /= static_cast<double>(c.documents);
        c.best_average /= static_cast<double>(c.documents);
      }
      out.push_back(c);
      ++slot;
    }
  }
  return out;
}

EvalReport evaluate_corpus(const std::filesystem::path& root, const EvalConfig& config, const Embeddings& embeddings,
                           const LanguageProfile& profile) {
  config.validate();
  auto listing = list_corpus(root);
  const std::size_t n = listing.entries.size();

  std::vector<std::optional<DocumentRecord>> results(n);
  std::vector<std::optional<SkippedFile>> failures(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr fatal;
  std::mutex fatal_mutex;

  const auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      const auto& e = listing.entries[i];
      try {
        const auto doc = segment(read_text_file(e.article), profile);
        const auto gold = segment(read_text_file(e.summary), profile);
        results[i] = evaluate_document(e.id, doc, gold, config, embeddings);
      } catch (const Error& err) {
        if (err.code() == ErrorCode::kEmptyDocument || err.code() == ErrorCode::kDegenerateReference) {
          failures[i] = SkippedFile{e.article.string(), err.what()};
        } else {
          std::lock_guard lock(fatal_mutex);
          if (!fatal) fatal = std::current_exception();
        }
      } catch (...) {
        std::lock_guard lock(fatal_mutex);
        if (!fatal) fatal = std::current_exception();
      }
    }
  };

  const std::size_t jobs = std::clamp<std::size_t>(config.jobs, 1, std::max<std::size_t>(n, 1));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (fatal) std::rethrow_exception(fatal);

  EvalReport report;
  for (std::size_t i = 0; i < n; ++i) {
    if (results[i]) report.documents.push_back(std::move(*results[i]));
    if (failures[i]) listing.skipped.push_back(std::move(*failures[i]));
  }
  report.skipped = std::move(listing.skipped);
  report.corpus = aggregate(report.documents, config);
  return report;
}

void write_report(const EvalReport& report, std::ostream& out) {
  using nlohmann::ordered_json;
  for (const auto& d : report.documents) {
    for (const auto& m : d.records) {
      ordered_json j;
      j["record"] = "document";
      j["id"] = d.id;
      j["ratio"] = m.ratio;
      j["method"] = method_name(m.method);
      j["run_scores"] = m.run_scores;
      j["average"] = m.average;
      j["best"] = m.best;
      out << j.dump() << '\n';
    }
  }
  for (const auto& c : report.corpus) {
    ordered_json j;
    j["record"] = "corpus";
    j["ratio"] = c.ratio;
    j["method"] = method_name(c.method);
    j["documents"] = c.documents;
    j["average"] = c.average;
    j["best_average"] = c.best_average;
    out << j.dump() << '\n';
  }
  for (const auto& s : report.skipped) {
    ordered_json j;
    j["record"] = "skipped";
    j["path"] = s.path;
    j["reason"] = s.reason;
    out << j.dump() << '\n';
  }
}

}  // namespace semrank
