#include "semrank/cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "semrank/error.hpp"
#include "semrank/evaluate.hpp"
#include "semrank/keywords.hpp"
#include "semrank/summarize.hpp"
#include "semrank/text.hpp"
#include "semrank/topics.hpp"
#include "semrank/train.hpp"
#include "semrank/vector_store.hpp"

namespace semrank::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

// Raised after parsing for flag combinations CLI11 cannot express.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string language = "en";
  std::string language_file;
  std::string data_dir;
  std::string format = "plain";
};

struct ModelOptions {
  std::string vectors;
  std::string doc_model;
  std::string doc_vectors;  // empty: inference when a doc model is given, else average
  std::uint64_t seed = 1;
  std::size_t infer_epochs = TrainConfig{}.epochs;
};

const CLI::Validator kUnitInterval(
    [](std::string& value) -> std::string {
      double r = 0.0;
      try {
        std::size_t used = 0;
        r = std::stod(value, &used);
        if (used != value.size()) return "not a number: " + value;
      } catch (const std::exception&) {
        return "not a number: " + value;
      }
      return (r > 0.0 && r <= 1.0) ? std::string() : "ratio must lie in (0, 1], got " + value;
    },
    "(0,1]", "UnitInterval");

void add_common(CLI::App* app, CommonOptions& o) {
  app->add_option("--language", o.language, "Built-in language profile id (en, fa)");
  app->add_option("--language-file", o.language_file, "Language profile file (overrides --language)")
      ->check(CLI::ExistingFile);
  app->add_option("--data-dir", o.data_dir, "Directory holding profiles/ and stopwords/")->check(CLI::ExistingDirectory);
  app->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"plain", "structured"}));
}

void add_models(CLI::App* app, ModelOptions& o) {
  app->add_option("--vectors", o.vectors, "Word vectors in text format (V D header)")->check(CLI::ExistingFile);
  app->add_option("--doc-model", o.doc_model, "Model directory written by train-embeddings")
      ->check(CLI::ExistingDirectory);
  app->add_option("--doc-vectors", o.doc_vectors, "Document vectors: inference or average (default: inference with --doc-model)")
      ->check(CLI::IsMember({"inference", "average"}));
  app->add_option("--seed", o.seed, "Seed for document-vector inference");
  app->add_option("--infer-epochs", o.infer_epochs, "Epochs of document-vector inference")->check(CLI::PositiveNumber);
}

LanguageProfile resolve_profile(const CommonOptions& o) {
  if (!o.language_file.empty()) return load_language_profile(o.language_file);
  return builtin_profile(o.language, o.data_dir.empty() ? default_data_dir() : fs::path(o.data_dir));
}

// Owns whatever stores were requested and exposes them as Embeddings.
class Models {
 public:
  explicit Models(const ModelOptions& o) {
    if (!o.vectors.empty()) words_ = load_word_vectors(o.vectors);
    if (!o.doc_model.empty()) {
      doc_ = load_doc_model(o.doc_model);
      // A model directory also carries its word vectors.
      if (!words_ && fs::exists(fs::path(o.doc_model) / "words.vec")) {
        words_ = load_word_vectors(fs::path(o.doc_model) / "words.vec");
      }
    }
    inference_.epochs = o.infer_epochs;
    if (o.doc_vectors == "inference") {
      if (!doc_) throw UsageError("--doc-vectors inference requires --doc-model");
      source_ = DocVectorSource::kTrainedInference;
    } else if (o.doc_vectors == "average") {
      if (!words_) throw UsageError("--doc-vectors average requires --vectors or a --doc-model with words.vec");
      source_ = DocVectorSource::kAverage;
    } else {
      source_ = doc_ ? DocVectorSource::kTrainedInference : DocVectorSource::kAverage;
    }
  }

  bool any() const { return words_.has_value() || doc_.has_value(); }
  const VectorStore* words() const { return words_ ? &*words_ : nullptr; }
  DocVectorSource source() const { return source_; }
  Embeddings view() const { return {words(), doc_ ? &*doc_ : nullptr, inference_}; }

 private:
  std::optional<VectorStore> words_;
  std::optional<DocModel> doc_;
  TrainConfig inference_;
  DocVectorSource source_ = DocVectorSource::kAverage;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  return read_text_file(path);
}

// Files as given, directories expanded to their *.txt files (recursive,
// sorted). Each entry carries a stable name used for document ids.
std::vector<std::pair<fs::path, std::string>> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<std::pair<fs::path, std::string>> out;
  for (const auto& in : inputs) {
    const fs::path p(in);
    if (fs::is_directory(p)) {
      std::vector<fs::path> files;
      for (const auto& e : fs::recursive_directory_iterator(p)) {
        if (e.is_regular_file() && e.path().extension() == ".txt") files.push_back(e.path());
      }
      std::sort(files.begin(), files.end());
      for (const auto& f : files) out.emplace_back(f, fs::relative(f, p).generic_string());
    } else {
      out.emplace_back(p, p.filename().string());
    }
  }
  return out;
}

std::vector<std::uint64_t> parse_seeds(const std::string& spec) {
  const auto number = [&](std::string_view s) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw UsageError("invalid seed list '" + spec + "' (use '1..10' or '1,2,3')");
    }
    return v;
  };
  std::vector<std::uint64_t> seeds;
  if (const auto dots = spec.find(".."); dots != std::string::npos) {
    const auto lo = number(std::string_view(spec).substr(0, dots));
    const auto hi = number(std::string_view(spec).substr(dots + 2));
    if (hi < lo || hi - lo > 1000000) throw UsageError("invalid seed range '" + spec + "'");
    for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
  }
  std::string_view rest(spec);
  while (true) {
    const auto comma = rest.find(',');
    seeds.push_back(number(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return seeds;
}

SummaryMethod resolve_method(const std::string& method, const Models& models) {
  if (method == "semantic") {
    if (!models.any()) throw UsageError("the semantic method needs --vectors or --doc-model");
    return SummaryMethod::kSemantic;
  }
  if (method == "baseline") return SummaryMethod::kBaselineOverlap;
  return models.any() ? SummaryMethod::kSemantic : SummaryMethod::kBaselineOverlap;
}

void print_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graph-based semantic summarization, keyword extraction and topic clustering", "semrank"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_config("--config", "", "Defaults file (INI/TOML); also read from $SEMRANK_CONFIG")
      ->envname("SEMRANK_CONFIG");

  CommonOptions common;
  ModelOptions models_opt;

  // summarize
  auto* sum_cmd = app.add_subcommand("summarize", "Extract the top-ranked sentences of a document");
  std::string sum_input;
  double ratio = 0.2;
  std::size_t words = 0;
  std::string sum_method = "auto";
  double floor = 0.0;
  RankOptions rank;
  std::string calibration_path;
  bool by_topics = false;
  std::string representative = "last";
  sum_cmd->add_option("input", sum_input, "Text file, or - for stdin")->required();
  auto* ratio_opt = sum_cmd->add_option("--ratio", ratio, "Fraction of sentences to keep")->check(kUnitInterval);
  auto* words_opt = sum_cmd->add_option("--words", words, "Word budget instead of a ratio")->check(CLI::PositiveNumber);
  ratio_opt->excludes(words_opt);
  sum_cmd->add_option("--method", sum_method, "semantic, baseline, or auto (semantic when vectors are given)")
      ->check(CLI::IsMember({"auto", "semantic", "baseline"}));
  sum_cmd->add_option("--floor", floor, "Drop sentence edges with weight <= floor")->check(CLI::NonNegativeNumber);
  sum_cmd->add_option("--damping", rank.damping, "Damping factor")->check(CLI::Range(0.0, 1.0));
  sum_cmd->add_option("--tolerance", rank.tolerance, "Convergence tolerance")->check(CLI::PositiveNumber);
  sum_cmd->add_option("--max-iter", rank.max_iterations, "Iteration cap")->check(CLI::PositiveNumber);
  sum_cmd->add_flag("--by-topics", by_topics, "Cluster paragraphs first and summarize each cluster");
  sum_cmd->add_option("--calibration", calibration_path, "Calibration file for --by-topics")->check(CLI::ExistingFile);
  sum_cmd->add_option("--representative", representative, "Cluster comparison target")
      ->check(CLI::IsMember({"last", "mean"}));
  add_common(sum_cmd, common);
  add_models(sum_cmd, models_opt);

  // keywords
  auto* kw_cmd = app.add_subcommand("keywords", "Extract keyword n-grams");
  std::string kw_input;
  std::string kw_method = "bm25";
  KeywordRequest kw;
  kw_cmd->add_option("input", kw_input, "Text file, or - for stdin")->required();
  kw_cmd->add_option("--method", kw_method, "bm25 or semantic")->check(CLI::IsMember({"bm25", "semantic"}));
  kw_cmd->add_option("--top-k", kw.top_k, "Number of important words")->check(CLI::PositiveNumber);
  kw_cmd->add_option("--max-n", kw.max_n, "Longest n-gram")->check(CLI::PositiveNumber);
  kw_cmd->add_option("--window", kw.window, "Co-occurrence window")->check(CLI::PositiveNumber);
  kw_cmd->add_option("--min-count", kw.min_ngram_count, "An n-gram must occur more often than this")
      ->check(CLI::PositiveNumber);
  kw_cmd->add_option("--k1", kw.k1, "BM25 k1")->check(CLI::NonNegativeNumber);
  kw_cmd->add_option("--b", kw.b, "BM25 b")->check(CLI::Range(0.0, 1.0));
  add_common(kw_cmd, common);
  add_models(kw_cmd, models_opt);

  // cluster
  auto* cl_cmd = app.add_subcommand("cluster", "Group consecutive paragraphs into topics");
  std::string cl_input;
  cl_cmd->add_option("input", cl_input, "Text file, or - for stdin")->required();
  cl_cmd->add_option("--calibration", calibration_path, "Calibration file written by calibrate")
      ->required()
      ->check(CLI::ExistingFile);
  cl_cmd->add_option("--representative", representative, "Cluster comparison target")
      ->check(CLI::IsMember({"last", "mean"}));
  add_common(cl_cmd, common);
  add_models(cl_cmd, models_opt);

  // train-embeddings
  auto* tr_cmd = app.add_subcommand("train-embeddings", "Train word and paragraph vectors");
  std::vector<std::string> tr_inputs;
  std::string tr_output;
  TrainConfig tc;
  std::string tr_mode = "docs";
  tr_cmd->add_option("inputs", tr_inputs, "Text files or directories of *.txt")->required()->check(CLI::ExistingPath);
  tr_cmd->add_option("--output", tr_output, "Model directory to write")->required();
  tr_cmd->add_option("--dim", tc.dimension, "Vector dimension")->check(CLI::Range(2, 100000));
  tr_cmd->add_option("--window", tc.window, "Skip-gram window")->check(CLI::PositiveNumber);
  tr_cmd->add_option("--negative", tc.negative_samples, "Negative samples per pair")->check(CLI::PositiveNumber);
  tr_cmd->add_option("--epochs", tc.epochs, "Training epochs")->check(CLI::PositiveNumber);
  tr_cmd->add_option("--alpha", tc.initial_learning_rate, "Initial learning rate")->check(CLI::PositiveNumber);
  tr_cmd->add_option("--min-count", tc.min_count, "Minimum token frequency")->check(CLI::PositiveNumber);
  tr_cmd->add_option("--seed", tc.seed, "Random seed");
  tr_cmd->add_option("--mode", tr_mode, "docs (words + paragraph vectors) or words")
      ->check(CLI::IsMember({"docs", "words"}));
  add_common(tr_cmd, common);

  // calibrate
  auto* ca_cmd = app.add_subcommand("calibrate", "Measure consecutive-paragraph similarity statistics");
  std::vector<std::string> ca_inputs;
  std::string ca_output;
  std::string metric = "similarity";
  std::string corpus_id;
  ca_cmd->add_option("inputs", ca_inputs, "Text files or directories of *.txt")->required()->check(CLI::ExistingPath);
  ca_cmd->add_option("--output", ca_output, "Calibration file to write")->required();
  ca_cmd->add_option("--metric", metric, "similarity or distance (1 - similarity)")
      ->check(CLI::IsMember({"similarity", "distance"}));
  ca_cmd->add_option("--corpus-id", corpus_id, "Label stored with the calibration");
  add_common(ca_cmd, common);
  add_models(ca_cmd, models_opt);

  // evaluate
  auto* ev_cmd = app.add_subcommand("evaluate", "ROUGE-2 over a corpus with gold summaries");
  std::string corpus_dir;
  std::string seeds_spec;
  EvalConfig ec;
  std::vector<std::string> methods = {"semantic", "baseline"};
  std::string ev_output;
  ev_cmd->add_option("--corpus", corpus_dir, "Root with 'News Articles/' and 'Summaries/'")
      ->required()
      ->check(CLI::ExistingDirectory);
  ev_cmd->add_option("--runs", ec.runs_per_document, "Runs per document")->check(CLI::PositiveNumber);
  ev_cmd->add_option("--seeds", seeds_spec, "Seeds, '1..10' or '1,2,3' (default 1..runs)");
  ev_cmd->add_option("--ratios", ec.ratios, "Summary ratios")->delimiter(',')->check(kUnitInterval);
  ev_cmd->add_option("--methods", methods, "Methods to score")
      ->delimiter(',')
      ->check(CLI::IsMember({"semantic", "baseline"}));
  ev_cmd->add_option("--floor", ec.similarity_floor, "Drop sentence edges with weight <= floor")
      ->check(CLI::NonNegativeNumber);
  ev_cmd->add_option("--jobs", ec.jobs, "Worker threads over documents")->check(CLI::PositiveNumber);
  ev_cmd->add_option("--output", ev_output, "Report file (default: stdout)");
  add_common(ev_cmd, common);
  add_models(ev_cmd, models_opt);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    const LanguageProfile profile = resolve_profile(common);
    const bool structured = common.format == "structured";

    if (*sum_cmd) {
      const Models models(models_opt);
      SummaryRequest request;
      request.size = *words_opt ? SummarySize::of_words(words) : SummarySize::of_ratio(ratio);
      request.method = resolve_method(sum_method, models);
      request.doc_vector_source = models.source();
      request.similarity_floor = floor;
      request.rank = rank;
      request.seed = models_opt.seed;
      if (by_topics && calibration_path.empty()) throw UsageError("--by-topics requires --calibration");
      if (by_topics && !models.any()) throw UsageError("--by-topics needs --vectors or --doc-model");

      const auto doc = segment(read_input(sum_input), profile);
      const auto emit = [&](std::size_t sentence, double score, std::optional<std::size_t> topic) {
        if (structured) {
          ordered_json j;
          if (topic) j["cluster"] = *topic;
          j["index"] = sentence;
          j["score"] = score;
          j["text"] = doc.sentence_text(sentence);
          out << j.dump() << '\n';
        } else {
          out << doc.sentence_text(sentence) << '\n';
        }
      };
      if (by_topics) {
        const auto topics = summarize_by_topics(
            doc, load_calibration(calibration_path), request, models.view(),
            representative == "mean" ? ClusterRepresentative::kRunningMean : ClusterRepresentative::kLastParagraph);
        for (std::size_t t = 0; t < topics.size(); ++t) {
          print_warnings(topics[t].summary.warnings, err);
          for (std::size_t k = 0; k < topics[t].sentences.size(); ++k) {
            emit(topics[t].sentences[k], topics[t].summary.scores.scores[topics[t].summary.selected[k]], t);
          }
        }
      } else {
        const auto summary = summarize(doc, request, models.view());
        print_warnings(summary.warnings, err);
        for (std::size_t s : summary.selected) emit(s, summary.scores.scores[s], std::nullopt);
      }
      return kExitOk;
    }

    if (*kw_cmd) {
      const Models models(models_opt);
      kw.method = kw_method == "semantic" ? KeywordMethod::kSemanticGraph : KeywordMethod::kBm25;
      if (kw.method == KeywordMethod::kSemanticGraph && models.words() == nullptr) {
        throw UsageError("--method semantic requires --vectors");
      }
      const auto doc = segment(read_input(kw_input), profile);
      const auto result = extract_keywords(doc, kw, models.words());
      for (std::size_t r = 0; r < result.keywords.size(); ++r) {
        const auto& k = result.keywords[r];
        std::string phrase;
        for (const auto& t : k.ngram) phrase += (phrase.empty() ? "" : " ") + t;
        if (structured) {
          ordered_json j;
          j["rank"] = r + 1;
          j["ngram"] = phrase;
          j["score"] = k.score;
          j["source"] = k.source_word;
          j["method"] = result.method_used;
          out << j.dump() << '\n';
        } else {
          out << phrase << '\n';
        }
      }
      return kExitOk;
    }

    if (*cl_cmd) {
      const Models models(models_opt);
      if (!models.any()) throw UsageError("cluster needs --vectors or --doc-model");
      const auto doc = segment(read_input(cl_input), profile);
      const DocEmbedder embedder(models.view(), models.source(), models_opt.seed);
      const auto clusters =
          cluster(doc, load_calibration(calibration_path), embedder,
                  representative == "mean" ? ClusterRepresentative::kRunningMean : ClusterRepresentative::kLastParagraph);
      print_warnings(clusters.warnings, err);
      for (std::size_t c = 0; c < clusters.clusters.size(); ++c) {
        const auto& members = clusters.clusters[c];
        if (structured) {
          ordered_json j;
          j["cluster"] = c;
          j["paragraphs"] = members;
          out << j.dump() << '\n';
        } else {
          out << "cluster " << c << ": paragraphs " << members.front() << "-" << members.back() << '\n';
        }
      }
      return kExitOk;
    }

    if (*tr_cmd) {
      tc.mode = tr_mode == "words" ? TrainMode::kWordsOnly : TrainMode::kDocsAndWords;
      std::vector<TrainingDocument> docs;
      for (const auto& [path, name] : expand_inputs(tr_inputs)) {
        const auto text = read_text_file(path);
        try {
          auto paragraphs = paragraph_documents(segment(text, profile), name);
          docs.insert(docs.end(), std::make_move_iterator(paragraphs.begin()),
                      std::make_move_iterator(paragraphs.end()));
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kEmptyDocument) throw;
          err << "warning: skipping empty file " << path.string() << '\n';
        }
      }
      const auto corpus = Corpus::build(std::move(docs), tc.min_count);
      const auto model = train(corpus, tc);
      save_model(model, tr_output);
      if (structured) {
        ordered_json j;
        j["vocabulary"] = model.words.size();
        j["documents"] = model.docs ? model.docs->size() : 0;
        j["epoch_loss"] = model.epoch_loss;
        out << j.dump() << '\n';
      } else {
        out << "vocabulary " << model.words.size() << ", documents " << (model.docs ? model.docs->size() : 0)
            << ", final loss " << model.epoch_loss.back() << '\n';
      }
      return kExitOk;
    }

    if (*ca_cmd) {
      const Models models(models_opt);
      if (!models.any()) throw UsageError("calibrate needs --vectors or --doc-model");
      std::vector<TokenizedDocument> docs;
      for (const auto& [path, name] : expand_inputs(ca_inputs)) {
        try {
          docs.push_back(segment(read_text_file(path), profile));
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kEmptyDocument) throw;
        }
      }
      const DocEmbedder embedder(models.view(), models.source(), models_opt.seed);
      const auto calibration =
          calibrate(docs, embedder,
                    metric == "distance" ? ClusterMetric::kOneMinusSimilarity : ClusterMetric::kSimilarity, corpus_id);
      save_calibration(calibration, ca_output);
      out << "mean " << calibration.mean << ", std " << calibration.std << ", pairs " << calibration.sample_count
          << '\n';
      return kExitOk;
    }

    if (*ev_cmd) {
      const Models models(models_opt);
      ec.seeds = seeds_spec.empty() ? parse_seeds("1.." + std::to_string(ec.runs_per_document))
                                    : parse_seeds(seeds_spec);
      if (ev_cmd->count("--runs") == 0) ec.runs_per_document = ec.seeds.size();
      ec.methods.clear();
      for (const auto& m : methods) {
        ec.methods.push_back(resolve_method(m, models));
      }
      ec.doc_vector_source = models.source();
      const auto report = evaluate_corpus(corpus_dir, ec, models.view(), profile);
      if (ev_output.empty()) {
        write_report(report, out);
      } else {
        std::ofstream file(ev_output);
        if (!file) throw Error(ErrorCode::kIo, "cannot write " + ev_output);
        write_report(report, file);
      }
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidArgument) {
      err << "error: " << e.what() << '\n';
      return kExitUsage;
    }
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace semrank::cli
