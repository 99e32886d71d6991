// Copyright (c) 2026 The sttkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

#include "report_json.h"
#include "stt/alphabet.h"
#include "stt/arpa.h"
#include "stt/ctc_decoder.h"
#include "stt/error.h"
#include "stt/eval.h"
#include "stt/kneser_ney.h"
#include "stt/log.h"
#include "stt/logits.h"
#include "stt/manifest.h"
#include "stt/ngram_counts.h"
#include "stt/ngram_model.h"
#include "stt/rtf.h"
#include "stt/scorer.h"
#include "stt/text_norm.h"
#include "stt/tune.h"
#include "stt/utf8.h"
#include "stt/version.h"

namespace stt::cli {
namespace {

/// Subcommand handlers run after parsing completes, so every bound
/// variable (including root-level globals) already carries its value.
class Dispatcher {
 public:
  void On(CLI::App* cmd, std::function<void()> handler) {
    handlers_.emplace_back(cmd, std::move(handler));
  }

  void RunParsed() const {
    for (const auto& [cmd, handler] : handlers_) {
      if (cmd->parsed()) {
        handler();
        return;
      }
    }
  }

 private:
  std::vector<std::pair<CLI::App*, std::function<void()>>> handlers_;
};

struct Globals {
  std::string alphabet_path;
  std::string rules_path;
  int workers = static_cast<int>(std::thread::hardware_concurrency());
  uint64_t seed = 0;
  std::string log_level = "info";
  bool json = false;
  CLI::Option* workers_opt = nullptr;

  Alphabet LoadAlphabet() const {
    if (alphabet_path.empty()) {
      throw CLI::RequiredError("--alphabet");
    }
    return Alphabet::FromFile(alphabet_path);
  }

  NormalizationRules LoadRules() const {
    return rules_path.empty() ? NormalizationRules::Defaults()
                              : NormalizationRules::FromFile(rules_path);
  }
};

std::string ReadAll(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string ReadTextInput(const std::string& path) {
  if (path.empty()) return ReadAll(std::cin);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open input: " + path);
  return ReadAll(in);
}

void WriteTextOutput(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write output: " + path);
  out << text;
  if (!out) throw IoError("failed writing output: " + path);
}

std::string Dirname(const std::string& path) {
  size_t slash = path.find_last_of('/');
  return slash == std::string::npos ? std::string() : path.substr(0, slash);
}

std::pair<double, double> ParseRange(const std::string& text,
                                     const std::string& flag) {
  size_t colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      double v = std::stod(text);
      return {v, v};
    }
    return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw InvalidArgumentError(flag + " expects LO:HI, got '" + text + "'");
  }
}

void WriteJsonFile(const std::string& path, const Json& json) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write report: " + path);
  out << json.dump(2) << "\n";
  if (!out) throw IoError("failed writing report: " + path);
}

// ---------------------------------------------------------------------------
// prep

void RegisterPrep(CLI::App& app, Globals& globals, Dispatcher& dispatch) {
  auto* prep = app.add_subcommand("prep", "Corpus preparation");
  prep->require_subcommand(1);
  prep->fallthrough();

  {
    auto opts = std::make_shared<std::pair<std::string, std::string>>();
    auto* cmd = prep->add_subcommand("normalize",
                                     "Normalize text to alphabet-pure form");
    cmd->fallthrough();
    cmd->add_option("--text", opts->first, "Input file (default: stdin)");
    cmd->add_option("--out", opts->second, "Output file (default: stdout)");
    dispatch.On(cmd, [opts, &globals] {
      Alphabet alphabet = globals.LoadAlphabet();
      NormalizationRules rules = globals.LoadRules();
      rules.Validate(alphabet);
      std::istringstream in(ReadTextInput(opts->first));
      std::string out;
      std::string line;
      while (std::getline(in, line)) {
        out += NormalizeText(line, rules, alphabet);
        out += '\n';
      }
      WriteTextOutput(opts->second, out);
    });
  }
  {
    auto opts = std::make_shared<std::pair<std::string, std::string>>();
    auto* cmd =
        prep->add_subcommand("segment", "Split raw text into sentences");
    cmd->fallthrough();
    cmd->add_option("--text", opts->first, "Input file (default: stdin)");
    cmd->add_option("--out", opts->second, "Output file (default: stdout)");
    dispatch.On(cmd, [opts] {
      std::string input = ReadTextInput(opts->first);
      std::string out;
      for (const auto& sentence : SegmentSentences(input)) {
        out += sentence;
        out += '\n';
      }
      WriteTextOutput(opts->second, out);
    });
  }
  {
    struct ValidateOpts {
      std::string manifest;
      std::string out;
    };
    auto opts = std::make_shared<ValidateOpts>();
    auto* cmd = prep->add_subcommand(
        "validate", "Check manifest transcripts against the alphabet");
    cmd->fallthrough();
    cmd->add_option("--manifest", opts->manifest, "Manifest CSV")->required();
    cmd->add_option("--out", opts->out, "Report file (default: stdout)");
    dispatch.On(cmd, [opts, &globals] {
      Alphabet alphabet = globals.LoadAlphabet();
      NormalizationRules rules = globals.LoadRules();
      CorpusManifest manifest = CorpusManifest::ReadFile(opts->manifest);
      ValidationReport report = ValidateManifest(manifest, alphabet, rules);
      if (globals.json) {
        WriteTextOutput(opts->out, ToJson(report).dump(2) + "\n");
        return;
      }
      std::string out = "clean: " + std::to_string(report.clean) +
                        "  repaired: " + std::to_string(report.repaired) +
                        "  failed: " + std::to_string(report.failed) + "\n";
      for (const auto& row : report.rows) {
        if (row.status == RowStatus::kRepaired) {
          out += "repaired row " + std::to_string(row.row_index) + ": '" +
                 row.before + "' -> '" + row.after + "'\n";
        } else {
          out += "failed row " + std::to_string(row.row_index) + ": '" +
                 row.before + "':";
          for (const auto& [pos, cp] : row.offenders) {
            out += " " + CodepointName(cp) + "@" + std::to_string(pos);
          }
          out += "\n";
        }
      }
      WriteTextOutput(opts->out, out);
    });
  }
  {
    struct ConvertOpts {
      std::string manifest;
      std::string out;
      std::string reject;
      ConvertColumns columns;
    };
    auto opts = std::make_shared<ConvertOpts>();
    auto* cmd = prep->add_subcommand(
        "convert", "Convert an external listing into a normalized manifest");
    cmd->fallthrough();
    cmd->add_option("--manifest", opts->manifest, "Source listing CSV")
        ->required();
    cmd->add_option("--out", opts->out, "Output manifest")->required();
    cmd->add_option("--reject", opts->reject, "Reject file for failed rows")
        ->required();
    cmd->add_option("--transcript-col", opts->columns.transcript,
                    "Transcript column name");
    cmd->add_option("--audio-col", opts->columns.audio, "Audio column name");
    cmd->add_option("--size-col", opts->columns.size, "Size column name");
    dispatch.On(cmd, [opts, &globals] {
      Alphabet alphabet = globals.LoadAlphabet();
      NormalizationRules rules = globals.LoadRules();
      std::ifstream source(opts->manifest, std::ios::binary);
      if (!source) throw IoError("cannot open manifest: " + opts->manifest);
      ConvertResult result =
          ConvertManifest(source, rules, alphabet, opts->columns);
      result.manifest.WriteFile(opts->out);
      std::ofstream reject(opts->reject, std::ios::binary);
      if (!reject) throw IoError("cannot write reject file: " + opts->reject);
      WriteRejects(reject, result.rejected);
      std::fprintf(stderr, "info\tconverted %zu rows, rejected %zu\n",
                   result.manifest.rows.size(), result.rejected.size());
    });
  }
}

// ---------------------------------------------------------------------------
// lm

void RegisterLm(CLI::App& app, Globals& globals, Dispatcher& dispatch) {
  auto* lm = app.add_subcommand("lm", "N-gram language models");
  lm->require_subcommand(1);
  lm->fallthrough();

  {
    struct CountOpts {
      int order = 3;
      std::string text;
      std::string out;
    };
    auto opts = std::make_shared<CountOpts>();
    auto* cmd = lm->add_subcommand("count", "Count n-grams from text");
    cmd->fallthrough();
    cmd->add_option("--order", opts->order, "Model order")
        ->check(CLI::Range(1, 6));
    cmd->add_option("--text", opts->text, "Training text")->required();
    cmd->add_option("--out", opts->out, "Output counts file")->required();
    dispatch.On(cmd, [opts] {
      std::ifstream in(opts->text, std::ios::binary);
      if (!in) throw IoError("cannot open text: " + opts->text);
      NGramCounts counts = CountNGrams(in, opts->order);
      std::ofstream out(opts->out, std::ios::binary);
      if (!out) throw IoError("cannot write counts: " + opts->out);
      counts.WriteBinary(out);
      std::fprintf(stderr, "info\tcounted %llu tokens over %llu lines\n",
                   static_cast<unsigned long long>(counts.total_tokens()),
                   static_cast<unsigned long long>(counts.line_count()));
    });
  }
  {
    struct TrainOpts {
      int order = 3;
      std::string text;
      std::string counts;
      std::string arpa;
      std::vector<uint64_t> prune;
      double discount_fallback = 0.5;
    };
    auto opts = std::make_shared<TrainOpts>();
    auto* cmd = lm->add_subcommand(
        "train", "Estimate a modified Kneser-Ney model and write ARPA");
    cmd->fallthrough();
    cmd->add_option("--order", opts->order, "Model order")
        ->check(CLI::Range(1, 6));
    auto* text_opt = cmd->add_option("--text", opts->text, "Training text");
    cmd->add_option("--counts", opts->counts, "Counts file from 'lm count'")
        ->excludes(text_opt);
    cmd->add_option("--arpa", opts->arpa, "Output ARPA file")->required();
    cmd->add_option("--prune", opts->prune,
                    "Per-order count thresholds (0 = keep all)");
    cmd->add_option("--discount-fallback", opts->discount_fallback,
                    "Absolute discount used when closed-form discounts fail");
    dispatch.On(cmd, [opts] {
      std::optional<NGramCounts> counts;
      if (!opts->counts.empty()) {
        std::ifstream in(opts->counts, std::ios::binary);
        if (!in) throw IoError("cannot open counts: " + opts->counts);
        counts = NGramCounts::ReadBinary(in);
      } else {
        if (opts->text.empty()) throw CLI::RequiredError("--text or --counts");
        std::ifstream in(opts->text, std::ios::binary);
        if (!in) throw IoError("cannot open text: " + opts->text);
        counts = CountNGrams(in, opts->order);
      }
      NGramModel model =
          EstimateKneserNey(*counts, opts->discount_fallback, opts->prune);
      WriteArpaFile(model, opts->arpa);
      std::string sizes;
      for (int k = 1; k <= model.order(); ++k) {
        if (k > 1) sizes += "/";
        sizes += std::to_string(model.EntryCount(k));
      }
      std::fprintf(stderr, "info\ttrained order-%d model, entries %s\n",
                   model.order(), sizes.c_str());
      for (int k : model.metadata().fallback_orders) {
        std::fprintf(stderr,
                     "warn\tclosed-form discounts degenerate at order %d; "
                     "using absolute discount %.3f\n",
                     k, opts->discount_fallback);
      }
    });
  }
  {
    struct ScoreOpts {
      std::string arpa;
      std::string text;
    };
    auto opts = std::make_shared<ScoreOpts>();
    auto* cmd = lm->add_subcommand(
        "score", "Score text: per-line log10 and corpus perplexity");
    cmd->fallthrough();
    cmd->add_option("--arpa", opts->arpa, "ARPA model")->required();
    cmd->add_option("--text", opts->text, "Evaluation text")->required();
    dispatch.On(cmd, [opts, &globals] {
      NGramModel model = ReadArpaFile(opts->arpa);
      std::ifstream in(opts->text, std::ios::binary);
      if (!in) throw IoError("cannot open text: " + opts->text);
      Json lines = Json::array();
      double total = 0.0;
      uint64_t events = 0;
      std::string line;
      while (std::getline(in, line)) {
        auto tokens = SplitTokens(line);
        if (tokens.empty()) continue;
        double log10 = model.ScoreSentence(tokens);
        total += log10;
        events += tokens.size() + 1;
        if (globals.json) {
          lines.push_back({{"log10", log10}, {"text", line}});
        } else {
          std::printf("%.6f\t%s\n", log10, line.c_str());
        }
      }
      if (events == 0) throw EmptyCorpusError("no scored event");
      double perplexity =
          std::pow(10.0, -total / static_cast<double>(events));
      if (globals.json) {
        Json json{{"lines", std::move(lines)},
                  {"total_log10", total},
                  {"events", events},
                  {"perplexity", perplexity}};
        std::cout << json.dump(2) << "\n";
      } else {
        std::printf("perplexity\t%.6f\t(%llu events)\n", perplexity,
                    static_cast<unsigned long long>(events));
      }
    });
  }
}

// ---------------------------------------------------------------------------
// scorer

void RegisterScorer(CLI::App& app, Globals& globals, Dispatcher& dispatch) {
  auto* scorer = app.add_subcommand("scorer", "Scorer packaging");
  scorer->require_subcommand(1);
  scorer->fallthrough();

  {
    struct BuildOpts {
      std::string arpa;
      double alpha = 0.0;
      double beta = 0.0;
      std::string out;
    };
    auto opts = std::make_shared<BuildOpts>();
    auto* cmd = scorer->add_subcommand(
        "build", "Package an ARPA model with fusion weights");
    cmd->fallthrough();
    cmd->add_option("--arpa", opts->arpa, "ARPA model")->required();
    cmd->add_option("--alpha", opts->alpha, "Language model weight")
        ->required();
    cmd->add_option("--beta", opts->beta, "Word insertion bonus")->required();
    cmd->add_option("--out", opts->out, "Output scorer file")->required();
    dispatch.On(cmd, [opts, &globals] {
      Alphabet alphabet = globals.LoadAlphabet();
      NGramModel model = ReadArpaFile(opts->arpa);
      ScorerSummary summary =
          BuildScorer(model, opts->alpha, opts->beta, alphabet, opts->out);
      std::string sizes;
      for (size_t k = 0; k < summary.entry_counts.size(); ++k) {
        if (k) sizes += "/";
        sizes += std::to_string(summary.entry_counts[k]);
      }
      if (globals.json) {
        Json json{{"entry_counts", summary.entry_counts},
                  {"vocabulary_size", summary.vocabulary_size},
                  {"alpha", summary.alpha},
                  {"beta", summary.beta},
                  {"file_bytes", summary.file_bytes}};
        std::cout << json.dump(2) << "\n";
      } else {
        std::printf("entries %s  vocabulary %u  alpha %.17g  beta %.17g  "
                    "bytes %llu\n",
                    sizes.c_str(), summary.vocabulary_size, summary.alpha,
                    summary.beta,
                    static_cast<unsigned long long>(summary.file_bytes));
      }
    });
  }
  {
    auto path = std::make_shared<std::string>();
    auto* cmd =
        scorer->add_subcommand("inspect", "Print scorer header and counts");
    cmd->fallthrough();
    cmd->add_option("scorer", *path, "Scorer file")->required();
    dispatch.On(cmd, [path, &globals] {
      Scorer scorer = LoadScorer(*path);
      Json json{{"alpha", scorer.default_alpha},
                {"beta", scorer.default_beta},
                {"alphabet_fingerprint", scorer.alphabet_fingerprint},
                {"order", scorer.model.order()},
                {"vocabulary_size", scorer.model.vocab().size()},
                {"load_seconds", scorer.load_seconds}};
      Json counts = Json::array();
      for (int k = 1; k <= scorer.model.order(); ++k) {
        counts.push_back(scorer.model.EntryCount(k));
      }
      json["entry_counts"] = std::move(counts);
      if (globals.json) {
        std::cout << json.dump(2) << "\n";
      } else {
        std::printf("order %d  alpha %.17g  beta %.17g\n",
                    scorer.model.order(), scorer.default_alpha,
                    scorer.default_beta);
        std::printf("vocabulary %u  fingerprint %016llx  load %.4fs\n",
                    scorer.model.vocab().size(),
                    static_cast<unsigned long long>(
                        scorer.alphabet_fingerprint),
                    scorer.load_seconds);
        for (int k = 1; k <= scorer.model.order(); ++k) {
          std::printf("%d-grams: %llu\n", k,
                      static_cast<unsigned long long>(
                          scorer.model.EntryCount(k)));
        }
      }
    });
  }
}

// ---------------------------------------------------------------------------
// decode / synth

struct DecodeOpts {
  std::string logits;
  std::string scorer;
  int beam = 256;
  std::optional<double> alpha;
  std::optional<double> beta;
  bool stream = false;
  int chunk = 16;
  bool no_prune = false;
  bool forbid_oov = false;
  bool greedy = false;
  int top = 1;
};

void RegisterDecode(CLI::App& app, Globals& globals, Dispatcher& dispatch) {
  auto opts = std::make_shared<DecodeOpts>();
  auto* cmd = app.add_subcommand("decode", "Decode a logit matrix to text");
  cmd->fallthrough();
  cmd->add_option("--logits", opts->logits, "Logit matrix file")->required();
  cmd->add_option("--scorer", opts->scorer, "Scorer for shallow fusion");
  cmd->add_option("--beam", opts->beam, "Beam width")->check(CLI::Range(1, 1 << 20));
  cmd->add_option("--alpha", [opts](const CLI::results_t& r) {
    try { opts->alpha = std::stod(r[0]); } catch (...) { return false; }
    return true; }, "Fusion weight override");
  cmd->add_option("--beta", [opts](const CLI::results_t& r) {
    try { opts->beta = std::stod(r[0]); } catch (...) { return false; }
    return true; }, "Word bonus override");
  cmd->add_flag("--stream", opts->stream, "Feed frames in chunks");
  cmd->add_option("--chunk", opts->chunk, "Chunk size in frames")
      ->check(CLI::Range(1, 1 << 20));
  cmd->add_flag("--no-prune", opts->no_prune,
                "Disable per-frame candidate pruning");
  cmd->add_flag("--forbid-oov", opts->forbid_oov,
                "Prune word completions outside the scorer vocabulary");
  cmd->add_flag("--greedy", opts->greedy, "Greedy best-path decode");
  cmd->add_option("--top", opts->top, "Hypotheses to print")
      ->check(CLI::Range(1, 1024));
  dispatch.On(cmd, [opts, &globals] {
    Alphabet alphabet = globals.LoadAlphabet();
    LogitMatrix logits = LogitMatrix::ReadFile(opts->logits);
    if (opts->greedy) {
      std::cout << GreedyDecode(logits, alphabet) << "\n";
      return;
    }
    std::optional<Scorer> scorer;
    if (!opts->scorer.empty()) scorer = LoadScorer(opts->scorer);
    DecoderConfig config;
    config.beam_width = opts->beam;
    config.alpha = opts->alpha;
    config.beta = opts->beta;
    config.prune_candidates = !opts->no_prune;
    config.forbid_oov = opts->forbid_oov;
    const Scorer* scorer_ptr = scorer ? &*scorer : nullptr;

    std::vector<DecodeResult> results;
    Json partials = Json::array();
    if (opts->stream) {
      DecodeStream stream(alphabet, scorer_ptr, config);
      for (uint32_t start = 0; start < logits.frames();
           start += static_cast<uint32_t>(opts->chunk)) {
        uint32_t n = std::min<uint32_t>(opts->chunk, logits.frames() - start);
        LogitMatrix chunk(n, logits.classes(),
                          logits.frame_duration_seconds());
        for (uint32_t t = 0; t < n; ++t) {
          std::copy(logits.Row(start + t), logits.Row(start + t) + logits.classes(),
                    chunk.Row(t));
        }
        stream.Feed(chunk);
        std::string partial = stream.IntermediateText();
        if (globals.json) {
          partials.push_back(partial);
        } else {
          std::fprintf(stderr, "partial\t%s\n", partial.c_str());
        }
      }
      results = stream.Finish();
    } else {
      results = BeamDecode(logits, alphabet, scorer_ptr, config);
    }

    if (globals.json) {
      Json out;
      if (opts->stream) out["partials"] = std::move(partials);
      Json items = Json::array();
      int shown = 0;
      for (const auto& result : results) {
        if (shown++ >= opts->top) break;
        items.push_back({{"text", result.text},
                         {"score", result.score},
                         {"ctc_log_prob", result.ctc_log_prob},
                         {"lm_log10", result.lm_log10},
                         {"word_count", result.word_count}});
      }
      out["results"] = std::move(items);
      std::cout << out.dump(2) << "\n";
    } else if (opts->top == 1) {
      std::cout << (results.empty() ? "" : results.front().text) << "\n";
    } else {
      int shown = 0;
      for (const auto& result : results) {
        if (shown++ >= opts->top) break;
        std::printf("%.9f\t%s\n", result.score, result.text.c_str());
      }
    }
  });
}

void RegisterSynth(CLI::App& app, Globals& globals, Dispatcher& dispatch) {
  struct SynthOpts {
    std::string text;
    std::string out;
    double noise = 0.0;
    int frames_per_label = 3;
    double frame_duration = 0.02;
  };
  auto opts = std::make_shared<SynthOpts>();
  auto* cmd = app.add_subcommand(
      "synth", "Synthesize a logit matrix for alphabet-pure text");
  cmd->fallthrough();
  cmd->add_option("--text", opts->text, "Target transcript")->required();
  cmd->add_option("--out", opts->out, "Output logits file")->required();
  cmd->add_option("--noise", opts->noise, "Gaussian log-prob noise scale");
  cmd->add_option("--frames-per-label", opts->frames_per_label,
                  "Peaked frames per label")
      ->check(CLI::Range(1, 64));
  cmd->add_option("--frame-duration", opts->frame_duration,
                  "Seconds per frame");
  dispatch.On(cmd, [opts, &globals] {
    Alphabet alphabet = globals.LoadAlphabet();
    LogitMatrix logits = SynthesizeLogits(
        opts->text, alphabet, opts->frames_per_label, opts->noise,
        globals.seed, static_cast<float>(opts->frame_duration));
    logits.WriteFile(opts->out);
    std::fprintf(stderr, "info\twrote %u x %u logits (%.2fs audio)\n",
                 logits.frames(), logits.classes(), logits.audio_seconds());
  });
}

// ---------------------------------------------------------------------------
// evaluate / tune / bench

void RegisterEvaluate(CLI::App& app, Globals& globals, Dispatcher& dispatch) {
  struct EvalOpts {
    std::string manifest;
    std::string scorer;
    int beam = 256;
    std::optional<double> alpha;
    std::optional<double> beta;
    bool greedy = false;
    bool no_prune = false;
    bool cer_no_space = false;
    std::string report;
    std::string table;
    std::string logit_dir;
    std::string label;
  };
  auto opts = std::make_shared<EvalOpts>();
  auto* cmd = app.add_subcommand(
      "evaluate", "Decode a test manifest and report WER/CER");
  cmd->fallthrough();
  cmd->add_option("--manifest", opts->manifest, "Eval manifest CSV")
      ->required();
  cmd->add_option("--scorer", opts->scorer, "Scorer for shallow fusion");
  cmd->add_option("--beam", opts->beam, "Beam width")
      ->check(CLI::Range(1, 1 << 20));
  cmd->add_option("--alpha", [opts](const CLI::results_t& r) {
    try { opts->alpha = std::stod(r[0]); } catch (...) { return false; }
    return true; }, "Fusion weight override");
  cmd->add_option("--beta", [opts](const CLI::results_t& r) {
    try { opts->beta = std::stod(r[0]); } catch (...) { return false; }
    return true; }, "Word bonus override");
  cmd->add_flag("--greedy", opts->greedy, "Greedy best-path decode");
  cmd->add_flag("--no-prune", opts->no_prune,
                "Disable per-frame candidate pruning");
  cmd->add_flag("--cer-no-space", opts->cer_no_space,
                "Exclude spaces from CER");
  cmd->add_option("--report", opts->report, "Machine-readable report file");
  cmd->add_option("--table", opts->table, "Human-readable table file");
  cmd->add_option("--logit-dir", opts->logit_dir,
                  "Base directory for logit files (default: manifest dir)");
  cmd->add_option("--label", opts->label, "Configuration label");
  dispatch.On(cmd, [opts, &globals] {
    Alphabet alphabet = globals.LoadAlphabet();
    CorpusManifest manifest = ReadEvalManifestFile(opts->manifest);
    std::optional<Scorer> scorer;
    if (!opts->scorer.empty()) scorer = LoadScorer(opts->scorer);
    EvalOptions options;
    options.decoder.beam_width = opts->beam;
    options.decoder.alpha = opts->alpha;
    options.decoder.beta = opts->beta;
    options.decoder.prune_candidates = !opts->no_prune;
    options.greedy = opts->greedy;
    options.workers = globals.workers;
    options.cer_count_spaces = !opts->cer_no_space;
    options.logit_dir =
        opts->logit_dir.empty() ? Dirname(opts->manifest) : opts->logit_dir;
    options.label = opts->label.empty()
                        ? (scorer ? "acoustic+scorer" : "acoustic-only")
                        : opts->label;
    EvalReport report =
        Evaluate(manifest, alphabet, scorer ? &*scorer : nullptr, options);
    if (!opts->report.empty()) WriteJsonFile(opts->report, ToJson(report));
    if (globals.json && opts->table.empty()) {
      std::cout << ToJson(report).dump(2) << "\n";
    } else {
      std::ostringstream table;
      WriteEvalTable(report, table);
      WriteTextOutput(opts->table, table.str());
    }
  });
}

void RegisterTune(CLI::App& app, Globals& globals, Dispatcher& dispatch) {
  struct TuneOpts {
    std::string manifest;
    std::string scorer;
    std::string alpha_range = "0:4";
    std::string beta_range = "0:4";
    int grid = 0;
    int random = 0;
    int beam = 256;
    std::string report;
    std::string logit_dir;
  };
  auto opts = std::make_shared<TuneOpts>();
  auto* cmd = app.add_subcommand(
      "tune", "Sweep (alpha, beta) to minimize dev-set WER");
  cmd->fallthrough();
  cmd->add_option("--manifest", opts->manifest, "Dev manifest CSV")
      ->required();
  cmd->add_option("--scorer", opts->scorer, "Scorer to tune")->required();
  cmd->add_option("--alpha", opts->alpha_range, "Alpha range LO:HI");
  cmd->add_option("--beta", opts->beta_range, "Beta range LO:HI");
  auto* grid_opt =
      cmd->add_option("--grid", opts->grid, "Grid steps per axis");
  cmd->add_option("--random", opts->random, "Random trial count")
      ->excludes(grid_opt);
  cmd->add_option("--beam", opts->beam, "Beam width")
      ->check(CLI::Range(1, 1 << 20));
  cmd->add_option("--report", opts->report, "Sweep report file");
  cmd->add_option("--logit-dir", opts->logit_dir,
                  "Base directory for logit files (default: manifest dir)");
  dispatch.On(cmd, [opts, &globals] {
    Alphabet alphabet = globals.LoadAlphabet();
    CorpusManifest manifest = ReadEvalManifestFile(opts->manifest);
    Scorer scorer = LoadScorer(opts->scorer);

    SweepSpec spec;
    std::tie(spec.alpha_lo, spec.alpha_hi) =
        ParseRange(opts->alpha_range, "--alpha");
    std::tie(spec.beta_lo, spec.beta_hi) =
        ParseRange(opts->beta_range, "--beta");
    spec.seed = globals.seed;
    if (opts->random > 0) {
      spec.strategy = SweepSpec::Strategy::kRandom;
      spec.trial_count = opts->random;
    } else {
      spec.strategy = SweepSpec::Strategy::kGrid;
      spec.grid_steps = opts->grid > 0 ? opts->grid : 5;
    }

    EvalOptions options;
    options.decoder.beam_width = opts->beam;
    options.workers = globals.workers;
    options.logit_dir =
        opts->logit_dir.empty() ? Dirname(opts->manifest) : opts->logit_dir;

    try {
      SweepResult result = Sweep(manifest, alphabet, scorer, spec, options);
      if (!opts->report.empty()) WriteJsonFile(opts->report, ToJson(result));
      if (globals.json) {
        std::cout << ToJson(result).dump(2) << "\n";
      } else {
        std::printf("best alpha %.17g  beta %.17g  wer %.4f%%  (%zu trials)\n",
                    result.best_alpha, result.best_beta, result.best_wer,
                    result.trials.size());
      }
    } catch (const SweepAbortedError& e) {
      // Partial trials are preserved for inspection before the error exits.
      if (!opts->report.empty()) {
        WriteJsonFile(opts->report, ToJson(e.partial()));
      }
      throw;
    }
  });
}

void RegisterBench(CLI::App& app, Globals& globals, Dispatcher& dispatch) {
  struct BenchOpts {
    std::string report;
    std::string manifest;
    double wall = -1.0;
    double audio_seconds = -1.0;
    std::string label;
  };
  auto opts = std::make_shared<BenchOpts>();
  auto* cmd = app.add_subcommand(
      "bench", "Seconds of single-core compute per second of audio");
  cmd->fallthrough();
  cmd->add_option("--report", opts->report, "Evaluation report (JSON)");
  cmd->add_option("--manifest", opts->manifest,
                  "Manifest with audio_seconds durations");
  cmd->add_option("--wall", opts->wall, "Wall seconds (direct form)");
  cmd->add_option("--audio-seconds", opts->audio_seconds,
                  "Audio seconds (direct form)");
  cmd->add_option("--label", opts->label, "Row label");
  dispatch.On(cmd, [opts, &globals] {
    RtfReport rtf;
    if (!opts->report.empty()) {
      if (opts->manifest.empty()) throw CLI::RequiredError("--manifest");
      std::ifstream in(opts->report, std::ios::binary);
      if (!in) throw IoError("cannot open report: " + opts->report);
      Json json = Json::parse(in, nullptr, true);
      EvalReport report = EvalReportFromJson(json);
      CorpusManifest manifest = ReadEvalManifestFile(opts->manifest);
      rtf = BenchFromReport(report, manifest);
    } else {
      if (opts->wall < 0) throw CLI::RequiredError("--wall");
      if (opts->audio_seconds < 0) throw CLI::RequiredError("--audio-seconds");
      if (globals.workers_opt->count() == 0) {
        throw CLI::RequiredError("--workers");
      }
      rtf = BenchDirect(opts->label.empty() ? "direct" : opts->label,
                        opts->wall, globals.workers, opts->audio_seconds);
    }
    if (!opts->label.empty()) rtf.label = opts->label;
    if (globals.json) {
      std::cout << ToJson(rtf).dump(2) << "\n";
    } else {
      std::cout << FormatRtfRow(rtf) << "\n";
    }
  });
}

CLI::App* DeepestParsed(CLI::App* app) {
  for (CLI::App* sub : app->get_subcommands()) {
    return DeepestParsed(sub);
  }
  return app;
}

}  // namespace

int Run(int argc, const char* const* argv) {
  CLI::App app{"CPU speech-to-text decoding toolkit"};
  app.set_version_flag("--version", std::string("stt ") + STT_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  Globals globals;
  app.add_option("--alphabet", globals.alphabet_path, "Alphabet file")
      ->envname("STT_ALPHABET");
  app.add_option("--rules", globals.rules_path,
                 "Normalization rules file (default: built-in Kazakh rules)")
      ->envname("STT_RULES");
  globals.workers_opt =
      app.add_option("--workers", globals.workers, "Worker thread count")
          ->envname("STT_WORKERS")
          ->check(CLI::Range(1, 4096));
  app.add_option("--seed", globals.seed, "Random seed")->envname("STT_SEED");
  app.add_option("--log-level", globals.log_level,
                 "Log threshold: debug|info|warn|error")
      ->envname("STT_LOG_LEVEL");
  app.add_flag("--json", globals.json, "Machine-readable output")
      ->envname("STT_JSON");

  Dispatcher dispatch;
  RegisterPrep(app, globals, dispatch);
  RegisterLm(app, globals, dispatch);
  RegisterScorer(app, globals, dispatch);
  RegisterDecode(app, globals, dispatch);
  RegisterSynth(app, globals, dispatch);
  RegisterEvaluate(app, globals, dispatch);
  RegisterTune(app, globals, dispatch);
  RegisterBench(app, globals, dispatch);

  try {
    app.parse(argc, argv);
    SetLogLevel(ParseLogLevel(globals.log_level));
    dispatch.RunParsed();
    return 0;
  } catch (const CLI::CallForHelp& e) {
    std::cout << DeepestParsed(&app)->help();
    return 0;
  } catch (const CLI::CallForVersion& e) {
    std::cout << app.version() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "%s\n\n", e.what());
    std::fputs(DeepestParsed(&app)->help().c_str(), stderr);
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "%s\n",
                 ErrorJson(e.code(), e.what()).dump().c_str());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", ErrorJson("internal", e.what()).dump().c_str());
    return 1;
  }
}

}  // namespace stt::cli
