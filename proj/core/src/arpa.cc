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

#include "stt/arpa.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "stt/error.h"
#include "stt/log.h"

namespace stt {
namespace {

std::string FormatLog10(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

double ParseLog10(const std::string& text, size_t line_no) {
  try {
    size_t used = 0;
    double value = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(value)) {
      throw std::invalid_argument(text);
    }
    return value;
  } catch (const std::exception&) {
    throw ArpaParseError(line_no, "bad log10 value '" + text + "'");
  }
}

std::vector<std::string> SplitTabs(const std::string& line) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

}  // namespace

void WriteArpa(const NGramModel& model, std::ostream& out) {
  out << "\\data\\\n";
  for (int k = 1; k <= model.order(); ++k) {
    out << "ngram " << k << "=" << model.EntryCount(k) << "\n";
  }
  out << "\n";
  for (int k = 1; k <= model.order(); ++k) {
    if (model.EntryCount(k) == 0) continue;
    out << "\\" << k << "-grams:\n";
    std::vector<const std::pair<const TokenIds, NGramEntry>*> entries;
    entries.reserve(model.table(k).size());
    for (const auto& item : model.table(k)) entries.push_back(&item);
    std::sort(entries.begin(), entries.end(),
              [](const auto* a, const auto* b) { return a->first < b->first; });
    const bool highest = k == model.order();
    for (const auto* item : entries) {
      out << FormatLog10(item->second.log10_prob) << '\t';
      const TokenIds& key = item->first;
      for (size_t i = 0; i < key.size(); ++i) {
        if (i) out << ' ';
        out << model.vocab().Token(key[i]);
      }
      if (!highest && item->second.log10_backoff != 0.0) {
        out << '\t' << FormatLog10(item->second.log10_backoff);
      }
      out << "\n";
    }
    out << "\n";
  }
  out << "\\end\\\n";
}

void WriteArpaFile(const NGramModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write ARPA file: " + path);
  WriteArpa(model, out);
  if (!out) throw IoError("failed writing ARPA file: " + path);
}

NGramModel ReadArpa(std::istream& in) {
  std::string line;
  size_t line_no = 0;

  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  // Preamble: anything before \data\ is ignored (some tools emit headers).
  bool found_data = false;
  while (next_line()) {
    if (line == "\\data\\") {
      found_data = true;
      break;
    }
  }
  if (!found_data) throw ArpaParseError(line_no, "missing \\data\\ section");

  std::vector<uint64_t> declared;
  while (next_line()) {
    if (line.empty()) break;
    if (line.rfind("ngram ", 0) != 0) {
      throw ArpaParseError(line_no, "expected 'ngram k=count'");
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ArpaParseError(line_no, "expected 'ngram k=count'");
    }
    int k = 0;
    uint64_t count = 0;
    try {
      k = std::stoi(line.substr(6, eq - 6));
      count = std::stoull(line.substr(eq + 1));
    } catch (const std::exception&) {
      throw ArpaParseError(line_no, "expected 'ngram k=count'");
    }
    if (k != static_cast<int>(declared.size()) + 1) {
      throw ArpaParseError(line_no, "orders must be consecutive from 1");
    }
    declared.push_back(count);
  }
  if (declared.empty()) throw ArpaParseError(line_no, "no ngram counts");
  const int order = static_cast<int>(declared.size());

  TokenTable vocab;
  vocab.Intern(kSentenceStart);
  vocab.Intern(kSentenceEnd);
  std::vector<NGramMap<NGramEntry>> tables(order);

  int expected_k = 1;
  while (expected_k <= order && declared[expected_k - 1] == 0) ++expected_k;

  bool saw_end = false;
  while (next_line()) {
    if (line.empty()) continue;
    if (line == "\\end\\") {
      saw_end = true;
      break;
    }
    std::string section = "\\" + std::to_string(expected_k) + "-grams:";
    if (line != section) {
      throw ArpaParseError(line_no, "expected section header " + section +
                                        ", got '" + line + "'");
    }
    const int k = expected_k;
    auto& table = tables[k - 1];
    table.reserve(declared[k - 1]);
    uint64_t remaining = declared[k - 1];
    while (remaining > 0) {
      if (!next_line()) {
        throw ArpaParseError(line_no, "unexpected end of file inside section");
      }
      if (line.empty()) {
        throw ArpaParseError(line_no, "section ended before declared count");
      }
      std::vector<std::string> fields = SplitTabs(line);
      std::vector<std::string> tokens;
      double prob = 0.0;
      double backoff = 0.0;
      if (fields.size() >= 2) {
        prob = ParseLog10(fields[0], line_no);
        std::istringstream grams(fields[1]);
        std::string token;
        while (grams >> token) tokens.push_back(token);
        if (fields.size() >= 3 && !fields[2].empty()) {
          backoff = ParseLog10(fields[2], line_no);
        }
        if (fields.size() > 3) {
          throw ArpaParseError(line_no, "too many fields");
        }
      } else {
        // Space-separated fallback: prob, k tokens, optional backoff.
        std::istringstream parts(line);
        std::vector<std::string> words;
        std::string word;
        while (parts >> word) words.push_back(word);
        if (words.size() == static_cast<size_t>(k) + 1) {
          prob = ParseLog10(words[0], line_no);
          tokens.assign(words.begin() + 1, words.end());
        } else if (words.size() == static_cast<size_t>(k) + 2) {
          prob = ParseLog10(words[0], line_no);
          backoff = ParseLog10(words.back(), line_no);
          tokens.assign(words.begin() + 1, words.end() - 1);
        } else {
          throw ArpaParseError(line_no, "malformed entry");
        }
      }
      if (tokens.size() != static_cast<size_t>(k)) {
        throw ArpaParseError(line_no,
                             "entry has " + std::to_string(tokens.size()) +
                                 " tokens in the " + std::to_string(k) +
                                 "-gram section");
      }
      TokenIds key;
      key.reserve(tokens.size());
      for (const auto& token : tokens) key.push_back(vocab.Intern(token));
      if (!table.emplace(std::move(key), NGramEntry{prob, backoff}).second) {
        throw ArpaParseError(line_no, "duplicate n-gram");
      }
      --remaining;
    }
    ++expected_k;
    while (expected_k <= order && declared[expected_k - 1] == 0) ++expected_k;
  }
  if (expected_k <= order) {
    throw ArpaParseError(line_no, "missing \\" + std::to_string(expected_k) +
                                      "-grams: section");
  }
  if (!saw_end) throw ArpaParseError(line_no, "missing \\end\\");

  for (int k = 1; k <= order; ++k) {
    if (tables[k - 1].size() != declared[k - 1]) {
      throw ArpaParseError(line_no,
                           "declared count mismatch at order " +
                               std::to_string(k));
    }
  }

  if (vocab.Find(kUnknown) < 0 ||
      tables[0].count({static_cast<uint32_t>(vocab.Find(kUnknown))}) == 0) {
    LogWarn("ARPA file lacks <unk>; synthesizing the floor entry");
    tables[0][{vocab.Intern(kUnknown)}] = NGramEntry{kLog10Floor, 0.0};
  }
  if (tables[0].count({0}) == 0) {
    LogWarn("ARPA file lacks <s>; synthesizing a pseudo entry");
    tables[0][{0}] = NGramEntry{-99.0, 0.0};
  }
  if (tables[0].count({1}) == 0) {
    LogWarn("ARPA file lacks </s>; synthesizing a pseudo entry");
    tables[0][{1}] = NGramEntry{-99.0, 0.0};
  }

  return NGramModel(order, std::move(vocab), std::move(tables));
}

NGramModel ReadArpaFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open ARPA file: " + path);
  return ReadArpa(in);
}

}  // namespace stt
