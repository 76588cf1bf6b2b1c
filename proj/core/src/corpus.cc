// core/src/corpus.cc

// Copyright 2026  The vowelkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.
//

#include "vowelkit/corpus.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "vowelkit/audio_io.h"

namespace vowelkit {

namespace fs = std::filesystem;

namespace {

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::optional<fs::path> SiblingPhn(const fs::path &audio) {
  for (const char *ext : {".phn", ".PHN", ".Phn"}) {
    fs::path candidate = audio;
    candidate.replace_extension(ext);
    if (fs::is_regular_file(candidate)) return candidate;
  }
  return std::nullopt;
}

}  // namespace

std::string ToString(Split split) { return split == Split::kTrain ? "train" : "test"; }

const std::vector<std::string> &DefaultVowels() {
  static const std::vector<std::string> vowels = [] {
    std::vector<std::string> v{"aa", "ae", "ah", "ao", "aw", "ax", "ax-h", "axr", "ay", "eh",
                               "er", "ey", "ih", "ix", "iy", "ow", "oy", "uh", "uw", "ux"};
    std::sort(v.begin(), v.end());
    return v;
  }();
  return vowels;
}

std::vector<PhonemeToken> ParsePhn(const std::string &text, const std::vector<std::string> &whitelist,
                                   std::optional<std::size_t> signal_len, const std::string &source) {
  std::vector<PhonemeToken> tokens;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    long long begin = 0, end = 0;
    std::string label, extra;
    if (!(fields >> begin >> end >> label) || (fields >> extra))
      throw FormatError(source + ":" + std::to_string(line_no) + ": expected 'begin end label'");
    if (begin < 0 || end <= begin)
      throw FormatError(source + ":" + std::to_string(line_no) + ": span end must exceed begin");
    if (signal_len && static_cast<std::size_t>(end) > *signal_len)
      throw FormatError(source + ":" + std::to_string(line_no) + ": span ends past the signal (" +
                        std::to_string(*signal_len) + " samples)");
    if (!whitelist.empty() && std::find(whitelist.begin(), whitelist.end(), label) == whitelist.end())
      continue;
    tokens.push_back(PhonemeToken{label, begin, end, {}, Split::kTrain});
  }
  return tokens;
}

std::vector<PhonemeToken> LoadPhn(const fs::path &path, const std::vector<std::string> &whitelist,
                                  std::optional<std::size_t> signal_len) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParsePhn(buf.str(), whitelist, signal_len, path.string());
}

std::vector<UtteranceFiles> ScanCorpus(const fs::path &root) {
  if (!fs::is_directory(root)) throw IoError("corpus root '" + root.string() + "' is not a directory");
  std::vector<UtteranceFiles> found;
  for (const auto &entry : fs::directory_iterator(root)) {
    if (!entry.is_directory()) continue;
    const std::string name = Lower(entry.path().filename().string());
    if (name != "train" && name != "test") continue;
    const Split split = name == "train" ? Split::kTrain : Split::kTest;
    for (const auto &file : fs::recursive_directory_iterator(entry.path())) {
      if (!file.is_regular_file()) continue;
      const std::string ext = Lower(file.path().extension().string());
      if (ext != ".wav" && ext != ".sph") continue;
      const auto phn = SiblingPhn(file.path());
      if (!phn) continue;
      fs::path id = fs::relative(file.path(), root);
      id.replace_extension();
      found.push_back(UtteranceFiles{id.generic_string(), file.path(), *phn, split});
    }
  }
  std::sort(found.begin(), found.end(), [](const auto &a, const auto &b) {
    return std::tie(a.split, a.id) < std::tie(b.split, b.id);
  });
  return found;
}

std::size_t Corpus::token_count() const {
  std::size_t n = 0;
  for (const auto &u : utterances) n += u.tokens.size();
  return n;
}

Corpus LoadCorpus(const fs::path &root, const std::vector<std::string> &whitelist,
                  std::optional<int> raw_sample_rate) {
  Corpus corpus;
  for (auto &files : ScanCorpus(root)) {
    Utterance u;
    u.signal = LoadAudio(files.audio, raw_sample_rate);
    u.tokens = LoadPhn(files.phn, whitelist, u.signal.samples.size());
    for (auto &t : u.tokens) {
      t.utterance = files.id;
      t.split = files.split;
    }
    u.files = std::move(files);
    corpus.utterances.push_back(std::move(u));
  }
  return corpus;
}

}  // namespace vowelkit
