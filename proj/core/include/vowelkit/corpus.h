// core/include/vowelkit/corpus.h

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

#ifndef VOWELKIT_CORPUS_H_
#define VOWELKIT_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vowelkit/signal_frontend.h"

namespace vowelkit {

enum class Split { kTrain, kTest };

std::string ToString(Split split);

// One labelled phone segment, [begin, end) in samples.
struct PhonemeToken {
  std::string label;
  std::int64_t begin = 0;
  std::int64_t end = 0;
  std::string utterance;
  Split split = Split::kTrain;
};

// The 20 vowel symbols used for recognition, sorted.
const std::vector<std::string> &DefaultVowels();

// Parses "begin end label" lines and keeps labels in |whitelist| (all labels
// when it is empty). Spans must satisfy begin < end, and end <= signal_len
// when a length is given. Errors carry the 1-based line number.
std::vector<PhonemeToken> ParsePhn(const std::string &text, const std::vector<std::string> &whitelist,
                                   std::optional<std::size_t> signal_len = std::nullopt,
                                   const std::string &source = "<phn>");
std::vector<PhonemeToken> LoadPhn(const std::filesystem::path &path,
                                  const std::vector<std::string> &whitelist,
                                  std::optional<std::size_t> signal_len = std::nullopt);

struct UtteranceFiles {
  std::string id;  // path relative to the corpus root, without extension
  std::filesystem::path audio;
  std::filesystem::path phn;
  Split split = Split::kTrain;
};

// Finds audio files (.wav / .sph, any case) with a sibling .phn under
// root/train and root/test (directory names matched case-insensitively).
// Sorted by split, then id.
std::vector<UtteranceFiles> ScanCorpus(const std::filesystem::path &root);

struct Utterance {
  UtteranceFiles files;
  RawSignal signal;
  std::vector<PhonemeToken> tokens;
};

struct Corpus {
  std::vector<Utterance> utterances;

  std::size_t token_count() const;
};

Corpus LoadCorpus(const std::filesystem::path &root, const std::vector<std::string> &whitelist,
                  std::optional<int> raw_sample_rate = std::nullopt);

}  // namespace vowelkit

#endif  // VOWELKIT_CORPUS_H_
