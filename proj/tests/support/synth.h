// tests/support/synth.h

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

#ifndef VOWELKIT_TESTS_SUPPORT_SYNTH_H_
#define VOWELKIT_TESTS_SUPPORT_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "vowelkit/matrix.h"
#include "vowelkit/multiclass.h"
#include "vowelkit/signal_frontend.h"

namespace vowelkit::testing {

// A vowel-like class: two sinusoids at formant frequencies.
struct FormantClass {
  std::string label;
  double f1 = 0.0;
  double f2 = 0.0;
};

// iy, ae, aa, uw, er with textbook formant pairs.
std::vector<FormantClass> DefaultFormantClasses();

struct SynthCorpusOptions {
  std::vector<FormantClass> classes = DefaultFormantClasses();
  std::size_t train_per_class = 150;
  std::size_t test_per_class = 50;
  std::size_t tokens_per_utterance = 10;
  std::size_t min_len = 1100;  // samples
  std::size_t max_len = 2400;
  double formant_jitter = 0.06;  // relative std-dev of each formant per token
  double noise = 0.08;           // white-noise std-dev (signal peak is about 0.6)
  // Tokens shorter than one frame mixed into each split, to exercise skipping.
  std::size_t short_tokens = 0;
  std::uint64_t seed = 7;
};

// Tone of |len| samples at 16 kHz.
std::vector<double> FormantToken(const FormantClass &cls, std::size_t len, double jitter,
                                 double noise, std::mt19937_64 &rng);

// Writes root/train/<spk>/<utt>.wav + .phn and likewise under root/test.
// Utterances start and end with an "h#" silence segment; tokens are separated
// by short "pau" gaps. Returns the number of vowel tokens written.
std::size_t WriteSynthCorpus(const std::filesystem::path &root, const SynthCorpusOptions &options);

// Two isotropic Gaussian blobs in |dim| dimensions, |n| points total split
// evenly; class +1 centred at +separation/2 along the first axis.
struct Blobs {
  Matrix x;
  std::vector<int> y;
};
Blobs GaussianBlobs(std::size_t n, std::size_t dim, double separation, double stddev,
                    std::uint64_t seed);

Matrix RandomMatrix(std::size_t rows, std::size_t cols, double lo, double hi, std::uint64_t seed);

// k-class labelled data with one Gaussian cluster per class.
LabeledDataset ClusteredDataset(std::size_t k, std::size_t per_class, std::size_t dim,
                                double spread, std::uint64_t seed);

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string &tag);
  ~TempDir();
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;
  const std::filesystem::path &path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace vowelkit::testing

#endif  // VOWELKIT_TESTS_SUPPORT_SYNTH_H_
