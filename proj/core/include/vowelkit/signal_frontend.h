// core/include/vowelkit/signal_frontend.h

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

#ifndef VOWELKIT_SIGNAL_FRONTEND_H_
#define VOWELKIT_SIGNAL_FRONTEND_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vowelkit/matrix.h"

namespace vowelkit {

// Mono audio normalized to [-1, 1].
struct RawSignal {
  std::vector<double> samples;
  int sample_rate = 16000;
};

enum class FeatureKind { kMfcc, kPlp };

std::string ToString(FeatureKind kind);
FeatureKind ParseFeatureKind(const std::string &name);

struct FrontendConfig {
  double pre_emphasis = 0.95;
  std::size_t frame_len = 256;
  std::size_t hop = 128;
  FeatureKind feature_kind = FeatureKind::kMfcc;
  std::size_t num_ceps = 12;
  bool with_deltas = true;
  std::size_t num_mel_filters = 26;
  std::size_t lp_order = 12;

  // Output width: num_ceps, tripled when deltas are appended.
  std::size_t Dimension() const { return num_ceps * (with_deltas ? 3 : 1); }
  // Throws InvalidInput if any field is out of range.
  void Validate() const;
  // Canonical one-line description, used for provenance fingerprints.
  std::string Describe() const;
};

// Feature names of the form "mfcc36", "plp12": kind plus output dimension.
std::string FeatureName(const FrontendConfig &config);
// Applies a feature name to |base|, setting kind and with_deltas.
FrontendConfig ApplyFeatureName(FrontendConfig base, const std::string &name);

// y[0] = x[0], y[n] = x[n] - alpha * x[n-1].
std::vector<double> PreEmphasize(std::span<const double> signal, double alpha);

// Frames of |frame_len| samples every |hop| samples; the trailing partial
// frame is dropped. Throws TooShort when no full frame fits.
Matrix FrameSignal(std::span<const double> signal, std::size_t frame_len,
                   std::size_t hop);

std::size_t FrameCount(std::size_t signal_len, std::size_t frame_len,
                       std::size_t hop);

std::vector<double> HammingWindow(std::size_t n);

// Multiplies every row by the Hamming window of the row length.
Matrix ApplyHamming(Matrix frames);

// |FFT|^2 for bins 0..N/2; N must be a power of two.
std::vector<double> PowerSpectrum(std::span<const double> frame);

double HzToMel(double hz);
double MelToHz(double mel);

// Triangular filterbank equally spaced on the mel scale between 0 Hz and
// Nyquist. Row m holds the weights of filter m over the FFT bins.
class MelFilterbank {
 public:
  MelFilterbank(std::size_t num_bins, int sample_rate, std::size_t num_filters);

  std::size_t num_filters() const { return weights_.rows(); }
  // Left edge, center and right edge of filter m, in Hz.
  double LeftHz(std::size_t m) const { return MelToHz(edges_mel_[m]); }
  double CenterHz(std::size_t m) const { return MelToHz(edges_mel_[m + 1]); }
  double RightHz(std::size_t m) const { return MelToHz(edges_mel_[m + 2]); }

  // ln(max(energy, floor)) per filter.
  std::vector<double> LogEnergies(std::span<const double> spectrum) const;

  static constexpr double kEnergyFloor = 1e-10;

 private:
  std::vector<double> edges_mel_;
  Matrix weights_;
};

std::vector<double> MelLogEnergies(std::span<const double> spectrum,
                                   int sample_rate, std::size_t num_filters);

// DCT-II of the log energies, coefficients c1..c_num_ceps (c0 excluded).
std::vector<double> Mfcc(std::span<const double> log_energies,
                         std::size_t num_ceps);

// --- Perceptual linear prediction ---------------------------------------

double HzToBark(double hz);

// Bark-band integration, equal-loudness weighting and cube-root compression
// of a power spectrum. Bands sit 1 Bark apart from 0 to the Nyquist Bark
// value; the edge bands copy their neighbours.
std::vector<double> AuditorySpectrum(std::span<const double> spectrum,
                                     int sample_rate);

// Autocorrelation lags 0..order of the real, even spectrum sampled on
// [0, pi] by |spectrum|.
std::vector<double> AutocorrelationFromSpectrum(std::span<const double> spectrum,
                                                std::size_t order);

struct LpcResult {
  // a[0] = 1; the predictor polynomial is A(z) = sum a[k] z^-k.
  std::vector<double> coeffs;
  double error = 0.0;
};

// Levinson-Durbin recursion. Throws DegenerateSpectrum if the prediction
// error variance becomes non-positive.
LpcResult LevinsonDurbin(std::span<const double> autocorr, std::size_t order);

// Cepstrum c1..c_num_ceps of the all-pole model 1 / A(z).
std::vector<double> LpcToCepstrum(std::span<const double> coeffs,
                                  std::size_t num_ceps);

std::vector<double> PlpFromAuditory(std::span<const double> auditory,
                                    std::size_t lp_order, std::size_t num_ceps);

std::vector<double> Plp(std::span<const double> spectrum, int sample_rate,
                        std::size_t lp_order, std::size_t num_ceps);

// Appends delta and delta-delta columns (regression over +-2 frames with
// edge replication): [static | delta | delta-delta].
Matrix AppendDeltas(const Matrix &features);

// Full chain: pre-emphasis, framing, Hamming, power spectrum, MFCC or PLP,
// optional deltas. One output row per frame.
Matrix ExtractFeatures(const RawSignal &signal, const FrontendConfig &config);

}  // namespace vowelkit

#endif  // VOWELKIT_SIGNAL_FRONTEND_H_
