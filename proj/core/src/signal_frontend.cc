// core/src/signal_frontend.cc

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

#include "vowelkit/signal_frontend.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

namespace vowelkit {

namespace {

bool IsPowerOfTwo(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 FFT.
void Fft(std::vector<std::complex<double>> &a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle = -2.0 * std::numbers::pi / static_cast<double>(len);
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> w = std::polar(1.0, angle * static_cast<double>(k));
        const auto u = a[start + k];
        const auto v = a[start + k + len / 2] * w;
        a[start + k] = u + v;
        a[start + k + len / 2] = u - v;
      }
    }
  }
}

// Critical-band masking curve of the Bark-domain filter, as a function of
// the distance (in Bark) from the band center.
double CriticalBandWeight(double dz) {
  if (dz < -1.3 || dz > 2.5) return 0.0;
  if (dz <= -0.5) return std::pow(10.0, 2.5 * (dz + 0.5));
  if (dz < 0.5) return 1.0;
  return std::pow(10.0, -1.0 * (dz - 0.5));
}

double EqualLoudness(double hz) {
  const double w2 = std::pow(2.0 * std::numbers::pi * hz, 2);
  return (w2 + 56.8e6) * w2 * w2 /
         (std::pow(w2 + 6.3e6, 2) * (w2 + 0.38e9));
}

double BarkToHz(double bark) { return 600.0 * std::sinh(bark / 6.0); }

}  // namespace

std::string ToString(FeatureKind kind) {
  return kind == FeatureKind::kMfcc ? "mfcc" : "plp";
}

FeatureKind ParseFeatureKind(const std::string &name) {
  if (name == "mfcc") return FeatureKind::kMfcc;
  if (name == "plp") return FeatureKind::kPlp;
  throw InvalidInput("unknown feature kind '" + name + "'");
}

void FrontendConfig::Validate() const {
  if (!(pre_emphasis >= 0.0 && pre_emphasis < 1.0))
    throw InvalidInput("pre_emphasis must lie in [0, 1)");
  if (frame_len < 2 || !IsPowerOfTwo(frame_len))
    throw InvalidInput("frame_len must be a power of two >= 2");
  if (hop == 0 || hop > frame_len) throw InvalidInput("hop must lie in (0, frame_len]");
  if (num_ceps == 0) throw InvalidInput("num_ceps must be >= 1");
  if (feature_kind == FeatureKind::kMfcc && num_ceps >= num_mel_filters)
    throw InvalidInput("num_ceps must be smaller than num_mel_filters");
  if (num_mel_filters < 2) throw InvalidInput("num_mel_filters must be >= 2");
  if (feature_kind == FeatureKind::kPlp && num_ceps > lp_order)
    throw InvalidInput("num_ceps must not exceed lp_order");
}

std::string FrontendConfig::Describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "kind=" << ToString(feature_kind) << " pre_emphasis=" << pre_emphasis
     << " frame_len=" << frame_len << " hop=" << hop << " num_ceps=" << num_ceps
     << " deltas=" << (with_deltas ? 1 : 0);
  if (feature_kind == FeatureKind::kMfcc)
    os << " mel_filters=" << num_mel_filters;
  else
    os << " lp_order=" << lp_order;
  return os.str();
}

std::string FeatureName(const FrontendConfig &config) {
  return ToString(config.feature_kind) + std::to_string(config.Dimension());
}

FrontendConfig ApplyFeatureName(FrontendConfig base, const std::string &name) {
  const auto digits = name.find_first_of("0123456789");
  if (digits == std::string::npos || digits == 0)
    throw InvalidInput("feature name '" + name + "' must look like mfcc36 or plp12");
  base.feature_kind = ParseFeatureKind(name.substr(0, digits));
  std::size_t dim = 0;
  try {
    dim = std::stoul(name.substr(digits));
  } catch (const std::exception &) {
    throw InvalidInput("bad dimension in feature name '" + name + "'");
  }
  if (dim == base.num_ceps) {
    base.with_deltas = false;
  } else if (dim == 3 * base.num_ceps) {
    base.with_deltas = true;
  } else {
    throw InvalidInput("feature dimension " + std::to_string(dim) +
                       " is neither num_ceps nor 3*num_ceps");
  }
  return base;
}

std::vector<double> PreEmphasize(std::span<const double> signal, double alpha) {
  if (signal.empty()) throw InvalidInput("pre-emphasis of an empty signal");
  if (!(alpha >= 0.0 && alpha < 1.0)) throw InvalidInput("pre-emphasis alpha must lie in [0, 1)");
  std::vector<double> out(signal.size());
  out[0] = signal[0];
  for (std::size_t n = 1; n < signal.size(); ++n) out[n] = signal[n] - alpha * signal[n - 1];
  return out;
}

std::size_t FrameCount(std::size_t signal_len, std::size_t frame_len, std::size_t hop) {
  if (hop == 0) throw InvalidInput("hop must be positive");
  if (signal_len < frame_len || frame_len == 0) return 0;
  return (signal_len - frame_len) / hop + 1;
}

Matrix FrameSignal(std::span<const double> signal, std::size_t frame_len,
                   std::size_t hop) {
  const std::size_t count = FrameCount(signal.size(), frame_len, hop);
  if (count == 0)
    throw TooShort("signal of " + std::to_string(signal.size()) +
                   " samples is shorter than one frame of " + std::to_string(frame_len));
  Matrix frames(count, frame_len);
  for (std::size_t i = 0; i < count; ++i) {
    auto src = signal.subspan(i * hop, frame_len);
    std::copy(src.begin(), src.end(), frames.row(i).begin());
  }
  return frames;
}

std::vector<double> HammingWindow(std::size_t n) {
  if (n < 2) throw InvalidInput("Hamming window needs at least 2 points");
  std::vector<double> w(n);
  const double denom = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i)
    w[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / denom);
  return w;
}

Matrix ApplyHamming(Matrix frames) {
  const auto w = HammingWindow(frames.cols());
  for (std::size_t r = 0; r < frames.rows(); ++r) {
    auto row = frames.row(r);
    for (std::size_t i = 0; i < row.size(); ++i) row[i] *= w[i];
  }
  return frames;
}

std::vector<double> PowerSpectrum(std::span<const double> frame) {
  const std::size_t n = frame.size();
  if (!IsPowerOfTwo(n)) throw InvalidInput("FFT length must be a power of two");
  std::vector<std::complex<double>> buf(frame.begin(), frame.end());
  Fft(buf);
  std::vector<double> power(n / 2 + 1);
  for (std::size_t b = 0; b < power.size(); ++b) power[b] = std::norm(buf[b]);
  return power;
}

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double MelToHz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

MelFilterbank::MelFilterbank(std::size_t num_bins, int sample_rate,
                             std::size_t num_filters) {
  if (num_filters < 2) throw InvalidInput("need at least 2 mel filters");
  if (num_bins < 2) throw InvalidInput("spectrum needs at least 2 bins");
  if (sample_rate <= 0) throw InvalidInput("sample rate must be positive");
  const double nyquist = sample_rate / 2.0;
  const double mel_max = HzToMel(nyquist);
  edges_mel_.resize(num_filters + 2);
  for (std::size_t i = 0; i < edges_mel_.size(); ++i)
    edges_mel_[i] = mel_max * static_cast<double>(i) / static_cast<double>(num_filters + 1);

  const double bin_hz = nyquist / static_cast<double>(num_bins - 1);
  weights_ = Matrix(num_filters, num_bins);
  for (std::size_t m = 0; m < num_filters; ++m) {
    const double left = edges_mel_[m], center = edges_mel_[m + 1], right = edges_mel_[m + 2];
    for (std::size_t b = 0; b < num_bins; ++b) {
      const double mel = HzToMel(bin_hz * static_cast<double>(b));
      double w = 0.0;
      if (mel > left && mel <= center)
        w = (mel - left) / (center - left);
      else if (mel > center && mel < right)
        w = (right - mel) / (right - center);
      weights_(m, b) = w;
    }
  }
}

std::vector<double> MelFilterbank::LogEnergies(std::span<const double> spectrum) const {
  if (spectrum.size() != weights_.cols())
    throw InvalidInput("spectrum size does not match the filterbank");
  std::vector<double> out(num_filters());
  for (std::size_t m = 0; m < out.size(); ++m)
    out[m] = std::log(std::max(Dot(weights_.row(m), spectrum), kEnergyFloor));
  return out;
}

std::vector<double> MelLogEnergies(std::span<const double> spectrum, int sample_rate,
                                   std::size_t num_filters) {
  return MelFilterbank(spectrum.size(), sample_rate, num_filters).LogEnergies(spectrum);
}

std::vector<double> Mfcc(std::span<const double> log_energies, std::size_t num_ceps) {
  const std::size_t m_count = log_energies.size();
  if (num_ceps == 0 || num_ceps >= m_count)
    throw InvalidInput("num_ceps must lie in [1, number of filters)");
  const double scale = std::sqrt(2.0 / static_cast<double>(m_count));
  std::vector<double> ceps(num_ceps);
  for (std::size_t n = 1; n <= num_ceps; ++n) {
    double s = 0.0;
    for (std::size_t m = 1; m <= m_count; ++m)
      s += log_energies[m - 1] *
           std::cos(std::numbers::pi * static_cast<double>(n) *
                    (static_cast<double>(m) - 0.5) / static_cast<double>(m_count));
    ceps[n - 1] = scale * s;
  }
  return ceps;
}

double HzToBark(double hz) { return 6.0 * std::asinh(hz / 600.0); }

std::vector<double> AuditorySpectrum(std::span<const double> spectrum, int sample_rate) {
  if (spectrum.size() < 2) throw InvalidInput("spectrum needs at least 2 bins");
  const double nyquist = sample_rate / 2.0;
  const std::size_t num_bands =
      static_cast<std::size_t>(std::floor(HzToBark(nyquist))) + 1;
  if (num_bands < 3) throw InvalidInput("sample rate too low for Bark analysis");

  const double bin_hz = nyquist / static_cast<double>(spectrum.size() - 1);
  std::vector<double> bin_bark(spectrum.size());
  for (std::size_t b = 0; b < spectrum.size(); ++b)
    bin_bark[b] = HzToBark(bin_hz * static_cast<double>(b));

  std::vector<double> bands(num_bands);
  for (std::size_t k = 1; k + 1 < num_bands; ++k) {
    const double center = static_cast<double>(k);
    double energy = 0.0;
    for (std::size_t b = 0; b < spectrum.size(); ++b)
      energy += spectrum[b] * CriticalBandWeight(bin_bark[b] - center);
    bands[k] = std::pow(EqualLoudness(BarkToHz(center)) * energy, 0.33);
  }
  bands.front() = bands[1];
  bands.back() = bands[num_bands - 2];
  return bands;
}

std::vector<double> AutocorrelationFromSpectrum(std::span<const double> spectrum,
                                                std::size_t order) {
  const std::size_t n = spectrum.size();
  if (n < 2) throw InvalidInput("spectrum needs at least 2 points");
  const double period = 2.0 * static_cast<double>(n - 1);
  std::vector<double> r(order + 1);
  for (std::size_t k = 0; k <= order; ++k) {
    double s = spectrum[0] + ((k % 2 == 0) ? 1.0 : -1.0) * spectrum[n - 1];
    for (std::size_t j = 1; j + 1 < n; ++j)
      s += 2.0 * spectrum[j] *
           std::cos(std::numbers::pi * static_cast<double>(k * j) / static_cast<double>(n - 1));
    r[k] = s / period;
  }
  return r;
}

LpcResult LevinsonDurbin(std::span<const double> autocorr, std::size_t order) {
  if (autocorr.size() < order + 1)
    throw InvalidInput("autocorrelation shorter than the LP order");
  LpcResult result;
  result.coeffs.assign(order + 1, 0.0);
  result.coeffs[0] = 1.0;
  double err = autocorr[0];
  if (!(err > 0.0)) throw DegenerateSpectrum("zero-energy autocorrelation");
  std::vector<double> prev(order + 1);
  auto &a = result.coeffs;
  for (std::size_t i = 1; i <= order; ++i) {
    double acc = autocorr[i];
    for (std::size_t j = 1; j < i; ++j) acc += a[j] * autocorr[i - j];
    const double k = -acc / err;
    prev = a;
    for (std::size_t j = 1; j < i; ++j) a[j] = prev[j] + k * prev[i - j];
    a[i] = k;
    err *= (1.0 - k * k);
    if (!(err > 0.0))
      throw DegenerateSpectrum("non-positive prediction error at order " + std::to_string(i));
  }
  result.error = err;
  return result;
}

std::vector<double> LpcToCepstrum(std::span<const double> coeffs, std::size_t num_ceps) {
  if (coeffs.empty()) throw InvalidInput("empty LP polynomial");
  const std::size_t order = coeffs.size() - 1;
  auto a = [&](std::size_t k) { return k <= order ? coeffs[k] : 0.0; };
  std::vector<double> c(num_ceps + 1, 0.0);
  for (std::size_t n = 1; n <= num_ceps; ++n) {
    double s = -a(n);
    for (std::size_t k = 1; k < n; ++k)
      s -= static_cast<double>(k) / static_cast<double>(n) * c[k] * a(n - k);
    c[n] = s;
  }
  return {c.begin() + 1, c.end()};
}

std::vector<double> PlpFromAuditory(std::span<const double> auditory, std::size_t lp_order,
                                    std::size_t num_ceps) {
  if (num_ceps == 0 || num_ceps > lp_order)
    throw InvalidInput("num_ceps must lie in [1, lp_order]");
  const auto r = AutocorrelationFromSpectrum(auditory, lp_order);
  const auto lpc = LevinsonDurbin(r, lp_order);
  return LpcToCepstrum(lpc.coeffs, num_ceps);
}

std::vector<double> Plp(std::span<const double> spectrum, int sample_rate,
                        std::size_t lp_order, std::size_t num_ceps) {
  return PlpFromAuditory(AuditorySpectrum(spectrum, sample_rate), lp_order, num_ceps);
}

Matrix AppendDeltas(const Matrix &features) {
  if (features.empty()) throw InvalidInput("deltas of an empty feature matrix");
  auto regress = [](const Matrix &in) {
    const std::size_t rows = in.rows();
    const auto clamp_row = [rows](std::ptrdiff_t t) {
      return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(t, 0, static_cast<std::ptrdiff_t>(rows) - 1));
    };
    Matrix out(rows, in.cols());
    constexpr double kNorm = 2.0 * (1.0 + 4.0);
    for (std::size_t t = 0; t < rows; ++t) {
      const auto ti = static_cast<std::ptrdiff_t>(t);
      for (std::size_t c = 0; c < in.cols(); ++c) {
        double s = 0.0;
        for (std::ptrdiff_t n = 1; n <= 2; ++n)
          s += static_cast<double>(n) * (in(clamp_row(ti + n), c) - in(clamp_row(ti - n), c));
        out(t, c) = s / kNorm;
      }
    }
    return out;
  };
  const Matrix delta = regress(features);
  const Matrix delta2 = regress(delta);
  const std::size_t d = features.cols();
  Matrix out(features.rows(), 3 * d);
  for (std::size_t t = 0; t < features.rows(); ++t) {
    for (std::size_t c = 0; c < d; ++c) {
      out(t, c) = features(t, c);
      out(t, d + c) = delta(t, c);
      out(t, 2 * d + c) = delta2(t, c);
    }
  }
  return out;
}

Matrix ExtractFeatures(const RawSignal &signal, const FrontendConfig &config) {
  config.Validate();
  if (signal.sample_rate <= 0) throw InvalidInput("sample rate must be positive");
  for (double s : signal.samples)
    if (!std::isfinite(s)) throw InvalidInput("signal contains non-finite samples");
  if (signal.samples.size() < config.frame_len)
    throw TooShort("signal of " + std::to_string(signal.samples.size()) +
                   " samples is shorter than one frame of " + std::to_string(config.frame_len));

  const auto emphasized = PreEmphasize(signal.samples, config.pre_emphasis);
  const Matrix frames = ApplyHamming(FrameSignal(emphasized, config.frame_len, config.hop));

  Matrix base(frames.rows(), config.num_ceps);
  if (config.feature_kind == FeatureKind::kMfcc) {
    const MelFilterbank bank(config.frame_len / 2 + 1, signal.sample_rate,
                             config.num_mel_filters);
    for (std::size_t r = 0; r < frames.rows(); ++r) {
      const auto ceps = Mfcc(bank.LogEnergies(PowerSpectrum(frames.row(r))), config.num_ceps);
      std::copy(ceps.begin(), ceps.end(), base.row(r).begin());
    }
  } else {
    for (std::size_t r = 0; r < frames.rows(); ++r) {
      const auto ceps = Plp(PowerSpectrum(frames.row(r)), signal.sample_rate,
                            config.lp_order, config.num_ceps);
      std::copy(ceps.begin(), ceps.end(), base.row(r).begin());
    }
  }
  return config.with_deltas ? AppendDeltas(base) : base;
}

}  // namespace vowelkit
