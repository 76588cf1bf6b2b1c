// core/src/audio_io.cc

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

#include "vowelkit/audio_io.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace vowelkit {

namespace {

std::uint32_t ReadLe32(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
         (static_cast<std::uint32_t>(b[at + 2]) << 16) | (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

std::uint16_t ReadLe16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

std::vector<double> DecodePcm16(std::span<const std::uint8_t> data, bool big_endian) {
  std::vector<double> out(data.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::uint8_t lo = big_endian ? data[2 * i + 1] : data[2 * i];
    const std::uint8_t hi = big_endian ? data[2 * i] : data[2 * i + 1];
    const auto v = static_cast<std::int16_t>(static_cast<std::uint16_t>(lo | (hi << 8)));
    out[i] = static_cast<double>(v) / 32768.0;
  }
  return out;
}

bool StartsWith(std::span<const std::uint8_t> b, std::string_view magic) {
  return b.size() >= magic.size() && std::memcmp(b.data(), magic.data(), magic.size()) == 0;
}

RawSignal DecodeWav(std::span<const std::uint8_t> b) {
  if (b.size() < 12 || !StartsWith(b.subspan(8), "WAVE")) throw FormatError("RIFF file is not WAVE");
  bool have_fmt = false;
  int rate = 0;
  std::size_t pos = 12;
  while (pos + 8 <= b.size()) {
    const std::string_view id(reinterpret_cast<const char *>(b.data() + pos), 4);
    const std::size_t size = ReadLe32(b, pos + 4);
    const std::size_t body = pos + 8;
    if (id == "fmt ") {
      if (size < 16 || body + size > b.size()) throw FormatError("truncated WAVE fmt chunk");
      std::uint16_t format = ReadLe16(b, body);
      const std::uint16_t channels = ReadLe16(b, body + 2);
      rate = static_cast<int>(ReadLe32(b, body + 4));
      const std::uint16_t bits = ReadLe16(b, body + 14);
      if (format == 0xFFFE && size >= 26) format = ReadLe16(b, body + 24);
      if (format != 1) throw FormatError("unsupported WAVE compression " + std::to_string(format));
      if (channels != 1) throw FormatError("only mono WAVE files are supported");
      if (bits != 16) throw FormatError("only 16-bit WAVE files are supported");
      if (rate <= 0) throw FormatError("WAVE sample rate must be positive");
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) throw FormatError("WAVE data chunk precedes fmt chunk");
      const std::size_t avail = std::min(size, b.size() - body);
      return RawSignal{DecodePcm16(b.subspan(body, avail), false), rate};
    }
    pos = body + size + (size & 1);
  }
  throw FormatError("WAVE file has no data chunk");
}

RawSignal DecodeSphere(std::span<const std::uint8_t> b) {
  if (b.size() < 16) throw FormatError("truncated SPHERE header");
  const std::string preamble(reinterpret_cast<const char *>(b.data()), 16);
  std::size_t header_size = 0;
  try {
    header_size = std::stoul(preamble.substr(8));
  } catch (const std::exception &) {
    throw FormatError("bad SPHERE header size");
  }
  if (header_size < 16 || header_size > b.size()) throw FormatError("truncated SPHERE header");
  std::istringstream header(std::string(reinterpret_cast<const char *>(b.data()), header_size));
  std::string line;
  std::getline(header, line);
  std::getline(header, line);
  int rate = 0, channels = 1, sample_bytes = 2;
  long long sample_count = -1;
  std::string coding = "pcm", byte_format = "01";
  while (std::getline(header, line)) {
    std::istringstream fields(line);
    std::string name, type, value;
    fields >> name;
    if (name == "end_head") break;
    if (!(fields >> type)) continue;
    std::getline(fields >> std::ws, value);
    try {
      if (name == "sample_rate") rate = static_cast<int>(std::stod(value));
      else if (name == "channel_count") channels = std::stoi(value);
      else if (name == "sample_n_bytes") sample_bytes = std::stoi(value);
      else if (name == "sample_count") sample_count = std::stoll(value);
      else if (name == "sample_coding") coding = value;
      else if (name == "sample_byte_format") byte_format = value;
    } catch (const std::exception &) {
      throw FormatError("bad SPHERE field '" + name + "'");
    }
  }
  if (coding.rfind("pcm", 0) != 0 || coding.find(',') != std::string::npos)
    throw FormatError("unsupported SPHERE sample coding '" + coding + "'");
  if (channels != 1) throw FormatError("only mono SPHERE files are supported");
  if (sample_bytes != 2) throw FormatError("only 16-bit SPHERE files are supported");
  if (rate <= 0) throw FormatError("SPHERE header lacks a positive sample_rate");
  if (byte_format != "01" && byte_format != "10")
    throw FormatError("unsupported SPHERE byte format '" + byte_format + "'");
  auto data = b.subspan(header_size);
  if (sample_count >= 0)
    data = data.subspan(0, std::min<std::size_t>(data.size(), static_cast<std::size_t>(sample_count) * 2));
  return RawSignal{DecodePcm16(data, byte_format == "10"), rate};
}

}  // namespace

RawSignal DecodeAudio(std::span<const std::uint8_t> bytes, std::optional<int> raw_sample_rate) {
  if (StartsWith(bytes, "RIFF")) return DecodeWav(bytes);
  if (StartsWith(bytes, "NIST_1A")) return DecodeSphere(bytes);
  if (raw_sample_rate) {
    if (*raw_sample_rate <= 0) throw InvalidInput("raw sample rate must be positive");
    return RawSignal{DecodePcm16(bytes, false), *raw_sample_rate};
  }
  throw FormatError("unrecognized audio format (no RIFF or NIST_1A magic)");
}

RawSignal LoadAudio(const std::filesystem::path &path, std::optional<int> raw_sample_rate) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  try {
    return DecodeAudio(bytes, raw_sample_rate);
  } catch (const FormatError &e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void WriteWav(const std::filesystem::path &path, const RawSignal &signal) {
  std::vector<std::uint8_t> out;
  auto put32 = [&](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  };
  auto put16 = [&](std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
  };
  auto tag = [&](std::string_view s) { out.insert(out.end(), s.begin(), s.end()); };
  const auto data_bytes = static_cast<std::uint32_t>(signal.samples.size() * 2);
  tag("RIFF");
  put32(36 + data_bytes);
  tag("WAVE");
  tag("fmt ");
  put32(16);
  put16(1);
  put16(1);
  put32(static_cast<std::uint32_t>(signal.sample_rate));
  put32(static_cast<std::uint32_t>(signal.sample_rate * 2));
  put16(2);
  put16(16);
  tag("data");
  put32(data_bytes);
  for (double s : signal.samples) {
    const double scaled = std::clamp(std::round(s * 32768.0), -32768.0, 32767.0);
    put16(static_cast<std::uint16_t>(static_cast<std::int16_t>(scaled)));
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  f.write(reinterpret_cast<const char *>(out.data()), static_cast<std::streamsize>(out.size()));
  if (!f) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace vowelkit
