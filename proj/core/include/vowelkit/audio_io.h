// core/include/vowelkit/audio_io.h

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

#ifndef VOWELKIT_AUDIO_IO_H_
#define VOWELKIT_AUDIO_IO_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>

#include "vowelkit/signal_frontend.h"

namespace vowelkit {

// Reads RIFF WAVE (PCM16 mono) or NIST SPHERE (PCM16 mono, either byte
// order). Files with neither magic are read as headerless little-endian
// PCM16 when |raw_sample_rate| is given; otherwise FormatError. Samples are
// divided by 32768.
RawSignal LoadAudio(const std::filesystem::path &path,
                    std::optional<int> raw_sample_rate = std::nullopt);
RawSignal DecodeAudio(std::span<const std::uint8_t> bytes,
                      std::optional<int> raw_sample_rate = std::nullopt);

// Writes a RIFF WAVE PCM16 mono file; samples are scaled by 32768, rounded
// and clipped to the 16-bit range.
void WriteWav(const std::filesystem::path &path, const RawSignal &signal);

}  // namespace vowelkit

#endif  // VOWELKIT_AUDIO_IO_H_
