// src/audio/wav-io.cc

// Copyright 2026  The fretalign Authors
//
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

#include <cmath>
#include <cstdint>
#include <cstring>

#include "audio/audio-clip.h"
#include "base/error.h"
#include "util/text.h"

namespace fretalign {

namespace {

uint16_t GetU16(const std::string &b, size_t pos) {
  return static_cast<uint16_t>(static_cast<uint8_t>(b[pos]) |
                               (static_cast<uint8_t>(b[pos + 1]) << 8));
}

uint32_t GetU32(const std::string &b, size_t pos) {
  return static_cast<uint32_t>(GetU16(b, pos)) |
         (static_cast<uint32_t>(GetU16(b, pos + 2)) << 16);
}

void PutU16(std::string *b, uint16_t v) {
  b->push_back(static_cast<char>(v & 0xff));
  b->push_back(static_cast<char>(v >> 8));
}

void PutU32(std::string *b, uint32_t v) {
  PutU16(b, static_cast<uint16_t>(v & 0xffff));
  PutU16(b, static_cast<uint16_t>(v >> 16));
}

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatExtensible = 0xFFFE;

}  // namespace

AudioClip DecodeWav(const std::string &b) {
  if (b.size() < 12 || b.compare(0, 4, "RIFF") != 0 ||
      b.compare(8, 4, "WAVE") != 0)
    Fail(ErrorCode::kMalformedFile, "not a RIFF/WAVE file");

  bool have_fmt = false;
  uint16_t channels = 0, bits = 0;
  uint32_t sample_rate = 0;
  size_t pos = 12;
  while (pos + 8 <= b.size()) {
    std::string id = b.substr(pos, 4);
    uint32_t size = GetU32(b, pos + 4);
    size_t body = pos + 8;
    if (id == "fmt ") {
      if (size < 16 || body + size > b.size())
        Fail(ErrorCode::kMalformedFile, "short fmt chunk");
      uint16_t tag = GetU16(b, body);
      channels = GetU16(b, body + 2);
      sample_rate = GetU32(b, body + 4);
      bits = GetU16(b, body + 14);
      if (tag == kFormatExtensible) {
        if (size < 40) Fail(ErrorCode::kMalformedFile, "short extensible fmt");
        tag = GetU16(b, body + 24);
      }
      if (tag != kFormatPcm)
        Fail(ErrorCode::kUnsupportedEncoding,
             "format tag " + std::to_string(tag) + " is not integer PCM");
      if (bits != 16)
        Fail(ErrorCode::kUnsupportedEncoding,
             std::to_string(bits) + "-bit PCM is not supported (16-bit only)");
      if (channels == 0 || sample_rate == 0)
        Fail(ErrorCode::kMalformedFile, "zero channels or sample rate");
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt)
        Fail(ErrorCode::kMalformedFile, "data chunk precedes fmt chunk");
      if (body + size > b.size())
        Fail(ErrorCode::kTruncatedData,
             "data chunk declares " + std::to_string(size) + " bytes, only " +
                 std::to_string(b.size() - body) + " present");
      size_t frame_bytes = 2u * channels;
      size_t frames = size / frame_bytes;
      AudioClip clip;
      clip.sample_rate = static_cast<int>(sample_rate);
      clip.samples.resize(frames);
      for (size_t f = 0; f < frames; ++f) {
        double acc = 0.0;
        for (size_t c = 0; c < channels; ++c) {
          auto v = static_cast<int16_t>(GetU16(b, body + f * frame_bytes + 2 * c));
          acc += v / 32768.0;
        }
        clip.samples[f] = static_cast<float>(acc / channels);
      }
      return clip;
    }
    pos = body + size + (size & 1);
  }
  if (!have_fmt) Fail(ErrorCode::kTruncatedData, "no fmt chunk found");
  Fail(ErrorCode::kTruncatedData, "no data chunk found");
}

AudioClip ReadWav(const std::string &path) {
  try {
    return DecodeWav(util::ReadFile(path));
  } catch (const Error &e) {
    if (e.code() == ErrorCode::kFileNotFound) throw;
    throw Error(e.code(), path + ": " + e.what());
  }
}

std::string EncodeWav(const AudioClip &clip) {
  if (clip.sample_rate <= 0)
    Fail(ErrorCode::kInvalidArgument, "sample rate must be positive");
  const uint32_t data_bytes = static_cast<uint32_t>(clip.samples.size() * 2);
  std::string b;
  b.reserve(44 + data_bytes);
  b += "RIFF";
  PutU32(&b, 36 + data_bytes);
  b += "WAVEfmt ";
  PutU32(&b, 16);
  PutU16(&b, kFormatPcm);
  PutU16(&b, 1);
  PutU32(&b, static_cast<uint32_t>(clip.sample_rate));
  PutU32(&b, static_cast<uint32_t>(clip.sample_rate) * 2);
  PutU16(&b, 2);
  PutU16(&b, 16);
  b += "data";
  PutU32(&b, data_bytes);
  for (float s : clip.samples) {
    double v = std::nearbyint(static_cast<double>(s) * 32768.0);
    if (!(v < 32767.0)) v = 32767.0;  // also maps NaN to max
    if (v < -32768.0) v = -32768.0;
    PutU16(&b, static_cast<uint16_t>(static_cast<int16_t>(v)));
  }
  return b;
}

void WriteWav(const AudioClip &clip, const std::string &path) {
  util::WriteFileAtomic(path, EncodeWav(clip));
}

}  // namespace fretalign
