// src/audio/audio-clip.h

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

#ifndef FRETALIGN_AUDIO_AUDIO_CLIP_H_
#define FRETALIGN_AUDIO_AUDIO_CLIP_H_

#include <string>
#include <vector>

namespace fretalign {

inline constexpr int kDefaultSampleRate = 44100;

// Mono audio in [-1, 1].
struct AudioClip {
  std::vector<float> samples;
  int sample_rate = kDefaultSampleRate;

  double Duration() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

// RIFF/WAVE PCM reader.  Only 16-bit integer PCM is accepted (format tag 1,
// or WAVE_FORMAT_EXTENSIBLE with a PCM sub-format); channels are averaged.
// Errors: kFileNotFound, kUnsupportedEncoding, kTruncatedData,
// kMalformedFile.
AudioClip ReadWav(const std::string &path);
AudioClip DecodeWav(const std::string &bytes);

// 16-bit mono PCM.  Values outside [-1, 1) saturate.  Throws kIo.
void WriteWav(const AudioClip &clip, const std::string &path);
std::string EncodeWav(const AudioClip &clip);

}  // namespace fretalign

#endif  // FRETALIGN_AUDIO_AUDIO_CLIP_H_
