// src/audio/pluck-synth.h

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

#ifndef FRETALIGN_AUDIO_PLUCK_SYNTH_H_
#define FRETALIGN_AUDIO_PLUCK_SYNTH_H_

#include <cstdint>
#include <vector>

#include "audio/audio-clip.h"
#include "music/music.h"

namespace fretalign {

struct SynthNote {
  Pitch pitch;
  double onset = 0.0;     // seconds, a whole number of samples
  double duration = 0.0;  // seconds the pluck sounds, release included
};

// Ground truth for a synthesized take.  Onsets strictly increase.
struct SynthScore {
  std::vector<SynthNote> entries;
};

struct TempoPolicy {
  double inter_onset = 0.5;     // seconds between plucks
  double jitter = 0.05;         // uniform +/- seconds added per interval
  double overlap = 0.05;        // how long a note rings past the next onset
  double final_duration = 1.0;  // length of the last note
  double min_amplitude = 0.6;   // per-pluck peak level, drawn uniformly
  double max_amplitude = 1.0;
};

// Karplus-Strong plucked string with a first-order allpass for fractional
// loop delay.  The initial string shape is the plucked-string profile with
// a fixed guitar-body response folded into its harmonics (commuted
// synthesis), plus a trace of seeded noise.  Peak-normalized to 1.  Throws kInvalidArgument for a
// non-positive duration or sample rate, or if the frequency is not below a
// quarter of the sample rate.
AudioClip SynthPluck(Pitch pitch, double duration, int sample_rate,
                     uint64_t seed);

struct SynthTake {
  AudioClip clip;
  SynthScore score;
};

// First onset at t = 0.  Each pluck is faded out over `overlap` seconds
// after the following onset.  A low seeded noise floor stands in for the
// recording chain; the mix is scaled to a 0.9 peak.
SynthTake SynthExercise(const Exercise &ex, const TempoPolicy &policy,
                        int sample_rate, uint64_t seed);

}  // namespace fretalign

#endif  // FRETALIGN_AUDIO_PLUCK_SYNTH_H_
