// src/audio/pluck-synth.cc

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

#include "audio/pluck-synth.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "base/error.h"
#include "base/random.h"

namespace fretalign {

namespace {

// Time for the loop loss alone to attenuate by 60 dB.
constexpr double kDecayT60 = 2.5;
// Weight of the previous sample in the loop lowpass.  The classic
// two-point average uses 0.5; a small weight keeps upper partials alive.
constexpr double kLoopSmoothing = 0.05;
// Pluck point as a fraction of the string length.
constexpr double kPluckPosition = 0.2;
// Seeded noise mixed into the initial string shape, relative to its peak.
constexpr double kExcitationNoise = 1e-3;
// Peak of the uniform noise floor added to a synthesized take.
constexpr double kNoiseFloor = 2e-3;

// Body modes of a generic acoustic guitar (Hz), their quality factor and
// the gain of each mode relative to the direct path.
constexpr double kBodyModes[] = {98,  196, 278,  395,  520,  690,
                                 880, 1120, 1450, 1900, 2500, 3300};
constexpr double kBodyQ = 80.0;
constexpr double kBodyGain = 16.0;

std::complex<double> BodyResponse(double hz) {
  std::complex<double> h = 1.0;
  for (double mode : kBodyModes) {
    double r = hz / mode;
    std::complex<double> num(0.0, r / kBodyQ);
    h += kBodyGain * num / std::complex<double>(1.0 - r * r, r / kBodyQ);
  }
  return h;
}

// One period of the plucked-string displacement, band-limited to the
// harmonics below Nyquist and coloured by the body response.
std::vector<double> ExcitationShape(int n, double freq, int sample_rate) {
  std::vector<double> shape(n, 0.0);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int k = 1; k * freq < sample_rate / 2.0; ++k) {
    double amp = std::sin(k * std::numbers::pi * kPluckPosition) / (k * k);
    std::complex<double> h = BodyResponse(k * freq);
    double gain = amp * std::abs(h), phase = std::arg(h);
    for (int i = 0; i < n; ++i)
      shape[i] += gain * std::sin(two_pi * k * i / n + phase);
  }
  double peak = 0.0;
  for (double v : shape) peak = std::max(peak, std::abs(v));
  if (peak > 0.0)
    for (double &v : shape) v /= peak;
  return shape;
}

}  // namespace

AudioClip SynthPluck(Pitch pitch, double duration, int sample_rate,
                     uint64_t seed) {
  if (!(duration > 0.0))
    Fail(ErrorCode::kInvalidArgument, "pluck duration must be positive");
  if (sample_rate <= 0)
    Fail(ErrorCode::kInvalidArgument, "sample rate must be positive");
  const double freq = pitch.Frequency();
  if (!(freq < sample_rate / 4.0))
    Fail(ErrorCode::kInvalidArgument,
         pitch.Name() + " is too high for sample rate " +
             std::to_string(sample_rate));

  // Loop delay = N (delay line) + S (lowpass) + d (allpass), d in [0.1, 1.1).
  const double period = sample_rate / freq;
  const int n = static_cast<int>(std::floor(period - kLoopSmoothing - 0.1));
  const double d = period - kLoopSmoothing - n;
  const double ap_coef = (1.0 - d) / (1.0 + d);
  const double loss = std::exp(std::log(1e-3) * period / (kDecayT60 * sample_rate));

  Rng rng(seed);
  std::vector<double> line = ExcitationShape(n, freq, sample_rate);
  double mean = 0.0;
  for (double &v : line) {
    v += kExcitationNoise * rng.Uniform(-1.0, 1.0);
    mean += v;
  }
  mean /= n;
  for (double &v : line) v -= mean;

  const size_t total = static_cast<size_t>(std::llround(duration * sample_rate));
  std::vector<double> out(std::max<size_t>(total, 1));
  double prev = 0.0, ap_in = 0.0, ap_out = 0.0;
  size_t idx = 0;
  for (double &y : out) {
    double x = line[idx];
    y = x;
    double smooth = ((1.0 - kLoopSmoothing) * x + kLoopSmoothing * prev) * loss;
    prev = x;
    double ap = ap_coef * smooth + ap_in - ap_coef * ap_out;
    ap_in = smooth;
    ap_out = ap;
    line[idx] = ap;
    if (++idx == line.size()) idx = 0;
  }

  double peak = 0.0;
  for (double y : out) peak = std::max(peak, std::abs(y));
  AudioClip clip;
  clip.sample_rate = sample_rate;
  clip.samples.resize(out.size());
  for (size_t i = 0; i < out.size(); ++i)
    clip.samples[i] = static_cast<float>(peak > 0 ? out[i] / peak : 0.0);
  return clip;
}

SynthTake SynthExercise(const Exercise &ex, const TempoPolicy &policy,
                        int sample_rate, uint64_t seed) {
  ValidateExercise(ex);
  if (!(policy.inter_onset > 0.0) || policy.jitter < 0.0 ||
      policy.jitter >= policy.inter_onset || policy.overlap < 0.0 ||
      !(policy.final_duration > 0.0) || !(policy.min_amplitude > 0.0) ||
      policy.max_amplitude < policy.min_amplitude)
    Fail(ErrorCode::kInvalidArgument, "invalid tempo policy");

  Rng rng(MixSeed(seed, 0));
  const size_t count = ex.sequence.size();
  std::vector<size_t> onsets(count);
  size_t at = 0;
  for (size_t i = 0; i < count; ++i) {
    onsets[i] = at;
    double ioi = policy.inter_onset + rng.Uniform(-policy.jitter, policy.jitter);
    at += static_cast<size_t>(std::llround(ioi * sample_rate));
  }

  const size_t overlap = static_cast<size_t>(std::llround(policy.overlap * sample_rate));
  const size_t final_len =
      static_cast<size_t>(std::llround(policy.final_duration * sample_rate));
  SynthTake take;
  take.clip.sample_rate = sample_rate;
  std::vector<double> mix(onsets.back() + final_len, 0.0);
  for (size_t i = 0; i < count; ++i) {
    size_t len = i + 1 < count ? onsets[i + 1] - onsets[i] + overlap : final_len;
    len = std::min(len, mix.size() - onsets[i]);
    double amp = rng.Uniform(policy.min_amplitude, policy.max_amplitude);
    AudioClip pluck = SynthPluck(ex.sequence[i], static_cast<double>(len) / sample_rate,
                                 sample_rate, MixSeed(seed, i + 1));
    size_t release = std::min(overlap, len / 2);
    for (size_t k = 0; k < len; ++k) {
      double g = amp;
      if (release > 0 && k >= len - release) {
        double r = static_cast<double>(k - (len - release)) / release;
        g *= 0.5 * (1.0 + std::cos(std::numbers::pi * r));
      }
      mix[onsets[i] + k] += g * pluck.samples[k];
    }
    take.score.entries.push_back(
        {ex.sequence[i], static_cast<double>(onsets[i]) / sample_rate,
         static_cast<double>(len) / sample_rate});
  }

  Rng noise(MixSeed(seed, count + 1));
  for (double &v : mix) v += kNoiseFloor * noise.Uniform(-1.0, 1.0);
  double peak = 0.0;
  for (double v : mix) peak = std::max(peak, std::abs(v));
  take.clip.samples.resize(mix.size());
  for (size_t i = 0; i < mix.size(); ++i)
    take.clip.samples[i] = static_cast<float>(peak > 0 ? 0.9 * mix[i] / peak : 0.0);
  return take;
}

}  // namespace fretalign
