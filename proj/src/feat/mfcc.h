// src/feat/mfcc.h

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

#ifndef FRETALIGN_FEAT_MFCC_H_
#define FRETALIGN_FEAT_MFCC_H_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "audio/audio-clip.h"

namespace fretalign {

inline constexpr int kNumCepstra = 13;
inline constexpr int kFeatureDim = 3 * kNumCepstra;

struct FeatureConfig {
  double frame_length = 0.025;  // seconds
  double hop = 0.010;           // seconds
  double pre_emphasis = 0.97;
  int mel_filters = 26;
  int cepstra = kNumCepstra;
  int delta_window = 2;
  double log_floor = 1e-10;

  // Throws kInvalidArgument.
  void Validate() const;
  // Stable text identity of the configuration at a given sample rate; stored
  // in model files and compared before alignment.
  std::string Fingerprint(int sample_rate) const;
};

// Rows are frames: columns [0,13) static c0..c12, [13,26) velocity,
// [26,39) acceleration.
struct FeatureMatrix {
  Eigen::MatrixXd frames;
  double hop = 0.010;
  double start_offset = 0.0;  // time of the left edge of frame 0
  double frame_length = 0.025;
  std::string fingerprint;

  int NumFrames() const { return static_cast<int>(frames.rows()); }
};

// Geometry of the triangular filterbank, evenly spaced on the mel scale
// between 0 Hz and Nyquist.
struct MelFilterbank {
  int fft_size = 0;
  std::vector<double> center_hz;  // one per filter
  // weights[m] has fft_size/2 + 1 entries.
  std::vector<std::vector<double>> weights;
};

double HzToMel(double hz);
double MelToHz(double mel);
int FrameSamples(const FeatureConfig &cfg, int sample_rate);
int HopSamples(const FeatureConfig &cfg, int sample_rate);
int FftSizeFor(int frame_samples);
MelFilterbank MakeMelFilterbank(const FeatureConfig &cfg, int sample_rate);

// Pre-emphasis, Hamming window and zero-padded FFT magnitude followed by the
// filterbank, one row per frame, before the log.  Exposed for testing.
Eigen::MatrixXd MelEnergies(const AudioClip &clip, const FeatureConfig &cfg);

// The 39-dimensional MFCC stream.  Throws kTooShort when the clip is shorter
// than one frame.
FeatureMatrix ComputeMfcc(const AudioClip &clip, const FeatureConfig &cfg);

// Regression deltas over +/- window frames with edge replication.
Eigen::MatrixXd ComputeDeltas(const Eigen::MatrixXd &block, int window);

// start_offset + index * hop, for 0 <= index <= T.  Throws kInvalidArgument.
double FrameTime(int index, const FeatureMatrix &features);

// Header "c0..c12,d0..d12,a0..a12", one row per frame.
std::string FeaturesToCsv(const FeatureMatrix &features);

}  // namespace fretalign

#endif  // FRETALIGN_FEAT_MFCC_H_
