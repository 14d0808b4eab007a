// src/feat/mfcc.cc

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

#include "feat/mfcc.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/FFT>

#include "base/error.h"
#include "util/text.h"

namespace fretalign {

void FeatureConfig::Validate() const {
  if (!(hop > 0.0) || !(frame_length > hop))
    Fail(ErrorCode::kInvalidArgument, "need frame_length > hop > 0");
  if (cepstra != kNumCepstra)
    Fail(ErrorCode::kInvalidArgument, "cepstra must be 13");
  if (mel_filters < cepstra)
    Fail(ErrorCode::kInvalidArgument, "mel_filters must be >= cepstra");
  if (delta_window < 1)
    Fail(ErrorCode::kInvalidArgument, "delta_window must be >= 1");
  if (!(log_floor > 0.0))
    Fail(ErrorCode::kInvalidArgument, "log_floor must be positive");
  if (!(pre_emphasis >= 0.0 && pre_emphasis < 1.0))
    Fail(ErrorCode::kInvalidArgument, "pre_emphasis must be in [0, 1)");
}

std::string FeatureConfig::Fingerprint(int sample_rate) const {
  std::ostringstream os;
  os << "mfcc39;sr=" << sample_rate << ";frame=" << util::FormatExact(frame_length)
     << ";hop=" << util::FormatExact(hop)
     << ";preemph=" << util::FormatExact(pre_emphasis) << ";mel=" << mel_filters
     << ";cep=" << cepstra << ";delta=" << delta_window
     << ";floor=" << util::FormatExact(log_floor);
  return os.str();
}

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double MelToHz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

int FrameSamples(const FeatureConfig &cfg, int sample_rate) {
  return static_cast<int>(std::lround(cfg.frame_length * sample_rate));
}

int HopSamples(const FeatureConfig &cfg, int sample_rate) {
  return static_cast<int>(std::lround(cfg.hop * sample_rate));
}

int FftSizeFor(int frame_samples) {
  int n = 1;
  while (n < frame_samples) n <<= 1;
  return n;
}

MelFilterbank MakeMelFilterbank(const FeatureConfig &cfg, int sample_rate) {
  MelFilterbank fb;
  fb.fft_size = FftSizeFor(FrameSamples(cfg, sample_rate));
  const int bins = fb.fft_size / 2 + 1;
  const int m = cfg.mel_filters;
  const double mel_hi = HzToMel(sample_rate / 2.0);
  std::vector<double> edges(m + 2);
  for (int i = 0; i < m + 2; ++i) edges[i] = MelToHz(mel_hi * i / (m + 1));
  fb.center_hz.assign(edges.begin() + 1, edges.end() - 1);
  fb.weights.assign(m, std::vector<double>(bins, 0.0));
  for (int f = 0; f < m; ++f) {
    const double lo = edges[f], mid = edges[f + 1], hi = edges[f + 2];
    for (int k = 0; k < bins; ++k) {
      double hz = static_cast<double>(k) * sample_rate / fb.fft_size;
      if (hz > lo && hz < hi)
        fb.weights[f][k] = hz <= mid ? (hz - lo) / (mid - lo) : (hi - hz) / (hi - mid);
    }
  }
  return fb;
}

Eigen::MatrixXd MelEnergies(const AudioClip &clip, const FeatureConfig &cfg) {
  cfg.Validate();
  const int sr = clip.sample_rate;
  const int frame = FrameSamples(cfg, sr);
  const int hop = HopSamples(cfg, sr);
  const long len = static_cast<long>(clip.samples.size());
  if (hop < 1 || len < frame)
    Fail(ErrorCode::kTooShort,
         "clip of " + std::to_string(len) + " samples is shorter than one " +
             std::to_string(frame) + "-sample frame");
  const int num_frames = 1 + static_cast<int>((len - frame) / hop);
  const MelFilterbank fb = MakeMelFilterbank(cfg, sr);
  const int bins = fb.fft_size / 2 + 1;

  std::vector<double> emph(len);
  for (long i = 0; i < len; ++i)
    emph[i] = clip.samples[i] - (i > 0 ? cfg.pre_emphasis * clip.samples[i - 1] : 0.0);

  std::vector<double> window(frame);
  for (int i = 0; i < frame; ++i)
    window[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / (frame - 1));

  Eigen::FFT<double> fft;
  std::vector<double> buf(fb.fft_size);
  std::vector<std::complex<double>> spec;
  std::vector<double> mag(bins);
  Eigen::MatrixXd energies(num_frames, cfg.mel_filters);
  for (int t = 0; t < num_frames; ++t) {
    const long off = static_cast<long>(t) * hop;
    std::fill(buf.begin(), buf.end(), 0.0);
    for (int i = 0; i < frame; ++i) buf[i] = emph[off + i] * window[i];
    fft.fwd(spec, buf);
    for (int k = 0; k < bins; ++k) mag[k] = std::abs(spec[k]);
    for (int f = 0; f < cfg.mel_filters; ++f) {
      double e = 0.0;
      const auto &w = fb.weights[f];
      for (int k = 0; k < bins; ++k) e += w[k] * mag[k];
      energies(t, f) = e;
    }
  }
  return energies;
}

Eigen::MatrixXd ComputeDeltas(const Eigen::MatrixXd &block, int window) {
  if (window < 1) Fail(ErrorCode::kInvalidArgument, "delta window must be >= 1");
  const long rows = block.rows();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rows, block.cols());
  if (rows == 0) return out;
  double denom = 0.0;
  for (int n = 1; n <= window; ++n) denom += n * n;
  denom *= 2.0;
  auto clamp = [rows](long r) { return r < 0 ? 0 : (r >= rows ? rows - 1 : r); };
  for (long t = 0; t < rows; ++t) {
    for (int n = 1; n <= window; ++n)
      out.row(t) += n * (block.row(clamp(t + n)) - block.row(clamp(t - n)));
    out.row(t) /= denom;
  }
  return out;
}

FeatureMatrix ComputeMfcc(const AudioClip &clip, const FeatureConfig &cfg) {
  Eigen::MatrixXd energies = MelEnergies(clip, cfg);
  const int m = cfg.mel_filters;
  const long num_frames = energies.rows();

  // Orthonormal DCT-II.
  Eigen::MatrixXd dct(m, cfg.cepstra);
  for (int k = 0; k < cfg.cepstra; ++k) {
    double scale = std::sqrt((k == 0 ? 1.0 : 2.0) / m);
    for (int j = 0; j < m; ++j)
      dct(j, k) = scale * std::cos(std::numbers::pi * k * (j + 0.5) / m);
  }
  Eigen::MatrixXd logs = energies.unaryExpr(
      [&](double e) { return std::log(std::max(e, cfg.log_floor)); });
  Eigen::MatrixXd stat = logs * dct;

  FeatureMatrix out;
  out.frames.resize(num_frames, 3 * cfg.cepstra);
  Eigen::MatrixXd vel = ComputeDeltas(stat, cfg.delta_window);
  out.frames.leftCols(cfg.cepstra) = stat;
  out.frames.middleCols(cfg.cepstra, cfg.cepstra) = vel;
  out.frames.rightCols(cfg.cepstra) = ComputeDeltas(vel, cfg.delta_window);
  out.hop = static_cast<double>(HopSamples(cfg, clip.sample_rate)) / clip.sample_rate;
  out.frame_length =
      static_cast<double>(FrameSamples(cfg, clip.sample_rate)) / clip.sample_rate;
  out.start_offset = 0.0;
  out.fingerprint = cfg.Fingerprint(clip.sample_rate);
  return out;
}

double FrameTime(int index, const FeatureMatrix &features) {
  if (index < 0 || index > features.NumFrames())
    Fail(ErrorCode::kInvalidArgument,
         "frame index " + std::to_string(index) + " outside [0, " +
             std::to_string(features.NumFrames()) + "]");
  return features.start_offset + index * features.hop;
}

std::string FeaturesToCsv(const FeatureMatrix &features) {
  std::ostringstream os;
  const int n = static_cast<int>(features.frames.cols()) / 3;
  const char *prefix[3] = {"c", "d", "a"};
  for (int b = 0; b < 3; ++b)
    for (int k = 0; k < n; ++k) os << (b || k ? "," : "") << prefix[b] << k;
  os << '\n';
  for (long t = 0; t < features.frames.rows(); ++t) {
    for (long c = 0; c < features.frames.cols(); ++c)
      os << (c ? "," : "") << util::FormatExact(features.frames(t, c));
    os << '\n';
  }
  return os.str();
}

}  // namespace fretalign
