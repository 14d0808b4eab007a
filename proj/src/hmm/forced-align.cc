// src/hmm/forced-align.cc

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

#include "hmm/forced-align.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "base/error.h"

namespace fretalign {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Relative slack under which two continuation scores count as tied.
constexpr double kTieTolerance = 1e-12;

bool AtLeast(double a, double b) {
  if (a == kNegInf) return false;
  if (b == kNegInf) return true;
  return a >= b - kTieTolerance * std::max(1.0, std::abs(b));
}

// One HMM state of the expanded left-to-right chain.
struct State {
  int segment;       // index into the expanded segment list
  bool self_loop;
};

}  // namespace

void AlignConfig::Validate() const {
  if (!(self_loop_prob > 0.0 && self_loop_prob < 1.0))
    Fail(ErrorCode::kInvalidArgument, "self_loop_prob must be in (0, 1)");
  if (min_duration_frames < 1)
    Fail(ErrorCode::kInvalidArgument, "min_duration_frames must be >= 1");
}

Segmentation ForceAlignScores(const Eigen::MatrixXd &note_scores,
                              const std::vector<std::string> &transcript,
                              const AlignConfig &cfg,
                              const Eigen::VectorXd *gap_scores) {
  cfg.Validate();
  const int num_notes = static_cast<int>(transcript.size());
  const int num_frames = static_cast<int>(note_scores.cols());
  if (num_notes == 0) Fail(ErrorCode::kInvalidArgument, "empty transcript");
  if (note_scores.rows() != num_notes)
    Fail(ErrorCode::kInvalidArgument, "score rows do not match transcript");
  const bool gaps = cfg.gap_model;
  if (gaps && (gap_scores == nullptr || gap_scores->size() != num_frames))
    Fail(ErrorCode::kInvalidArgument, "gap model enabled without gap scores");
  const int min_dur = cfg.min_duration_frames;
  if (static_cast<long>(num_frames) < static_cast<long>(num_notes) * min_dur)
    Fail(ErrorCode::kInfeasibleAlignment,
         std::to_string(num_notes) + " notes need at least " +
             std::to_string(num_notes * min_dur) + " frames, got " +
             std::to_string(num_frames));

  // Expanded segments: [gap] note_0 .. note_{N-1} [gap].  Segment k of the
  // expansion reads emissions from row_of[k] (-1 for gap scores).
  std::vector<int> row_of;
  if (gaps) row_of.push_back(-1);
  for (int n = 0; n < num_notes; ++n) row_of.push_back(n);
  if (gaps) row_of.push_back(-1);

  // Each note becomes a chain of min_dur states, the last one self-looping.
  std::vector<State> states;
  for (int k = 0; k < static_cast<int>(row_of.size()); ++k) {
    int len = row_of[k] < 0 ? 1 : min_dur;
    for (int r = 0; r < len; ++r) states.push_back({k, r == len - 1});
  }
  const int num_states = static_cast<int>(states.size());
  const int first_note_state = gaps ? 1 : 0;
  const int last_note_state = gaps ? num_states - 2 : num_states - 1;

  auto emit = [&](int s, int t) {
    int row = row_of[states[s].segment];
    return row < 0 ? (*gap_scores)(t) : note_scores(row, t);
  };
  const double log_stay = std::log(cfg.self_loop_prob);
  const double log_advance = std::log1p(-cfg.self_loop_prob);
  // Cost of moving from state s to s + 1.
  auto step = [&](int s) {
    return states[s].segment == states[s + 1].segment ? log_stay : log_advance;
  };

  // Backward pass: beta(t, s) is the best score of frames t..T-1 given that
  // frame t is emitted by state s.
  Eigen::MatrixXd beta = Eigen::MatrixXd::Constant(num_frames, num_states, kNegInf);
  const int last = num_frames - 1;
  beta(last, num_states - 1) = emit(num_states - 1, last);
  if (gaps) beta(last, last_note_state) = emit(last_note_state, last);
  for (int t = last - 1; t >= 0; --t) {
    for (int s = 0; s < num_states; ++s) {
      double best = kNegInf;
      if (states[s].self_loop && beta(t + 1, s) != kNegInf)
        best = log_stay + beta(t + 1, s);
      if (s + 1 < num_states && beta(t + 1, s + 1) != kNegInf)
        best = std::max(best, step(s) + beta(t + 1, s + 1));
      if (best != kNegInf) beta(t, s) = emit(s, t) + best;
    }
  }

  // Forward trace, advancing whenever advancing stays optimal.
  int state = 0;
  if (gaps && AtLeast(beta(0, first_note_state), beta(0, 0))) state = first_note_state;
  if (beta(0, state) == kNegInf)
    Fail(ErrorCode::kInfeasibleAlignment, "no feasible alignment");
  std::vector<int> path(num_frames);
  path[0] = state;
  for (int t = 0; t < last; ++t) {
    double stay = states[state].self_loop ? log_stay + beta(t + 1, state) : kNegInf;
    double advance = state + 1 < num_states ? step(state) + beta(t + 1, state + 1)
                                            : kNegInf;
    if (AtLeast(advance, stay))
      ++state;
    else if (stay == kNegInf)
      Fail(ErrorCode::kInternal, "viterbi trace left the feasible region");
    path[t + 1] = state;
  }

  Segmentation seg;
  double total = 0.0;
  for (int t = 0; t < num_frames; ++t) {
    total += emit(path[t], t);
    if (t > 0) total += path[t] == path[t - 1] ? log_stay : step(path[t - 1]);
    int k = states[path[t]].segment;
    if (t == 0 || k != states[path[t - 1]].segment) {
      int row = row_of[k];
      seg.segments.push_back({row < 0 ? std::string(kGapLabel) : transcript[row], t,
                              t + 1, row < 0});
    } else {
      seg.segments.back().end = t + 1;
    }
  }
  seg.total_log_likelihood = total;
  return seg;
}

void CheckFingerprint(const ModelSet &models, const FeatureMatrix &features) {
  if (!models.fingerprint.empty() && !features.fingerprint.empty() &&
      models.fingerprint != features.fingerprint)
    Fail(ErrorCode::kConfigMismatch,
         "models were trained with features '" + models.fingerprint +
             "' but the input uses '" + features.fingerprint + "'");
}

Segmentation ForceAlign(const FeatureMatrix &features,
                        const std::vector<std::string> &transcript,
                        const ModelSet &models, const AlignConfig &cfg) {
  CheckFingerprint(models, features);
  const int num_frames = features.NumFrames();
  Eigen::MatrixXd scores(transcript.size(), num_frames);
  std::map<std::string, Eigen::VectorXd> cache;
  auto score_all = [&](const std::string &label) -> const Eigen::VectorXd & {
    auto it = cache.find(label);
    if (it != cache.end()) return it->second;
    const NoteModel &m = models.Get(label);
    Eigen::VectorXd v(num_frames);
    for (int t = 0; t < num_frames; ++t)
      v(t) = m.LogLikelihood(features.frames.row(t).transpose());
    return cache.emplace(label, std::move(v)).first->second;
  };
  for (size_t n = 0; n < transcript.size(); ++n)
    scores.row(static_cast<long>(n)) = score_all(transcript[n]).transpose();
  if (cfg.gap_model) {
    Eigen::VectorXd gap = score_all(kGapLabel);
    return ForceAlignScores(scores, transcript, cfg, &gap);
  }
  return ForceAlignScores(scores, transcript, cfg);
}

}  // namespace fretalign
