// src/hmm/forced-align.h

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

#ifndef FRETALIGN_HMM_FORCED_ALIGN_H_
#define FRETALIGN_HMM_FORCED_ALIGN_H_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "feat/mfcc.h"
#include "hmm/note-model.h"

namespace fretalign {

struct AlignConfig {
  double self_loop_prob = 0.9;
  int min_duration_frames = 5;
  // Optional leading/trailing gap segments scored by the kGapLabel model.
  bool gap_model = false;

  void Validate() const;  // throws kInvalidArgument
};

struct Segment {
  std::string label;
  int start = 0;  // first frame
  int end = 0;    // one past the last frame
  bool gap = false;
};

// Segments tile [0, T) in order; non-gap labels follow the transcript.
struct Segmentation {
  std::vector<Segment> segments;
  double total_log_likelihood = 0.0;
};

// Forced Viterbi alignment on precomputed emission scores.
//
// `note_scores` is N x T: row n holds the per-frame log-likelihood of the
// n-th transcript note.  With cfg.gap_model, `gap_scores` (length T) scores
// an optional leading and trailing gap segment.  The result maximizes
//   sum of emissions + (frames - segments) * log(p) + (segments - 1) * log(1-p)
// over all left-to-right segmentations whose note segments are at least
// min_duration_frames long.  Among (numerically) equal-scoring
// segmentations, the one with the lexicographically earliest boundaries is
// returned, so labels err towards starting before an onset.
Segmentation ForceAlignScores(const Eigen::MatrixXd &note_scores,
                              const std::vector<std::string> &transcript,
                              const AlignConfig &cfg,
                              const Eigen::VectorXd *gap_scores = nullptr);

// Scores `features` against the transcript's models and aligns.  Errors:
// kUnknownNote (transcript note without a model, or missing gap model),
// kInfeasibleAlignment (too few frames), kConfigMismatch (features were not
// computed with the configuration the models were trained on).
Segmentation ForceAlign(const FeatureMatrix &features,
                        const std::vector<std::string> &transcript,
                        const ModelSet &models, const AlignConfig &cfg);

// Throws kConfigMismatch unless both fingerprints are empty or equal.
void CheckFingerprint(const ModelSet &models, const FeatureMatrix &features);

}  // namespace fretalign

#endif  // FRETALIGN_HMM_FORCED_ALIGN_H_
