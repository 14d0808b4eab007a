// src/hmm/segment-labels.cc

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

#include "hmm/segment-labels.h"

#include <cmath>

#include "base/error.h"

namespace fretalign {

LabelTrack SegmentationToLabels(const Segmentation &seg, const FeatureMatrix &features) {
  LabelTrack track;
  int expect = 0;
  for (const Segment &s : seg.segments) {
    if (s.start != expect || s.end <= s.start)
      Fail(ErrorCode::kInvalidArgument, "segments do not tile the frames");
    expect = s.end;
    if (s.gap) continue;
    track.labels.push_back({FrameTime(s.start, features), FrameTime(s.end, features),
                            s.label});
  }
  if (expect != features.NumFrames())
    Fail(ErrorCode::kInvalidArgument,
         "segmentation covers " + std::to_string(expect) + " frames, features have " +
             std::to_string(features.NumFrames()));
  return track;
}

int CollectTrainingSegments(const FeatureMatrix &features, const LabelTrack &track,
                            bool collect_gaps, TrainingData *data) {
  const int num_frames = features.NumFrames();
  const double half = 0.5 * features.frame_length;
  auto center = [&](int t) { return features.start_offset + t * features.hop + half; };
  std::vector<bool> covered(num_frames, false);
  int used = 0;
  for (const Label &l : track.labels) {
    // First frame whose center is >= start, then extend while < end.
    int t = static_cast<int>(std::ceil((l.start - features.start_offset - half) /
                                       features.hop));
    t = std::max(t, 0);
    while (t < num_frames && center(t) < l.start) ++t;
    while (t > 0 && center(t - 1) >= l.start) --t;
    int first = t;
    while (t < num_frames && center(t) < l.end) ++t;
    if (t == first) continue;
    (*data)[l.text].push_back(features.frames.middleRows(first, t - first));
    for (int i = first; i < t; ++i) covered[i] = true;
    ++used;
  }
  if (collect_gaps) {
    int t = 0;
    while (t < num_frames) {
      if (covered[t]) {
        ++t;
        continue;
      }
      int first = t;
      while (t < num_frames && !covered[t]) ++t;
      (*data)[kGapLabel].push_back(features.frames.middleRows(first, t - first));
    }
  }
  return used;
}

}  // namespace fretalign
