// src/hmm/segment-labels.h

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

#ifndef FRETALIGN_HMM_SEGMENT_LABELS_H_
#define FRETALIGN_HMM_SEGMENT_LABELS_H_

#include "annot/labels.h"
#include "feat/mfcc.h"
#include "hmm/forced-align.h"
#include "hmm/note-model.h"

namespace fretalign {

// One label per note segment, [FrameTime(start), FrameTime(end)).  Gap
// segments produce no label.  Throws kInvalidArgument if the segmentation
// does not fit the feature matrix.
LabelTrack SegmentationToLabels(const Segmentation &seg, const FeatureMatrix &features);

// Adds one training segment per label: the frames whose centers fall inside
// the label interval.  Labels that capture no frame are skipped.  With
// `collect_gaps`, each maximal run of frames outside every label is added
// under kGapLabel.  Returns the number of labels that contributed.
int CollectTrainingSegments(const FeatureMatrix &features, const LabelTrack &track,
                            bool collect_gaps, TrainingData *data);

}  // namespace fretalign

#endif  // FRETALIGN_HMM_SEGMENT_LABELS_H_
