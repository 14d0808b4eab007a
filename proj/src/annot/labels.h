// src/annot/labels.h

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

#ifndef FRETALIGN_ANNOT_LABELS_H_
#define FRETALIGN_ANNOT_LABELS_H_

#include <string>
#include <string_view>
#include <vector>

namespace fretalign {

struct Label {
  double start = 0.0;  // seconds
  double end = 0.0;
  std::string text;
};

// Sorted by start, non-overlapping; as read from / written to a .lab file.
struct LabelTrack {
  std::vector<Label> labels;
  std::string source;
};

// Throws kInvalidArgument naming the offending label.
void ValidateTrack(const LabelTrack &track);

// "start end name" per line, decimal seconds; blank lines skipped.  The
// labels are sorted after parsing.  Throws kParse with the line number for
// malformed lines, reversed intervals and overlaps.
LabelTrack ParseLab(std::string_view text, const std::string &source = "");
LabelTrack ReadLab(const std::string &path);

// "%.3f %.3f %s\n" per label.
std::string FormatLab(const LabelTrack &track);
void WriteLab(const LabelTrack &track, const std::string &path);

// Moves every boundary by delta_ms, clamping starts at 0.  Throws
// kInvalidArgument if an end would land at or before 0.
LabelTrack ShiftLabels(const LabelTrack &track, double delta_ms);

}  // namespace fretalign

#endif  // FRETALIGN_ANNOT_LABELS_H_
