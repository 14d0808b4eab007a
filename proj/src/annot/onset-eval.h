// src/annot/onset-eval.h

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

#ifndef FRETALIGN_ANNOT_ONSET_EVAL_H_
#define FRETALIGN_ANNOT_ONSET_EVAL_H_

#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "annot/labels.h"

namespace fretalign {

struct OnsetError {
  std::string note;
  double abs_ms = 0.0;
  double signed_ms = 0.0;  // predicted - reference
};

struct OnsetErrorReport {
  std::vector<OnsetError> per_note;
  double max_ms = 0.0;
  double mean_ms = 0.0;
  double median_ms = 0.0;  // of absolute errors
  // (threshold ms, percentage of notes with |error| <= threshold)
  std::vector<std::pair<double, double>> cumulative;
};

inline constexpr double kInfiniteThreshold = std::numeric_limits<double>::infinity();

// {2, 4, 6, 8, 10, inf} ms.
std::vector<double> DefaultThresholds();

// Percentages of `abs_errors_ms` at or below each threshold; 100 for every
// threshold when there are no errors.
std::vector<std::pair<double, double>> CumulativeTable(
    const std::vector<double> &abs_errors_ms, const std::vector<double> &thresholds);

// Aggregates already-matched errors, e.g. pooled over many files.
OnsetErrorReport ReportFromErrors(std::vector<OnsetError> errors,
                                  const std::vector<double> &thresholds);

// Index-wise onset comparison.  Throws kMisalignedTracks when the counts
// or the note-name sequences differ.
OnsetErrorReport OnsetErrors(const LabelTrack &predicted, const LabelTrack &reference,
                             const std::vector<double> &thresholds = DefaultThresholds());

// Negated median signed onset error: the constant shift (ms) that minimizes
// the summed absolute onset error when applied to `predicted`.
double EstimateConstantShift(const LabelTrack &predicted, const LabelTrack &reference);

// Occurrences of each label text across tracks.
std::map<std::string, int> NoteCounts(const std::vector<LabelTrack> &tracks);

// "threshold_ms,percentage" rows; the open-ended threshold prints as "inf".
std::string CumulativeCsv(const OnsetErrorReport &report);
// "note,count" rows ordered by pitch when names parse as notes, by name
// otherwise.
std::string NoteCountsCsv(const std::map<std::string, int> &counts);
// "max_ms,mean_ms" header and one value row.
std::string SummaryCsv(const OnsetErrorReport &report);

}  // namespace fretalign

#endif  // FRETALIGN_ANNOT_ONSET_EVAL_H_
