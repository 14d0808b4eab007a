// src/annot/onset-eval.cc

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

#include "annot/onset-eval.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>

#include "base/error.h"
#include "music/music.h"

namespace fretalign {

namespace {

// Absorbs the sub-microsecond noise of converting seconds to ms.
constexpr double kThresholdSlackMs = 1e-9;

void CheckMatched(const LabelTrack &predicted, const LabelTrack &reference) {
  if (predicted.labels.size() != reference.labels.size())
    Fail(ErrorCode::kMisalignedTracks,
         "predicted has " + std::to_string(predicted.labels.size()) +
             " labels, reference has " + std::to_string(reference.labels.size()));
  for (size_t i = 0; i < predicted.labels.size(); ++i) {
    if (predicted.labels[i].text != reference.labels[i].text)
      Fail(ErrorCode::kMisalignedTracks,
           "note mismatch at index " + std::to_string(i) + ": '" +
               predicted.labels[i].text + "' vs '" + reference.labels[i].text + "'");
  }
}

std::vector<double> SignedErrors(const LabelTrack &predicted,
                                 const LabelTrack &reference) {
  CheckMatched(predicted, reference);
  std::vector<double> out;
  for (size_t i = 0; i < predicted.labels.size(); ++i)
    out.push_back(1000.0 * (predicted.labels[i].start - reference.labels[i].start));
  return out;
}

double Median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

}  // namespace

std::vector<double> DefaultThresholds() { return {2, 4, 6, 8, 10, kInfiniteThreshold}; }

std::vector<std::pair<double, double>> CumulativeTable(
    const std::vector<double> &abs_errors_ms, const std::vector<double> &thresholds) {
  std::vector<double> sorted_thresholds = thresholds;
  std::sort(sorted_thresholds.begin(), sorted_thresholds.end());
  std::vector<std::pair<double, double>> out;
  for (double thr : sorted_thresholds) {
    if (abs_errors_ms.empty()) {
      out.emplace_back(thr, 100.0);
      continue;
    }
    size_t within = std::count_if(abs_errors_ms.begin(), abs_errors_ms.end(),
                                  [&](double e) { return e <= thr + kThresholdSlackMs; });
    out.emplace_back(thr, 100.0 * static_cast<double>(within) / abs_errors_ms.size());
  }
  return out;
}

OnsetErrorReport ReportFromErrors(std::vector<OnsetError> errors,
                                  const std::vector<double> &thresholds) {
  OnsetErrorReport r;
  std::vector<double> abs_errors;
  double sum = 0.0;
  for (const auto &e : errors) {
    abs_errors.push_back(e.abs_ms);
    r.max_ms = std::max(r.max_ms, e.abs_ms);
    sum += e.abs_ms;
  }
  if (!errors.empty()) r.mean_ms = sum / errors.size();
  r.median_ms = Median(abs_errors);
  r.cumulative = CumulativeTable(abs_errors, thresholds);
  r.per_note = std::move(errors);
  return r;
}

OnsetErrorReport OnsetErrors(const LabelTrack &predicted, const LabelTrack &reference,
                             const std::vector<double> &thresholds) {
  auto signed_errors = SignedErrors(predicted, reference);
  std::vector<OnsetError> errors;
  for (size_t i = 0; i < signed_errors.size(); ++i)
    errors.push_back({reference.labels[i].text, std::abs(signed_errors[i]),
                      signed_errors[i]});
  return ReportFromErrors(std::move(errors), thresholds);
}

double EstimateConstantShift(const LabelTrack &predicted, const LabelTrack &reference) {
  double shift = -Median(SignedErrors(predicted, reference));
  return shift == 0.0 ? 0.0 : shift;  // no "-0"
}

std::map<std::string, int> NoteCounts(const std::vector<LabelTrack> &tracks) {
  std::map<std::string, int> counts;
  for (const auto &t : tracks)
    for (const auto &l : t.labels) ++counts[l.text];
  return counts;
}

std::string CumulativeCsv(const OnsetErrorReport &report) {
  std::string out = "threshold_ms,percentage\n";
  char buf[64];
  for (const auto &[thr, pct] : report.cumulative) {
    if (std::isinf(thr))
      std::snprintf(buf, sizeof(buf), "inf,%.2f\n", pct);
    else
      std::snprintf(buf, sizeof(buf), "%g,%.2f\n", thr, pct);
    out += buf;
  }
  return out;
}

std::string NoteCountsCsv(const std::map<std::string, int> &counts) {
  std::vector<std::pair<std::string, int>> rows(counts.begin(), counts.end());
  auto key = [](const std::string &name) -> std::optional<int> {
    try {
      return Pitch::Parse(name).midi();
    } catch (const Error &) {
      return std::nullopt;
    }
  };
  std::stable_sort(rows.begin(), rows.end(), [&](const auto &a, const auto &b) {
    auto ka = key(a.first), kb = key(b.first);
    if (ka && kb) return *ka < *kb;
    if (ka.has_value() != kb.has_value()) return ka.has_value();
    return a.first < b.first;
  });
  std::string out = "note,count\n";
  for (const auto &[name, n] : rows) out += name + "," + std::to_string(n) + "\n";
  return out;
}

std::string SummaryCsv(const OnsetErrorReport &report) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "max_ms,mean_ms\n%.3f,%.3f\n", report.max_ms,
                report.mean_ms);
  return buf;
}

}  // namespace fretalign
