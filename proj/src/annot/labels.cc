// src/annot/labels.cc

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

#include "annot/labels.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "base/error.h"
#include "util/text.h"

namespace fretalign {

void ValidateTrack(const LabelTrack &track) {
  for (size_t i = 0; i < track.labels.size(); ++i) {
    const Label &l = track.labels[i];
    std::string where = "label " + std::to_string(i + 1);
    if (!std::isfinite(l.start) || !std::isfinite(l.end) || l.start < 0.0 ||
        !(l.end > l.start))
      Fail(ErrorCode::kInvalidArgument, where + ": need 0 <= start < end");
    if (l.text.empty() || util::ContainsSpace(l.text))
      Fail(ErrorCode::kInvalidArgument, where + ": text must be a single token");
    if (i > 0 && l.start < track.labels[i - 1].end)
      Fail(ErrorCode::kInvalidArgument, where + " overlaps the previous label");
  }
}

LabelTrack ParseLab(std::string_view text, const std::string &source) {
  struct Numbered {
    Label label;
    int line;
  };
  std::vector<Numbered> rows;
  const std::string prefix = source.empty() ? "" : source + ": ";
  int line_no = 0;
  for (std::string_view line : util::SplitLines(text)) {
    ++line_no;
    auto tok = util::SplitWhitespace(line);
    if (tok.empty()) continue;
    auto where = prefix + "line " + std::to_string(line_no);
    if (tok.size() != 3)
      Fail(ErrorCode::kParse, where + ": expected 'start end name'");
    Label l;
    try {
      l.start = util::ParseDouble(tok[0]);
      l.end = util::ParseDouble(tok[1]);
    } catch (const Error &e) {
      Fail(ErrorCode::kParse, where + ": " + e.what());
    }
    l.text = std::string(tok[2]);
    if (l.start < 0.0 || !(l.end > l.start))
      Fail(ErrorCode::kParse, where + ": interval end must follow start >= 0");
    rows.push_back({std::move(l), line_no});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Numbered &a, const Numbered &b) {
    return a.label.start < b.label.start;
  });
  LabelTrack track;
  track.source = source;
  for (size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && rows[i].label.start < rows[i - 1].label.end)
      Fail(ErrorCode::kParse, prefix + "line " + std::to_string(rows[i].line) +
                                  ": overlaps line " +
                                  std::to_string(rows[i - 1].line));
    track.labels.push_back(std::move(rows[i].label));
  }
  return track;
}

LabelTrack ReadLab(const std::string &path) {
  return ParseLab(util::ReadFile(path), path);
}

std::string FormatLab(const LabelTrack &track) {
  ValidateTrack(track);
  std::string out;
  char buf[64];
  for (const Label &l : track.labels) {
    std::snprintf(buf, sizeof(buf), "%.3f %.3f ", l.start, l.end);
    out += buf;
    out += l.text;
    out += '\n';
  }
  return out;
}

void WriteLab(const LabelTrack &track, const std::string &path) {
  util::WriteFileAtomic(path, FormatLab(track));
}

LabelTrack ShiftLabels(const LabelTrack &track, double delta_ms) {
  const double delta = delta_ms / 1000.0;
  LabelTrack out = track;
  for (Label &l : out.labels) {
    l.end += delta;
    if (!(l.end > 0.0))
      Fail(ErrorCode::kInvalidArgument,
           "shifting by " + std::to_string(delta_ms) + " ms pushes label '" +
               l.text + "' before time 0");
    l.start = std::max(0.0, l.start + delta);
  }
  return out;
}

}  // namespace fretalign
