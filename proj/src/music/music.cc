// src/music/music.cc

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

#include "music/music.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "base/error.h"
#include "base/random.h"
#include "util/text.h"

namespace fretalign {

namespace {

constexpr std::array<const char *, 12> kSharpNames = {
    "C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B"};

// Open-string MIDI numbers indexed by string - 1.
constexpr std::array<int, kNumStrings> kOpenStrings = {64, 59, 55, 50, 45, 40};

}  // namespace

Pitch Pitch::Parse(std::string_view name) {
  auto bad = [&]() -> Pitch {
    Fail(ErrorCode::kParse, "bad note name '" + std::string(name) + "'");
  };
  if (name.size() < 2) return bad();
  static constexpr std::array<int, 7> kLetterOffsets = {9, 11, 0, 2, 4, 5, 7};
  char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
  if (letter < 'A' || letter > 'G') return bad();
  int semitone = kLetterOffsets[letter - 'A'];
  size_t pos = 1;
  if (name[pos] == '#') {
    ++semitone;
    ++pos;
  } else if (name[pos] == 'b') {
    --semitone;
    ++pos;
  }
  if (pos >= name.size()) return bad();
  bool negative = false;
  if (name[pos] == '-') {
    negative = true;
    ++pos;
  }
  if (pos >= name.size()) return bad();
  int octave = 0;
  for (; pos < name.size(); ++pos) {
    if (!std::isdigit(static_cast<unsigned char>(name[pos]))) return bad();
    octave = octave * 10 + (name[pos] - '0');
    if (octave > 20) return bad();
  }
  if (negative) octave = -octave;
  return Pitch(12 * (octave + 1) + semitone);
}

std::string Pitch::Name() const {
  int octave = (midi_ >= 0 ? midi_ / 12 : (midi_ - 11) / 12) - 1;
  int semitone = midi_ - 12 * (octave + 1);
  return std::string(kSharpNames[semitone]) + std::to_string(octave);
}

double Pitch::Frequency() const { return PitchFrequency(midi_); }

double PitchFrequency(int midi) {
  return 440.0 * std::exp2((midi - 69) / 12.0);
}

Pitch PitchFromFret(FretPosition pos) {
  if (pos.string < 1 || pos.string > kNumStrings || pos.fret < 0 ||
      pos.fret > kMaxFret) {
    Fail(ErrorCode::kInvalidPosition,
         "fret position (string " + std::to_string(pos.string) + ", fret " +
             std::to_string(pos.fret) + ") is outside strings 1..6, frets 0..4");
  }
  return Pitch(kOpenStrings[pos.string - 1] + pos.fret);
}

int CoveredFretLimit(int string) {
  if (string < 1 || string > kNumStrings)
    Fail(ErrorCode::kInvalidPosition, "string " + std::to_string(string) +
                                          " is outside 1..6");
  return string == 3 ? 3 : kMaxFret;
}

std::vector<Pitch> StringCoveredPitches(int string) {
  std::vector<Pitch> out;
  for (int fret = 0; fret <= CoveredFretLimit(string); ++fret)
    out.push_back(PitchFromFret({string, fret}));
  return out;
}

std::vector<Pitch> CoveredPitches() {
  std::vector<Pitch> out;
  for (int s = 1; s <= kNumStrings; ++s) {
    auto p = StringCoveredPitches(s);
    out.insert(out.end(), p.begin(), p.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void ValidateExercise(const Exercise &ex) {
  if (ex.id.empty() || util::ContainsSpace(ex.id))
    Fail(ErrorCode::kInvalidArgument, "exercise id must be a non-empty token");
  auto allowed = StringCoveredPitches(ex.string);
  int n = static_cast<int>(ex.sequence.size());
  if (n < kMinExerciseLength || n > kMaxExerciseLength)
    Fail(ErrorCode::kInvalidArgument,
         "exercise " + ex.id + " has " + std::to_string(n) +
             " notes; expected 5..15");
  for (Pitch p : ex.sequence) {
    if (std::find(allowed.begin(), allowed.end(), p) == allowed.end())
      Fail(ErrorCode::kInvalidArgument,
           "exercise " + ex.id + ": " + p.Name() +
               " is not a covered note of string " + std::to_string(ex.string));
  }
}

int DefaultExerciseLength(int string) {
  return static_cast<int>(StringCoveredPitches(string).size()) == 5 ? 7 : 6;
}

std::vector<Exercise> ComposeExercises(int string, int count, int length,
                                       uint64_t seed) {
  auto pitches = StringCoveredPitches(string);
  const int num_pitches = static_cast<int>(pitches.size());
  if (count <= 0)
    Fail(ErrorCode::kInvalidArgument, "exercise count must be positive");
  if (length < num_pitches)
    Fail(ErrorCode::kInfeasibleExercise,
         "length " + std::to_string(length) + " cannot cover the " +
             std::to_string(num_pitches) + " notes of string " +
             std::to_string(string));
  if (length < kMinExerciseLength || length > kMaxExerciseLength)
    Fail(ErrorCode::kInfeasibleExercise,
         "exercise length must be in 5..15, got " + std::to_string(length));

  Rng rng(MixSeed(seed, static_cast<uint64_t>(string)));
  std::vector<int> usage(num_pitches, 0);
  std::vector<Exercise> out;
  for (int k = 0; k < count; ++k) {
    std::vector<int> order(num_pitches);
    for (int i = 0; i < num_pitches; ++i) order[i] = i;
    rng.Shuffle(order.begin(), order.end());
    for (int i : order) ++usage[i];

    while (static_cast<int>(order.size()) < length) {
      int prev = order.back();
      int least = INT32_MAX;
      for (int i = 0; i < num_pitches; ++i)
        if (i != prev) least = std::min(least, usage[i]);
      std::vector<int> candidates;
      for (int i = 0; i < num_pitches; ++i)
        if (i != prev && usage[i] == least) candidates.push_back(i);
      int pick = candidates[rng.Index(candidates.size())];
      ++usage[pick];
      order.push_back(pick);
    }

    Exercise ex;
    ex.id = "s" + std::to_string(string) + "_e" + std::to_string(k + 1);
    ex.string = string;
    for (int i : order) ex.sequence.push_back(pitches[i]);
    out.push_back(std::move(ex));
  }
  return out;
}

std::string FormatExercises(const std::vector<Exercise> &exercises) {
  std::ostringstream os;
  for (const auto &ex : exercises) {
    os << ex.id << '\t' << ex.string << '\t';
    for (size_t i = 0; i < ex.sequence.size(); ++i)
      os << (i ? " " : "") << ex.sequence[i].Name();
    os << '\n';
  }
  return os.str();
}

std::vector<Exercise> ParseExercises(std::string_view text) {
  std::vector<Exercise> out;
  int line_no = 0;
  for (std::string_view line : util::SplitLines(text)) {
    ++line_no;
    if (util::Trim(line).empty()) continue;
    auto fields = util::Split(line, '\t');
    if (fields.size() != 3)
      Fail(ErrorCode::kParse, "sequence file line " + std::to_string(line_no) +
                                  ": expected id<TAB>string<TAB>notes");
    Exercise ex;
    ex.id = std::string(util::Trim(fields[0]));
    try {
      ex.string = util::ParseInt(util::Trim(fields[1]));
      for (auto tok : util::SplitWhitespace(fields[2]))
        ex.sequence.push_back(Pitch::Parse(tok));
      ValidateExercise(ex);
    } catch (const Error &e) {
      Fail(ErrorCode::kParse, "sequence file line " + std::to_string(line_no) +
                                  ": " + e.what());
    }
    out.push_back(std::move(ex));
  }
  return out;
}

void WriteExercises(const std::vector<Exercise> &exercises,
                    const std::string &path) {
  util::WriteFileAtomic(path, FormatExercises(exercises));
}

std::vector<Exercise> ReadExercises(const std::string &path) {
  return ParseExercises(util::ReadFile(path));
}

}  // namespace fretalign
