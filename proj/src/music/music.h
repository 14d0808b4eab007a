// src/music/music.h

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

#ifndef FRETALIGN_MUSIC_MUSIC_H_
#define FRETALIGN_MUSIC_MUSIC_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fretalign {

// A note identity as a MIDI semitone number (A4 = 69).  Names use scientific
// pitch notation with sharps, e.g. "E2", "F#2", "G#4".
class Pitch {
 public:
  constexpr Pitch() = default;
  constexpr explicit Pitch(int midi) : midi_(midi) {}

  // Accepts sharps ("F#2") and flats ("Gb2"); throws kParse otherwise.
  static Pitch Parse(std::string_view name);

  int midi() const { return midi_; }
  std::string Name() const;
  double Frequency() const;

  friend constexpr bool operator==(Pitch a, Pitch b) = default;
  friend constexpr auto operator<=>(Pitch a, Pitch b) = default;

 private:
  int midi_ = 69;
};

inline constexpr int kNumStrings = 6;
inline constexpr int kMaxFret = 4;

struct FretPosition {
  int string = 1;  // 1 = highest-pitched string
  int fret = 0;
};

// 440 * 2^((midi - 69) / 12).
double PitchFrequency(int midi);

// Standard tuning E2 A2 D3 G3 B3 E4; throws kInvalidPosition outside
// strings 1..6 / frets 0..4.
Pitch PitchFromFret(FretPosition pos);

// Highest covered fret on a string: 3 on string 3 (its fret 4 would repeat
// the open B3 of string 2), 4 everywhere else.
int CoveredFretLimit(int string);

// Covered pitches of one string, ordered by fret.
std::vector<Pitch> StringCoveredPitches(int string);

// The 29 covered pitches E2..G#4, ascending.
std::vector<Pitch> CoveredPitches();

struct Exercise {
  std::string id;
  int string = 1;
  std::vector<Pitch> sequence;
};

inline constexpr int kMinExerciseLength = 5;
inline constexpr int kMaxExerciseLength = 15;

// Throws kInvalidArgument if the exercise breaks its invariants (length,
// string range, pitches off the string's covered frets).
void ValidateExercise(const Exercise &ex);

// Length that gives roughly 50 instances per note when each of three
// exercises is recorded twelve times: 7 on five-note strings, 6 on string 3.
int DefaultExerciseLength(int string);

// Composes `count` exercises for `string`.  Each one starts with a shuffled
// pass over the string's covered pitches and continues with seeded draws
// that avoid immediate repeats, preferring the pitches used least so far in
// the batch.  Ids are "s<string>_e<k>" with k from 1.
std::vector<Exercise> ComposeExercises(int string, int count, int length,
                                       uint64_t seed);

// Sequence files: one exercise per line, "id<TAB>string<TAB>E2 F#2 ...".
std::string FormatExercises(const std::vector<Exercise> &exercises);
std::vector<Exercise> ParseExercises(std::string_view text);
void WriteExercises(const std::vector<Exercise> &exercises,
                    const std::string &path);
std::vector<Exercise> ReadExercises(const std::string &path);

}  // namespace fretalign

#endif  // FRETALIGN_MUSIC_MUSIC_H_
