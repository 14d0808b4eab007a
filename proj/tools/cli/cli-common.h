// tools/cli/cli-common.h

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

#ifndef FRETALIGN_TOOLS_CLI_CLI_COMMON_H_
#define FRETALIGN_TOOLS_CLI_CLI_COMMON_H_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "fretalign/fretalign.h"

namespace fretalign {
namespace cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 1,
  kExitInputError = 2,
  kExitPartialFailure = 3,
};

// Thrown by command code; carries the process exit code.
class CliError : public std::runtime_error {
 public:
  CliError(int exit_code, const std::string &what)
      : std::runtime_error(what), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

// Wraps a C API status into an exception carrying fa_last_error().
class ApiError : public std::runtime_error {
 public:
  ApiError(fa_status status, const std::string &what)
      : std::runtime_error(what), status_(status) {}
  fa_status status() const { return status_; }

 private:
  fa_status status_;
};

inline void Check(fa_status st, const std::string &context) {
  if (st != FA_OK) throw ApiError(st, context + ": " + fa_last_error());
}

template <class T, void (*Free)(T *)>
struct Deleter {
  void operator()(T *p) const { Free(p); }
};

using ClipPtr = std::unique_ptr<fa_clip, Deleter<fa_clip, fa_clip_free>>;
using ExercisesPtr =
    std::unique_ptr<fa_exercises, Deleter<fa_exercises, fa_exercises_free>>;
using FeaturesPtr =
    std::unique_ptr<fa_features, Deleter<fa_features, fa_features_free>>;
using LabelsPtr = std::unique_ptr<fa_labels, Deleter<fa_labels, fa_labels_free>>;
using ReportPtr = std::unique_ptr<fa_report, Deleter<fa_report, fa_report_free>>;
using CountsPtr = std::unique_ptr<fa_counts, Deleter<fa_counts, fa_counts_free>>;
using TrainerPtr = std::unique_ptr<fa_trainer, Deleter<fa_trainer, fa_trainer_free>>;
using ModelsPtr = std::unique_ptr<fa_models, Deleter<fa_models, fa_models_free>>;
using SegmentationPtr =
    std::unique_ptr<fa_segmentation, Deleter<fa_segmentation, fa_segmentation_free>>;

// Flat "key = value" configuration with every default materialized.
class RunConfig {
 public:
  RunConfig();

  // Throws CliError(kExitConfigError) on unknown keys or bad syntax.
  void LoadFile(const std::string &path);
  void Set(const std::string &key, const std::string &value);

  std::string Get(const std::string &key) const;
  int GetInt(const std::string &key) const;
  uint64_t GetU64(const std::string &key) const;
  double GetDouble(const std::string &key) const;
  bool GetBool(const std::string &key) const;

  // Checks every value converts and the derived structs validate.
  void Validate() const;

  fa_feature_config Features() const;
  fa_align_config Align() const;
  fa_train_options Train() const;
  fa_tempo_policy Tempo() const;

  // "# key = value" lines, sorted by key.  "jobs" is left out so that reports
  // do not depend on the worker count.
  std::string Echo() const;

 private:
  std::map<std::string, std::string> values_;
};

// Corpus directory layout.
struct Corpus {
  std::string root;

  std::string ExercisesDir() const { return root + "/exercises"; }
  std::string WavDir() const { return root + "/wav"; }
  std::string ManualDir() const { return root + "/labels/manual"; }
  std::string TruthDir() const { return root + "/labels/truth"; }
  std::string AutoDir() const { return root + "/labels/auto"; }
  std::string ModelsDir() const { return root + "/models"; }
  std::string ReportsDir() const { return root + "/reports"; }

  std::string ExerciseFile(int string) const {
    return ExercisesDir() + "/s" + std::to_string(string) + ".txt";
  }
  std::string ModelFile(int string) const {
    return ModelsDir() + "/s" + std::to_string(string) + ".model";
  }
};

// A take stem "s<string>_e<exercise>_t<take>".
struct TakeName {
  int string = 0;
  int exercise = 0;
  int take = 0;
  std::string stem;

  std::string ExerciseId() const {
    return "s" + std::to_string(string) + "_e" + std::to_string(exercise);
  }
};

bool ParseTakeName(const std::string &stem, TakeName *out);
std::string MakeTakeStem(const std::string &exercise_id, int take);

// Sorted stems of files with `extension` (".wav", ".lab") in `dir`.
std::vector<std::string> ListStems(const std::string &dir, const std::string &extension);
bool FileExists(const std::string &path);
void MakeDirs(const std::string &dir);
void WriteTextAtomic(const std::string &path, const std::string &text);

// "all" or 1..6.
std::vector<int> ParseStrings(const std::string &spec);

// Runs job(i) for i in [0, n) on up to `workers` threads; exceptions are
// captured per job and returned as messages (empty on success).
std::vector<std::string> RunParallel(size_t n, int workers,
                                     const std::function<void(size_t)> &job);

uint64_t DeriveSeed(uint64_t seed, uint64_t a, uint64_t b = 0, uint64_t c = 0);

}  // namespace cli
}  // namespace fretalign

#endif  // FRETALIGN_TOOLS_CLI_CLI_COMMON_H_
