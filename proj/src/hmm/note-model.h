// src/hmm/note-model.h

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

#ifndef FRETALIGN_HMM_NOTE_MODEL_H_
#define FRETALIGN_HMM_NOTE_MODEL_H_

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fretalign {

// Label reserved for the optional gap (silence/noise) model.
inline constexpr const char *kGapLabel = "sil";

// Single-state, single-Gaussian note model with diagonal covariance.
class NoteModel {
 public:
  NoteModel() = default;
  NoteModel(std::string label, Eigen::VectorXd mean, Eigen::VectorXd variance,
            long frame_count);

  const std::string &label() const { return label_; }
  const Eigen::VectorXd &mean() const { return mean_; }
  const Eigen::VectorXd &variance() const { return variance_; }
  long frame_count() const { return frame_count_; }
  int Dim() const { return static_cast<int>(mean_.size()); }

  // log N(frame; mean, diag(variance)).
  double LogLikelihood(const Eigen::Ref<const Eigen::VectorXd> &frame) const;

 private:
  std::string label_;
  Eigen::VectorXd mean_;
  Eigen::VectorXd variance_;
  Eigen::VectorXd inv_var_;
  double gconst_ = 0.0;  // -0.5 * sum(log(2*pi*var))
  long frame_count_ = 0;
};

struct ModelSet {
  std::map<std::string, NoteModel> models;
  std::string fingerprint;

  const NoteModel &Get(const std::string &label) const;  // throws kUnknownNote
  bool Has(const std::string &label) const { return models.count(label) > 0; }
};

// Training material: per label, a list of T_i x D feature segments.
using TrainingData = std::map<std::string, std::vector<Eigen::MatrixXd>>;

struct TrainOptions {
  double floor_ratio = 1e-3;
  int min_instances = 5;
  // Opt-out of the min_instances check (tests, tiny corpora).
  bool allow_few_instances = false;
};

// Absolute variance floor for dimensions with no global spread.
inline constexpr double kMinVariance = 1e-10;

// Labels with fewer than min_instances segments, sorted.  The gap label is
// never reported.
std::vector<std::string> DeficientLabels(const TrainingData &data,
                                         int min_instances);

// Maximum-likelihood mean and (population) variance per label from all
// pooled frames, variances floored at floor_ratio times the global
// per-dimension variance of every training frame.
ModelSet TrainModels(const TrainingData &data, const TrainOptions &opts,
                     const std::string &fingerprint);

// Versioned text format, one line per model; values are written in shortest
// round-trip decimal so that load(save(m)) is exact.
std::string SerializeModels(const ModelSet &models);
ModelSet ParseModels(const std::string &text);  // throws kCorruptModel
void SaveModels(const ModelSet &models, const std::string &path);
ModelSet LoadModels(const std::string &path);

}  // namespace fretalign

#endif  // FRETALIGN_HMM_NOTE_MODEL_H_
