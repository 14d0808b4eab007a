// src/hmm/note-model.cc

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

#include "hmm/note-model.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "base/error.h"
#include "util/text.h"

namespace fretalign {

namespace {

constexpr const char *kMagic = "fretalign-model";
constexpr int kVersion = 1;

// Sufficient statistics accumulated relative to a fixed reference frame, so
// sums of squares do not suffer from cancellation on large means.
class GaussAccumulator {
 public:
  void Add(const Eigen::Ref<const Eigen::VectorXd> &x) {
    if (count_ == 0) {
      ref_ = x;
      sum_ = Eigen::VectorXd::Zero(x.size());
      sumsq_ = Eigen::VectorXd::Zero(x.size());
    }
    Eigen::VectorXd d = x - ref_;
    sum_ += d;
    sumsq_ += d.cwiseProduct(d);
    ++count_;
  }
  long count() const { return count_; }
  Eigen::VectorXd Mean() const { return ref_ + sum_ / count_; }
  Eigen::VectorXd Variance() const {
    Eigen::VectorXd m = sum_ / count_;
    return (sumsq_ / count_ - m.cwiseProduct(m)).cwiseMax(0.0);
  }

 private:
  long count_ = 0;
  Eigen::VectorXd ref_, sum_, sumsq_;
};

}  // namespace

NoteModel::NoteModel(std::string label, Eigen::VectorXd mean,
                     Eigen::VectorXd variance, long frame_count)
    : label_(std::move(label)),
      mean_(std::move(mean)),
      variance_(std::move(variance)),
      frame_count_(frame_count) {
  if (mean_.size() == 0 || mean_.size() != variance_.size())
    Fail(ErrorCode::kInvalidArgument, "model " + label_ + ": bad dimensions");
  if (frame_count_ < 1)
    Fail(ErrorCode::kInvalidArgument, "model " + label_ + ": no frames");
  if (!mean_.allFinite() || !variance_.allFinite() || (variance_.array() <= 0).any())
    Fail(ErrorCode::kInvalidArgument,
         "model " + label_ + ": non-finite mean or non-positive variance");
  inv_var_ = variance_.cwiseInverse();
  gconst_ = -0.5 * (2.0 * std::numbers::pi * variance_.array()).log().sum();
}

double NoteModel::LogLikelihood(const Eigen::Ref<const Eigen::VectorXd> &frame) const {
  if (frame.size() != mean_.size())
    Fail(ErrorCode::kInvalidArgument, "frame dimension " +
                                          std::to_string(frame.size()) +
                                          " does not match model " + label_);
  return gconst_ - 0.5 * ((frame - mean_).array().square() * inv_var_.array()).sum();
}

const NoteModel &ModelSet::Get(const std::string &label) const {
  auto it = models.find(label);
  if (it == models.end())
    Fail(ErrorCode::kUnknownNote, "no model for note '" + label + "'");
  return it->second;
}

std::vector<std::string> DeficientLabels(const TrainingData &data,
                                         int min_instances) {
  std::vector<std::string> out;
  for (const auto &[label, segs] : data)
    if (label != kGapLabel && static_cast<int>(segs.size()) < min_instances)
      out.push_back(label);
  return out;
}

ModelSet TrainModels(const TrainingData &data, const TrainOptions &opts,
                     const std::string &fingerprint) {
  if (data.empty()) Fail(ErrorCode::kInvalidArgument, "no training data");
  if (!(opts.floor_ratio > 0.0))
    Fail(ErrorCode::kInvalidArgument, "floor ratio must be positive");
  if (!opts.allow_few_instances) {
    auto deficient = DeficientLabels(data, opts.min_instances);
    if (!deficient.empty()) {
      std::string msg = "fewer than " + std::to_string(opts.min_instances) +
                        " instances for:";
      for (const auto &l : deficient)
        msg += " " + l + "(" + std::to_string(data.at(l).size()) + ")";
      Fail(ErrorCode::kInsufficientExamples, msg);
    }
  }

  long dim = -1;
  GaussAccumulator global;
  std::map<std::string, GaussAccumulator> per_label;
  for (const auto &[label, segs] : data) {
    if (label.empty() || util::ContainsSpace(label))
      Fail(ErrorCode::kInvalidArgument, "bad model label '" + label + "'");
    GaussAccumulator &acc = per_label[label];
    for (const auto &seg : segs) {
      if (seg.rows() == 0)
        Fail(ErrorCode::kInvalidArgument, "empty training segment for " + label);
      if (dim < 0) dim = seg.cols();
      if (seg.cols() != dim)
        Fail(ErrorCode::kInvalidArgument, "inconsistent feature dimension");
      for (long t = 0; t < seg.rows(); ++t) {
        acc.Add(seg.row(t).transpose());
        global.Add(seg.row(t).transpose());
      }
    }
    if (acc.count() == 0)
      Fail(ErrorCode::kInvalidArgument, "zero training frames for " + label);
  }

  Eigen::VectorXd floor = (opts.floor_ratio * global.Variance()).cwiseMax(kMinVariance);
  ModelSet out;
  out.fingerprint = fingerprint;
  for (const auto &[label, acc] : per_label) {
    out.models.emplace(label, NoteModel(label, acc.Mean(),
                                        acc.Variance().cwiseMax(floor), acc.count()));
  }
  return out;
}

std::string SerializeModels(const ModelSet &models) {
  if (models.models.empty())
    Fail(ErrorCode::kInvalidArgument, "cannot save an empty model set");
  const int dim = models.models.begin()->second.Dim();
  std::ostringstream os;
  os << kMagic << " v" << kVersion << " dim " << dim << " models "
     << models.models.size() << " fingerprint "
     << (models.fingerprint.empty() ? "-" : models.fingerprint) << '\n';
  for (const auto &[label, m] : models.models) {
    if (m.Dim() != dim)
      Fail(ErrorCode::kInvalidArgument, "models differ in dimension");
    os << label << ' ' << m.frame_count();
    for (int d = 0; d < dim; ++d) os << ' ' << util::FormatExact(m.mean()(d));
    for (int d = 0; d < dim; ++d) os << ' ' << util::FormatExact(m.variance()(d));
    os << '\n';
  }
  return os.str();
}

ModelSet ParseModels(const std::string &text) {
  auto corrupt = [](const std::string &why) -> ModelSet {
    Fail(ErrorCode::kCorruptModel, "corrupt model file: " + why);
  };
  auto lines = util::SplitLines(text);
  if (lines.empty()) return corrupt("empty");
  auto head = util::SplitWhitespace(lines[0]);
  if (head.size() != 8 || head[0] != kMagic || head[2] != "dim" ||
      head[4] != "models" || head[6] != "fingerprint")
    return corrupt("bad header");
  if (head[1] != "v" + std::to_string(kVersion))
    return corrupt("unsupported version " + std::string(head[1]));
  int dim = 0, count = 0;
  try {
    dim = util::ParseInt(head[3]);
    count = util::ParseInt(head[5]);
  } catch (const Error &) {
    return corrupt("bad header numbers");
  }
  if (dim <= 0 || count <= 0) return corrupt("bad header numbers");

  ModelSet out;
  out.fingerprint = head[7] == "-" ? "" : std::string(head[7]);
  int seen = 0;
  for (size_t i = 1; i < lines.size(); ++i) {
    auto tok = util::SplitWhitespace(lines[i]);
    if (tok.empty()) continue;
    if (tok.size() != static_cast<size_t>(2 + 2 * dim))
      return corrupt("line " + std::to_string(i + 1) + " has " +
                     std::to_string(tok.size()) + " fields, expected " +
                     std::to_string(2 + 2 * dim));
    Eigen::VectorXd mean(dim), var(dim);
    long frames = 0;
    try {
      frames = util::ParseInt(tok[1]);
      for (int d = 0; d < dim; ++d) {
        mean(d) = util::ParseDouble(tok[2 + d]);
        var(d) = util::ParseDouble(tok[2 + dim + d]);
      }
      std::string label(tok[0]);
      if (out.models.count(label)) return corrupt("duplicate model " + label);
      out.models.emplace(label, NoteModel(label, mean, var, frames));
    } catch (const Error &e) {
      return corrupt("line " + std::to_string(i + 1) + ": " + e.what());
    }
    ++seen;
  }
  if (seen != count)
    return corrupt("header promises " + std::to_string(count) + " models, found " +
                   std::to_string(seen));
  return out;
}

void SaveModels(const ModelSet &models, const std::string &path) {
  util::WriteFileAtomic(path, SerializeModels(models));
}

ModelSet LoadModels(const std::string &path) {
  return ParseModels(util::ReadFile(path));
}

}  // namespace fretalign
