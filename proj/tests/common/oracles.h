// tests/common/oracles.h

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

// Slow, obviously-correct reference implementations used by the tests.

#ifndef FRETALIGN_TESTS_COMMON_ORACLES_H_
#define FRETALIGN_TESTS_COMMON_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace fretalign {
namespace oracle {

struct BruteAlignment {
  double score = -std::numeric_limits<double>::infinity();
  // Start frame of notes 1..N-1 (note 0 starts at 0).
  std::vector<int> boundaries;
  long candidates = 0;
};

// Enumerates every segmentation of T frames into N ordered segments of at
// least `min_dur` frames.  Among those within `tie_tol` of the best score the
// lexicographically smallest boundary vector wins.
inline BruteAlignment BruteForceAlign(const Eigen::MatrixXd &scores, int min_dur,
                                      double p, double tie_tol = 1e-9) {
  const int n = static_cast<int>(scores.rows());
  const int t_total = static_cast<int>(scores.cols());
  const double trans = (t_total - n) * std::log(p) + (n - 1) * std::log(1.0 - p);
  std::vector<std::pair<double, std::vector<int>>> all;
  std::vector<int> b;
  std::function<void(int, int, double)> rec = [&](int note, int start, double acc) {
    if (note == n - 1) {
      if (t_total - start < min_dur) return;
      double s = acc;
      for (int t = start; t < t_total; ++t) s += scores(note, t);
      all.emplace_back(s + trans, b);
      return;
    }
    int remaining = (n - 1 - note) * min_dur;
    for (int end = start + min_dur; end <= t_total - remaining; ++end) {
      double s = acc;
      for (int t = start; t < end; ++t) s += scores(note, t);
      b.push_back(end);
      rec(note + 1, end, s);
      b.pop_back();
    }
  };
  rec(0, 0, 0.0);
  BruteAlignment out;
  out.candidates = static_cast<long>(all.size());
  for (const auto &c : all) out.score = std::max(out.score, c.first);
  bool have = false;
  for (const auto &c : all) {
    if (c.first < out.score - tie_tol * std::max(1.0, std::abs(out.score))) continue;
    if (!have || c.second < out.boundaries) out.boundaries = c.second;
    have = true;
  }
  return out;
}

// Best score over segmentations with an optional leading and trailing gap
// segment (each at least one frame when present) around N note segments.
inline double BruteForceGapScore(const Eigen::MatrixXd &scores,
                                 const Eigen::VectorXd &gap, int min_dur, double p) {
  const int n = static_cast<int>(scores.rows());
  const int t_total = static_cast<int>(scores.cols());
  double best = -std::numeric_limits<double>::infinity();
  for (int lead = 0; lead <= t_total; ++lead) {
    for (int trail = 0; lead + trail <= t_total; ++trail) {
      int inner = t_total - lead - trail;
      if (inner < n * min_dur) continue;
      Eigen::MatrixXd sub = scores.middleCols(lead, inner);
      BruteAlignment a = BruteForceAlign(sub, min_dur, p);
      // Remove the inner transition total and rebuild it for all segments.
      int segs = n + (lead > 0) + (trail > 0);
      double emis = a.score - ((inner - n) * std::log(p) + (n - 1) * std::log(1.0 - p));
      for (int t = 0; t < lead; ++t) emis += gap(t);
      for (int t = t_total - trail; t < t_total; ++t) emis += gap(t);
      double total = emis + (t_total - segs) * std::log(p) + (segs - 1) * std::log(1.0 - p);
      best = std::max(best, total);
    }
  }
  return best;
}

// Textbook two-pass mean and population variance, column-wise.
inline void TwoPassMeanVar(const Eigen::MatrixXd &x, Eigen::VectorXd *mean,
                           Eigen::VectorXd *var) {
  const long n = x.rows();
  mean->setZero(x.cols());
  var->setZero(x.cols());
  for (long c = 0; c < x.cols(); ++c) {
    double s = 0.0;
    for (long r = 0; r < n; ++r) s += x(r, c);
    double m = s / n;
    double ss = 0.0;
    for (long r = 0; r < n; ++r) ss += (x(r, c) - m) * (x(r, c) - m);
    (*mean)(c) = m;
    (*var)(c) = ss / n;
  }
}

// log N(x; mu, diag(var)) written out term by term.
inline double DiagGaussianLogPdf(const Eigen::VectorXd &x, const Eigen::VectorXd &mu,
                                 const Eigen::VectorXd &var) {
  double s = 0.0;
  for (long d = 0; d < x.size(); ++d) {
    double diff = x(d) - mu(d);
    s += -0.5 * std::log(2.0 * std::numbers::pi * var(d)) - 0.5 * diff * diff / var(d);
  }
  return s;
}

// Regression deltas with edge replication, one output element at a time.
inline Eigen::MatrixXd DirectDeltas(const Eigen::MatrixXd &c, int window) {
  const long rows = c.rows();
  Eigen::MatrixXd d(rows, c.cols());
  double denom = 0.0;
  for (int n = 1; n <= window; ++n) denom += 2.0 * n * n;
  for (long t = 0; t < rows; ++t) {
    for (long k = 0; k < c.cols(); ++k) {
      double num = 0.0;
      for (int n = 1; n <= window; ++n) {
        long ahead = std::min(t + n, rows - 1);
        long behind = std::max(t - n, 0L);
        num += n * (c(ahead, k) - c(behind, k));
      }
      d(t, k) = num / denom;
    }
  }
  return d;
}

// Fundamental frequency from the normalized autocorrelation peak within
// [fmin, fmax], refined by parabolic interpolation.
inline double AutocorrF0(const std::vector<float> &x, int sample_rate, double fmin,
                         double fmax) {
  const int lag_lo = static_cast<int>(std::floor(sample_rate / fmax));
  const int lag_hi = static_cast<int>(std::ceil(sample_rate / fmin));
  const long n = static_cast<long>(x.size());
  std::vector<double> r(lag_hi + 2, 0.0);
  for (int lag = std::max(lag_lo - 1, 1); lag <= lag_hi + 1; ++lag) {
    double s = 0.0, e0 = 0.0, e1 = 0.0;
    for (long i = 0; i + lag < n; ++i) {
      s += static_cast<double>(x[i]) * x[i + lag];
      e0 += static_cast<double>(x[i]) * x[i];
      e1 += static_cast<double>(x[i + lag]) * x[i + lag];
    }
    r[lag] = s / std::sqrt(e0 * e1 + 1e-300);
  }
  int best = lag_lo;
  for (int lag = lag_lo; lag <= lag_hi; ++lag)
    if (r[lag] > r[best]) best = lag;
  double a = r[best - 1], b = r[best], c = r[best + 1];
  double denom = a - 2.0 * b + c;
  double offset = denom != 0.0 ? 0.5 * (a - c) / denom : 0.0;
  return sample_rate / (best + offset);
}

// Shift (ms) on a `step` grid over [-range, range] minimizing the summed
// absolute value of signed_ms + shift; the smallest-magnitude minimizer wins.
inline double GridSearchShift(const std::vector<double> &signed_ms, double step,
                              double range, double *best_cost = nullptr) {
  double best = 0.0;
  double cost_best = std::numeric_limits<double>::infinity();
  const int k = static_cast<int>(std::lround(range / step));
  for (int i = -k; i <= k; ++i) {
    double d = i * step;
    double cost = 0.0;
    for (double e : signed_ms) cost += std::abs(e + d);
    if (cost < cost_best - 1e-9 ||
        (std::abs(cost - cost_best) <= 1e-9 && std::abs(d) < std::abs(best))) {
      cost_best = cost;
      best = d;
    }
  }
  if (best_cost) *best_cost = cost_best;
  return best;
}

inline double SummedAbs(const std::vector<double> &signed_ms, double shift) {
  double s = 0.0;
  for (double e : signed_ms) s += std::abs(e + shift);
  return s;
}

}  // namespace oracle
}  // namespace fretalign

#endif  // FRETALIGN_TESTS_COMMON_ORACLES_H_
