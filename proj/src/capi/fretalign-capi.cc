// src/capi/fretalign-capi.cc

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

#include "fretalign/fretalign.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <iterator>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "annot/labels.h"
#include "annot/onset-eval.h"
#include "audio/audio-clip.h"
#include "audio/pluck-synth.h"
#include "base/error.h"
#include "feat/mfcc.h"
#include "hmm/forced-align.h"
#include "hmm/note-model.h"
#include "hmm/segment-labels.h"
#include "music/music.h"
#include "util/text.h"

using namespace fretalign;

struct fa_exercises {
  std::vector<Exercise> items;
  std::vector<std::vector<std::string>> names;

  void Index() {
    names.clear();
    for (const auto &ex : items) {
      std::vector<std::string> n;
      for (Pitch p : ex.sequence) n.push_back(p.Name());
      names.push_back(std::move(n));
    }
  }
};

struct fa_clip {
  AudioClip clip;
};

struct fa_features {
  FeatureMatrix m;
  std::vector<double> row_major;
};

struct fa_labels {
  LabelTrack track;
};

struct fa_report {
  OnsetErrorReport r;
  std::string cumulative_csv;
  std::string summary_csv;
};

struct fa_counts {
  std::vector<std::pair<std::string, int>> rows;
  std::string csv;
};

struct fa_trainer {
  TrainingData data;
  std::string fingerprint;
};

struct fa_models {
  ModelSet set;
  std::vector<const NoteModel *> order;

  void Index() {
    order.clear();
    for (const auto &[label, m] : set.models) order.push_back(&m);
  }
};

struct fa_segmentation {
  Segmentation seg;
};

namespace {

thread_local std::string g_last_error;

fa_status Record(ErrorCode code, const char *what) {
  g_last_error = std::string(ErrorCodeName(code)) + ": " + what;
  return static_cast<fa_status>(code);
}

template <class F>
fa_status Guard(F &&body) {
  try {
    body();
    return FA_OK;
  } catch (const Error &e) {
    return Record(e.code(), e.what());
  } catch (const std::bad_alloc &) {
    return Record(ErrorCode::kInternal, "out of memory");
  } catch (const std::exception &e) {
    return Record(ErrorCode::kInternal, e.what());
  }
}

template <class T>
void Require(const T *p, const char *name) {
  if (p == nullptr)
    Fail(ErrorCode::kInvalidArgument, std::string(name) + " must not be NULL");
}

void CopyOut(const std::string &s, char *buf, size_t cap) {
  if (s.size() + 1 > cap)
    Fail(ErrorCode::kInvalidArgument,
         "buffer too small, need " + std::to_string(s.size() + 1) + " bytes");
  std::memcpy(buf, s.c_str(), s.size() + 1);
}

FeatureConfig ToConfig(const fa_feature_config *c) {
  FeatureConfig cfg;
  if (c != nullptr) {
    cfg.frame_length = c->frame_length;
    cfg.hop = c->hop;
    cfg.pre_emphasis = c->pre_emphasis;
    cfg.mel_filters = c->mel_filters;
    cfg.cepstra = c->cepstra;
    cfg.delta_window = c->delta_window;
    cfg.log_floor = c->log_floor;
  }
  return cfg;
}

TempoPolicy ToPolicy(const fa_tempo_policy *p) {
  TempoPolicy out;
  if (p != nullptr) {
    out.inter_onset = p->inter_onset;
    out.jitter = p->jitter;
    out.overlap = p->overlap;
    out.final_duration = p->final_duration;
    out.min_amplitude = p->min_amplitude;
    out.max_amplitude = p->max_amplitude;
  }
  return out;
}

AlignConfig ToAlign(const fa_align_config *c) {
  AlignConfig out;
  if (c != nullptr) {
    out.self_loop_prob = c->self_loop_prob;
    out.min_duration_frames = c->min_duration_frames;
    out.gap_model = c->gap_model != 0;
  }
  return out;
}

std::vector<double> Thresholds(const double *thresholds, size_t n) {
  if (thresholds == nullptr) return DefaultThresholds();
  if (n == 0) Fail(ErrorCode::kInvalidArgument, "empty threshold list");
  return std::vector<double>(thresholds, thresholds + n);
}

fa_report *MakeReport(OnsetErrorReport r) {
  auto *out = new fa_report{std::move(r), {}, {}};
  out->cumulative_csv = CumulativeCsv(out->r);
  out->summary_csv = SummaryCsv(out->r);
  return out;
}

fa_features *MakeFeatures(FeatureMatrix m) {
  auto *out = new fa_features{std::move(m), {}};
  const auto &fr = out->m.frames;
  out->row_major.resize(static_cast<size_t>(fr.size()));
  for (long t = 0; t < fr.rows(); ++t)
    for (long c = 0; c < fr.cols(); ++c) out->row_major[t * fr.cols() + c] = fr(t, c);
  return out;
}

}  // namespace

extern "C" {

const char *fa_version(void) { return "1.0.0"; }

const char *fa_status_name(fa_status status) {
  return ErrorCodeName(static_cast<ErrorCode>(status));
}

const char *fa_last_error(void) { return g_last_error.c_str(); }

// ---- music ------------------------------------------------------------------

fa_status fa_pitch_from_fret(int string, int fret, int *midi) {
  return Guard([&] {
    Require(midi, "midi");
    *midi = PitchFromFret({string, fret}).midi();
  });
}

fa_status fa_pitch_parse(const char *name, int *midi) {
  return Guard([&] {
    Require(name, "name");
    Require(midi, "midi");
    *midi = Pitch::Parse(name).midi();
  });
}

fa_status fa_pitch_name(int midi, char *buf, size_t cap) {
  return Guard([&] {
    Require(buf, "buf");
    CopyOut(Pitch(midi).Name(), buf, cap);
  });
}

double fa_pitch_frequency(int midi) { return PitchFrequency(midi); }

fa_status fa_covered_pitches(int string, int *midis, size_t cap, size_t *count) {
  return Guard([&] {
    Require(count, "count");
    auto pitches = string == 0 ? CoveredPitches() : StringCoveredPitches(string);
    *count = pitches.size();
    if (midis == nullptr) return;
    if (cap < pitches.size())
      Fail(ErrorCode::kInvalidArgument, "output array too small");
    for (size_t i = 0; i < pitches.size(); ++i) midis[i] = pitches[i].midi();
  });
}

int fa_default_exercise_length(int string) {
  try {
    return DefaultExerciseLength(string);
  } catch (const Error &) {
    return 0;
  }
}

fa_status fa_exercises_compose(int string, int count, int length, uint64_t seed,
                               fa_exercises **out) {
  return Guard([&] {
    Require(out, "out");
    if (length <= 0) length = DefaultExerciseLength(string);
    auto *ex = new fa_exercises{ComposeExercises(string, count, length, seed), {}};
    ex->Index();
    *out = ex;
  });
}

fa_status fa_exercises_read(const char *path, fa_exercises **out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    auto *ex = new fa_exercises{ReadExercises(path), {}};
    ex->Index();
    *out = ex;
  });
}

fa_status fa_exercises_write(const fa_exercises *ex, const char *path) {
  return Guard([&] {
    Require(ex, "ex");
    Require(path, "path");
    WriteExercises(ex->items, path);
  });
}

size_t fa_exercises_count(const fa_exercises *ex) { return ex ? ex->items.size() : 0; }

const char *fa_exercises_id(const fa_exercises *ex, size_t i) {
  return ex && i < ex->items.size() ? ex->items[i].id.c_str() : nullptr;
}

int fa_exercises_string(const fa_exercises *ex, size_t i) {
  return ex && i < ex->items.size() ? ex->items[i].string : 0;
}

size_t fa_exercises_length(const fa_exercises *ex, size_t i) {
  return ex && i < ex->items.size() ? ex->items[i].sequence.size() : 0;
}

int fa_exercises_note(const fa_exercises *ex, size_t i, size_t k) {
  if (!ex || i >= ex->items.size() || k >= ex->items[i].sequence.size()) return -1;
  return ex->items[i].sequence[k].midi();
}

const char *fa_exercises_note_name(const fa_exercises *ex, size_t i, size_t k) {
  if (!ex || i >= ex->names.size() || k >= ex->names[i].size()) return nullptr;
  return ex->names[i][k].c_str();
}

void fa_exercises_free(fa_exercises *ex) { delete ex; }

// ---- audio ------------------------------------------------------------------

fa_status fa_clip_create(const float *samples, size_t n, int sample_rate,
                         fa_clip **out) {
  return Guard([&] {
    Require(out, "out");
    if (n > 0) Require(samples, "samples");
    if (sample_rate <= 0)
      Fail(ErrorCode::kInvalidArgument, "sample rate must be positive");
    auto *c = new fa_clip;
    c->clip.sample_rate = sample_rate;
    c->clip.samples.assign(samples, samples + n);
    *out = c;
  });
}

fa_status fa_clip_read_wav(const char *path, fa_clip **out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    *out = new fa_clip{ReadWav(path)};
  });
}

fa_status fa_clip_write_wav(const fa_clip *clip, const char *path) {
  return Guard([&] {
    Require(clip, "clip");
    Require(path, "path");
    WriteWav(clip->clip, path);
  });
}

size_t fa_clip_length(const fa_clip *clip) { return clip ? clip->clip.samples.size() : 0; }
int fa_clip_sample_rate(const fa_clip *clip) { return clip ? clip->clip.sample_rate : 0; }
const float *fa_clip_samples(const fa_clip *clip) {
  return clip ? clip->clip.samples.data() : nullptr;
}
void fa_clip_free(fa_clip *clip) { delete clip; }

fa_status fa_synth_pluck(int midi, double duration, int sample_rate, uint64_t seed,
                         fa_clip **out) {
  return Guard([&] {
    Require(out, "out");
    *out = new fa_clip{SynthPluck(Pitch(midi), duration, sample_rate, seed)};
  });
}

void fa_tempo_policy_default(fa_tempo_policy *policy) {
  if (policy == nullptr) return;
  TempoPolicy d;
  *policy = {d.inter_onset, d.jitter, d.overlap, d.final_duration, d.min_amplitude,
             d.max_amplitude};
}

fa_status fa_synth_exercise(const fa_exercises *ex, size_t index,
                            const fa_tempo_policy *policy, int sample_rate,
                            uint64_t seed, fa_clip **clip, fa_labels **truth) {
  return Guard([&] {
    Require(ex, "ex");
    Require(clip, "clip");
    Require(truth, "truth");
    if (index >= ex->items.size())
      Fail(ErrorCode::kInvalidArgument, "exercise index out of range");
    SynthTake take = SynthExercise(ex->items[index], ToPolicy(policy), sample_rate, seed);
    auto labels = std::make_unique<fa_labels>();
    const auto &entries = take.score.entries;
    for (size_t i = 0; i < entries.size(); ++i) {
      double end = entries[i].onset + entries[i].duration;
      if (i + 1 < entries.size()) end = std::min(end, entries[i + 1].onset);
      labels->track.labels.push_back({entries[i].onset, end, entries[i].pitch.Name()});
    }
    ValidateTrack(labels->track);
    *clip = new fa_clip{std::move(take.clip)};
    *truth = labels.release();
  });
}

// ---- features ---------------------------------------------------------------

void fa_feature_config_default(fa_feature_config *cfg) {
  if (cfg == nullptr) return;
  FeatureConfig d;
  *cfg = {d.frame_length, d.hop,          d.pre_emphasis, d.mel_filters,
          d.cepstra,      d.delta_window, d.log_floor};
}

fa_status fa_feature_config_fingerprint(const fa_feature_config *cfg, int sample_rate,
                                        char *buf, size_t cap) {
  return Guard([&] {
    Require(buf, "buf");
    FeatureConfig c = ToConfig(cfg);
    c.Validate();
    CopyOut(c.Fingerprint(sample_rate), buf, cap);
  });
}

fa_status fa_features_compute(const fa_clip *clip, const fa_feature_config *cfg,
                              fa_features **out) {
  return Guard([&] {
    Require(clip, "clip");
    Require(out, "out");
    *out = MakeFeatures(ComputeMfcc(clip->clip, ToConfig(cfg)));
  });
}

size_t fa_features_frames(const fa_features *f) {
  return f ? static_cast<size_t>(f->m.frames.rows()) : 0;
}
size_t fa_features_dim(const fa_features *f) {
  return f ? static_cast<size_t>(f->m.frames.cols()) : 0;
}
const double *fa_features_data(const fa_features *f) {
  return f ? f->row_major.data() : nullptr;
}
double fa_features_hop(const fa_features *f) { return f ? f->m.hop : 0.0; }
const char *fa_features_fingerprint(const fa_features *f) {
  return f ? f->m.fingerprint.c_str() : nullptr;
}

fa_status fa_features_frame_time(const fa_features *f, size_t index, double *seconds) {
  return Guard([&] {
    Require(f, "features");
    Require(seconds, "seconds");
    if (index > static_cast<size_t>(f->m.NumFrames()))
      Fail(ErrorCode::kInvalidArgument, "frame index out of range");
    *seconds = FrameTime(static_cast<int>(index), f->m);
  });
}

fa_status fa_features_write_csv(const fa_features *f, const char *path) {
  return Guard([&] {
    Require(f, "features");
    Require(path, "path");
    util::WriteFileAtomic(path, FeaturesToCsv(f->m));
  });
}

void fa_features_free(fa_features *f) { delete f; }

// ---- labels -----------------------------------------------------------------

fa_status fa_labels_create(fa_labels **out) {
  return Guard([&] {
    Require(out, "out");
    *out = new fa_labels;
  });
}

fa_status fa_labels_append(fa_labels *labels, double start, double end,
                           const char *text) {
  return Guard([&] {
    Require(labels, "labels");
    Require(text, "text");
    LabelTrack probe;
    if (!labels->track.labels.empty()) probe.labels.push_back(labels->track.labels.back());
    probe.labels.push_back({start, end, text});
    ValidateTrack(probe);
    labels->track.labels.push_back({start, end, text});
  });
}

fa_status fa_labels_parse(const char *text, fa_labels **out) {
  return Guard([&] {
    Require(text, "text");
    Require(out, "out");
    *out = new fa_labels{ParseLab(text)};
  });
}

fa_status fa_labels_read(const char *path, fa_labels **out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    *out = new fa_labels{ReadLab(path)};
  });
}

fa_status fa_labels_write(const fa_labels *labels, const char *path) {
  return Guard([&] {
    Require(labels, "labels");
    Require(path, "path");
    WriteLab(labels->track, path);
  });
}

size_t fa_labels_count(const fa_labels *labels) {
  return labels ? labels->track.labels.size() : 0;
}

fa_status fa_labels_get(const fa_labels *labels, size_t i, double *start, double *end,
                        const char **text) {
  return Guard([&] {
    Require(labels, "labels");
    if (i >= labels->track.labels.size())
      Fail(ErrorCode::kInvalidArgument, "label index out of range");
    const Label &l = labels->track.labels[i];
    if (start) *start = l.start;
    if (end) *end = l.end;
    if (text) *text = l.text.c_str();
  });
}

fa_status fa_labels_shift(const fa_labels *labels, double delta_ms, fa_labels **out) {
  return Guard([&] {
    Require(labels, "labels");
    Require(out, "out");
    *out = new fa_labels{ShiftLabels(labels->track, delta_ms)};
  });
}

void fa_labels_free(fa_labels *labels) { delete labels; }

// ---- evaluation -------------------------------------------------------------

fa_status fa_onset_errors(const fa_labels *predicted, const fa_labels *reference,
                          const double *thresholds, size_t n_thresholds,
                          fa_report **out) {
  return Guard([&] {
    Require(predicted, "predicted");
    Require(reference, "reference");
    Require(out, "out");
    *out = MakeReport(OnsetErrors(predicted->track, reference->track,
                                  Thresholds(thresholds, n_thresholds)));
  });
}

fa_status fa_report_from_errors(const char *const *notes, const double *signed_ms,
                                size_t n, const double *thresholds,
                                size_t n_thresholds, fa_report **out) {
  return Guard([&] {
    Require(out, "out");
    if (n > 0) {
      Require(notes, "notes");
      Require(signed_ms, "signed_ms");
    }
    std::vector<OnsetError> errors;
    for (size_t i = 0; i < n; ++i) {
      Require(notes[i], "note name");
      errors.push_back({notes[i], std::abs(signed_ms[i]), signed_ms[i]});
    }
    *out = MakeReport(ReportFromErrors(std::move(errors),
                                       Thresholds(thresholds, n_thresholds)));
  });
}

fa_status fa_estimate_constant_shift(const fa_labels *predicted,
                                     const fa_labels *reference, double *delta_ms) {
  return Guard([&] {
    Require(predicted, "predicted");
    Require(reference, "reference");
    Require(delta_ms, "delta_ms");
    *delta_ms = EstimateConstantShift(predicted->track, reference->track);
  });
}

double fa_report_max_ms(const fa_report *r) { return r ? r->r.max_ms : 0.0; }
double fa_report_mean_ms(const fa_report *r) { return r ? r->r.mean_ms : 0.0; }
double fa_report_median_ms(const fa_report *r) { return r ? r->r.median_ms : 0.0; }
size_t fa_report_error_count(const fa_report *r) { return r ? r->r.per_note.size() : 0; }

fa_status fa_report_error(const fa_report *r, size_t i, const char **note,
                          double *abs_ms, double *signed_ms) {
  return Guard([&] {
    Require(r, "report");
    if (i >= r->r.per_note.size())
      Fail(ErrorCode::kInvalidArgument, "error index out of range");
    const auto &e = r->r.per_note[i];
    if (note) *note = e.note.c_str();
    if (abs_ms) *abs_ms = e.abs_ms;
    if (signed_ms) *signed_ms = e.signed_ms;
  });
}

size_t fa_report_threshold_count(const fa_report *r) {
  return r ? r->r.cumulative.size() : 0;
}

fa_status fa_report_threshold(const fa_report *r, size_t i, double *threshold_ms,
                              double *percentage) {
  return Guard([&] {
    Require(r, "report");
    if (i >= r->r.cumulative.size())
      Fail(ErrorCode::kInvalidArgument, "threshold index out of range");
    if (threshold_ms) *threshold_ms = r->r.cumulative[i].first;
    if (percentage) *percentage = r->r.cumulative[i].second;
  });
}

const char *fa_report_cumulative_csv(const fa_report *r) {
  return r ? r->cumulative_csv.c_str() : nullptr;
}
const char *fa_report_summary_csv(const fa_report *r) {
  return r ? r->summary_csv.c_str() : nullptr;
}
void fa_report_free(fa_report *r) { delete r; }

fa_status fa_note_counts(const fa_labels *const *tracks, size_t n, fa_counts **out) {
  return Guard([&] {
    Require(out, "out");
    if (n > 0) Require(tracks, "tracks");
    std::vector<LabelTrack> all;
    for (size_t i = 0; i < n; ++i) {
      Require(tracks[i], "track");
      all.push_back(tracks[i]->track);
    }
    auto counts = NoteCounts(all);
    auto *c = new fa_counts;
    c->csv = NoteCountsCsv(counts);
    // Same ordering as the CSV.
    auto lines = util::SplitLines(c->csv);
    for (size_t i = 1; i < lines.size(); ++i) {
      if (lines[i].empty()) continue;
      std::string name(lines[i].substr(0, lines[i].rfind(',')));
      c->rows.emplace_back(name, counts.at(name));
    }
    *out = c;
  });
}

size_t fa_counts_size(const fa_counts *c) { return c ? c->rows.size() : 0; }

fa_status fa_counts_get(const fa_counts *c, size_t i, const char **note, int *count) {
  return Guard([&] {
    Require(c, "counts");
    if (i >= c->rows.size()) Fail(ErrorCode::kInvalidArgument, "index out of range");
    if (note) *note = c->rows[i].first.c_str();
    if (count) *count = c->rows[i].second;
  });
}

const char *fa_counts_csv(const fa_counts *c) { return c ? c->csv.c_str() : nullptr; }
void fa_counts_free(fa_counts *c) { delete c; }

// ---- models -----------------------------------------------------------------

void fa_train_options_default(fa_train_options *opts) {
  if (opts == nullptr) return;
  TrainOptions d;
  *opts = {d.floor_ratio, d.min_instances, d.allow_few_instances ? 1 : 0};
}

fa_status fa_trainer_create(fa_trainer **out) {
  return Guard([&] {
    Require(out, "out");
    *out = new fa_trainer;
  });
}

fa_status fa_trainer_add_labels(fa_trainer *t, const fa_features *f,
                                const fa_labels *labels, int collect_gaps, int *used) {
  return Guard([&] {
    Require(t, "trainer");
    Require(f, "features");
    Require(labels, "labels");
    if (t->fingerprint.empty()) {
      t->fingerprint = f->m.fingerprint;
    } else if (!f->m.fingerprint.empty() && f->m.fingerprint != t->fingerprint) {
      Fail(ErrorCode::kConfigMismatch, "training features computed with different "
                                       "configurations: '" +
                                           t->fingerprint + "' vs '" +
                                           f->m.fingerprint + "'");
    }
    int n = CollectTrainingSegments(f->m, labels->track, collect_gaps != 0, &t->data);
    if (used) *used = n;
  });
}

fa_status fa_trainer_add_segment(fa_trainer *t, const char *label,
                                 const double *rows_data, size_t rows, size_t cols) {
  return Guard([&] {
    Require(t, "trainer");
    Require(label, "label");
    Require(rows_data, "rows_data");
    if (rows == 0 || cols == 0) Fail(ErrorCode::kInvalidArgument, "empty segment");
    Eigen::MatrixXd seg(rows, cols);
    for (size_t r = 0; r < rows; ++r)
      for (size_t c = 0; c < cols; ++c) seg(r, c) = rows_data[r * cols + c];
    t->data[label].push_back(std::move(seg));
  });
}

size_t fa_trainer_label_count(const fa_trainer *t) { return t ? t->data.size() : 0; }

fa_status fa_trainer_label(const fa_trainer *t, size_t i, const char **label,
                           size_t *instances, size_t *frames) {
  return Guard([&] {
    Require(t, "trainer");
    if (i >= t->data.size()) Fail(ErrorCode::kInvalidArgument, "index out of range");
    auto it = std::next(t->data.begin(), static_cast<long>(i));
    if (label) *label = it->first.c_str();
    if (instances) *instances = it->second.size();
    if (frames) {
      size_t n = 0;
      for (const auto &seg : it->second) n += static_cast<size_t>(seg.rows());
      *frames = n;
    }
  });
}

fa_status fa_trainer_train(const fa_trainer *t, const fa_train_options *opts,
                           fa_models **out) {
  return Guard([&] {
    Require(t, "trainer");
    Require(out, "out");
    TrainOptions o;
    if (opts) {
      o.floor_ratio = opts->floor_ratio;
      o.min_instances = opts->min_instances;
      o.allow_few_instances = opts->allow_few_instances != 0;
    }
    auto *m = new fa_models{TrainModels(t->data, o, t->fingerprint), {}};
    m->Index();
    *out = m;
  });
}

void fa_trainer_free(fa_trainer *t) { delete t; }

fa_status fa_models_load(const char *path, fa_models **out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    auto *m = new fa_models{LoadModels(path), {}};
    m->Index();
    *out = m;
  });
}

fa_status fa_models_save(const fa_models *m, const char *path) {
  return Guard([&] {
    Require(m, "models");
    Require(path, "path");
    SaveModels(m->set, path);
  });
}

size_t fa_models_count(const fa_models *m) { return m ? m->order.size() : 0; }

fa_status fa_models_get(const fa_models *m, size_t i, const char **label,
                        long *frame_count) {
  return Guard([&] {
    Require(m, "models");
    if (i >= m->order.size()) Fail(ErrorCode::kInvalidArgument, "index out of range");
    if (label) *label = m->order[i]->label().c_str();
    if (frame_count) *frame_count = m->order[i]->frame_count();
  });
}

const char *fa_models_fingerprint(const fa_models *m) {
  return m ? m->set.fingerprint.c_str() : nullptr;
}

fa_status fa_models_log_likelihood(const fa_models *m, const char *label,
                                   const double *frame, size_t dim, double *out) {
  return Guard([&] {
    Require(m, "models");
    Require(label, "label");
    Require(frame, "frame");
    Require(out, "out");
    Eigen::Map<const Eigen::VectorXd> x(frame, static_cast<long>(dim));
    *out = m->set.Get(label).LogLikelihood(x);
  });
}

void fa_models_free(fa_models *m) { delete m; }

// ---- alignment --------------------------------------------------------------

void fa_align_config_default(fa_align_config *cfg) {
  if (cfg == nullptr) return;
  AlignConfig d;
  *cfg = {d.self_loop_prob, d.min_duration_frames, d.gap_model ? 1 : 0};
}

fa_status fa_force_align(const fa_features *f, const char *const *transcript, size_t n,
                         const fa_models *models, const fa_align_config *cfg,
                         fa_segmentation **out) {
  return Guard([&] {
    Require(f, "features");
    Require(models, "models");
    Require(out, "out");
    if (n > 0) Require(transcript, "transcript");
    std::vector<std::string> notes;
    for (size_t i = 0; i < n; ++i) {
      Require(transcript[i], "transcript entry");
      notes.emplace_back(transcript[i]);
    }
    *out = new fa_segmentation{ForceAlign(f->m, notes, models->set, ToAlign(cfg))};
  });
}

size_t fa_segmentation_count(const fa_segmentation *s) {
  return s ? s->seg.segments.size() : 0;
}

fa_status fa_segmentation_get(const fa_segmentation *s, size_t i, const char **label,
                              int *start, int *end, int *is_gap) {
  return Guard([&] {
    Require(s, "segmentation");
    if (i >= s->seg.segments.size())
      Fail(ErrorCode::kInvalidArgument, "segment index out of range");
    const Segment &g = s->seg.segments[i];
    if (label) *label = g.label.c_str();
    if (start) *start = g.start;
    if (end) *end = g.end;
    if (is_gap) *is_gap = g.gap ? 1 : 0;
  });
}

double fa_segmentation_score(const fa_segmentation *s) {
  return s ? s->seg.total_log_likelihood : 0.0;
}

fa_status fa_segmentation_to_labels(const fa_segmentation *s, const fa_features *f,
                                    fa_labels **out) {
  return Guard([&] {
    Require(s, "segmentation");
    Require(f, "features");
    Require(out, "out");
    *out = new fa_labels{SegmentationToLabels(s->seg, f->m)};
  });
}

void fa_segmentation_free(fa_segmentation *s) { delete s; }

}  // extern "C"
