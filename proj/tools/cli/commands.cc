// tools/cli/commands.cc

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

#include "commands.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "cli-common.h"

namespace fretalign {
namespace cli {

namespace {

struct Globals {
  std::string root = ".";
  std::string config_path;
  std::vector<std::string> sets;
  bool force = false;
};

struct Context {
  Corpus corpus;
  RunConfig cfg;
  bool force = false;
  std::ostream *out = nullptr;
  std::ostream *err = nullptr;

  int Jobs() const { return cfg.GetInt("jobs"); }
  uint64_t Seed() const { return cfg.GetU64("seed"); }
};

std::string Fmt(const char *fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

double Median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

ExercisesPtr LoadExercises(const Context &ctx, int string) {
  std::string path = ctx.corpus.ExerciseFile(string);
  if (!FileExists(path))
    throw CliError(kExitInputError, "missing sequence file " + path + " (run compose)");
  fa_exercises *raw = nullptr;
  Check(fa_exercises_read(path.c_str(), &raw), path);
  return ExercisesPtr(raw);
}

// Transcript of exercise `id`, or empty if the file has no such exercise.
std::vector<std::string> Transcript(const fa_exercises *ex, const std::string &id) {
  std::vector<std::string> out;
  for (size_t i = 0; i < fa_exercises_count(ex); ++i) {
    if (id != fa_exercises_id(ex, i)) continue;
    for (size_t k = 0; k < fa_exercises_length(ex, i); ++k)
      out.emplace_back(fa_exercises_note_name(ex, i, k));
  }
  return out;
}

std::vector<std::string> CoveredNames(int string) {
  size_t n = 0;
  Check(fa_covered_pitches(string, nullptr, 0, &n), "covered pitches");
  std::vector<int> midis(n);
  Check(fa_covered_pitches(string, midis.data(), n, &n), "covered pitches");
  std::vector<std::string> out;
  for (int m : midis) {
    char buf[16];
    Check(fa_pitch_name(m, buf, sizeof(buf)), "pitch name");
    out.emplace_back(buf);
  }
  return out;
}

FeaturesPtr ComputeFeatures(const Context &ctx, const std::string &wav_path) {
  fa_clip *clip = nullptr;
  Check(fa_clip_read_wav(wav_path.c_str(), &clip), wav_path);
  ClipPtr owned(clip);
  fa_feature_config fc = ctx.cfg.Features();
  fa_features *f = nullptr;
  Check(fa_features_compute(clip, &fc, &f), wav_path);
  return FeaturesPtr(f);
}

LabelsPtr ReadLabels(const std::string &path) {
  fa_labels *raw = nullptr;
  Check(fa_labels_read(path.c_str(), &raw), path);
  return LabelsPtr(raw);
}

std::vector<std::string> LabelTexts(const fa_labels *l) {
  std::vector<std::string> out;
  for (size_t i = 0; i < fa_labels_count(l); ++i) {
    const char *text = nullptr;
    Check(fa_labels_get(l, i, nullptr, nullptr, &text), "label");
    out.emplace_back(text);
  }
  return out;
}

// Aligned labels for one take, before any shift correction.
LabelsPtr AlignTake(const Context &ctx, const std::string &wav_path,
                    const std::vector<std::string> &transcript, const fa_models *models,
                    size_t *frames, double *score) {
  FeaturesPtr f = ComputeFeatures(ctx, wav_path);
  std::vector<const char *> notes;
  for (const auto &n : transcript) notes.push_back(n.c_str());
  fa_align_config ac = ctx.cfg.Align();
  fa_segmentation *seg = nullptr;
  Check(fa_force_align(f.get(), notes.data(), notes.size(), models, &ac, &seg), wav_path);
  SegmentationPtr owned(seg);
  fa_labels *labels = nullptr;
  Check(fa_segmentation_to_labels(seg, f.get(), &labels), wav_path);
  if (frames) *frames = fa_features_frames(f.get());
  if (score) *score = fa_segmentation_score(seg);
  return LabelsPtr(labels);
}

double EstimateShift(const fa_labels *predicted, const fa_labels *reference,
                     const std::string &what) {
  double delta = 0.0;
  Check(fa_estimate_constant_shift(predicted, reference, &delta), what);
  return delta;
}

LabelsPtr Shifted(const fa_labels *labels, double delta_ms, const std::string &what) {
  fa_labels *raw = nullptr;
  Check(fa_labels_shift(labels, delta_ms, &raw), what);
  return LabelsPtr(raw);
}

void WriteLabels(const fa_labels *labels, const std::string &path) {
  Check(fa_labels_write(labels, path.c_str()), path);
}

void WriteReport(const Context &ctx, const std::string &path, const std::string &body) {
  MakeDirs(ctx.corpus.ReportsDir());
  WriteTextAtomic(path, ctx.cfg.Echo() + body);
}

void RefuseCollisions(const Context &ctx, const std::vector<std::string> &paths) {
  if (ctx.force) return;
  std::vector<std::string> existing;
  for (const auto &p : paths)
    if (FileExists(p)) existing.push_back(p);
  if (existing.empty()) return;
  std::string msg = std::to_string(existing.size()) +
                    " output file(s) already exist (use --force), e.g. " + existing[0];
  throw CliError(kExitInputError, msg);
}

// ---- compose ----------------------------------------------------------------

int CmdCompose(Context &ctx, const std::string &strings_spec) {
  auto strings = ParseStrings(strings_spec);
  std::vector<std::string> targets;
  for (int s : strings) targets.push_back(ctx.corpus.ExerciseFile(s));
  RefuseCollisions(ctx, targets);
  MakeDirs(ctx.corpus.ExercisesDir());
  std::string len_spec = ctx.cfg.Get("compose.length");
  int length = len_spec == "auto" ? 0 : ctx.cfg.GetInt("compose.length");
  int count = ctx.cfg.GetInt("compose.count");
  size_t lines = 0;
  for (int s : strings) {
    fa_exercises *raw = nullptr;
    Check(fa_exercises_compose(s, count, length, ctx.Seed(), &raw),
          "string " + std::to_string(s));
    ExercisesPtr ex(raw);
    std::string path = ctx.corpus.ExerciseFile(s);
    Check(fa_exercises_write(ex.get(), path.c_str()), path);
    lines += fa_exercises_count(ex.get());
    *ctx.out << "wrote " << path << " (" << fa_exercises_count(ex.get())
             << " exercises)\n";
  }
  *ctx.out << "composed " << lines << " exercises across " << strings.size()
           << " file(s)\n";
  return kExitOk;
}

// ---- synth ------------------------------------------------------------------

struct SynthJob {
  const fa_exercises *ex;
  size_t index;
  int string;
  int exercise;
  int take;
  std::string stem;
  bool manual;
};

int CmdSynth(Context &ctx, const std::string &strings_spec) {
  auto strings = ParseStrings(strings_spec);
  const int takes = ctx.cfg.GetInt("synth.takes");
  const int manual_takes = ctx.cfg.GetInt("synth.manual_takes");
  const int sample_rate = ctx.cfg.GetInt("sample_rate");
  const fa_tempo_policy policy = ctx.cfg.Tempo();

  std::vector<ExercisesPtr> loaded;
  std::vector<SynthJob> jobs;
  for (int s : strings) {
    loaded.push_back(LoadExercises(ctx, s));
    const fa_exercises *ex = loaded.back().get();
    // Bootstrap set: the first takes in round-robin order over the
    // exercises, so each note is seen in several melodic contexts.
    const size_t num_ex = fa_exercises_count(ex);
    for (size_t i = 0; i < num_ex; ++i) {
      for (int t = 1; t <= takes; ++t) {
        size_t rank = static_cast<size_t>(t - 1) * num_ex + i;
        jobs.push_back({ex, i, s, static_cast<int>(i + 1), t,
                        MakeTakeStem(fa_exercises_id(ex, i), t),
                        rank < static_cast<size_t>(std::max(manual_takes, 0))});
      }
    }
  }

  std::vector<std::string> targets;
  for (const auto &j : jobs) {
    targets.push_back(ctx.corpus.WavDir() + "/" + j.stem + ".wav");
    targets.push_back(ctx.corpus.TruthDir() + "/" + j.stem + ".lab");
    if (j.manual) targets.push_back(ctx.corpus.ManualDir() + "/" + j.stem + ".lab");
  }
  RefuseCollisions(ctx, targets);
  MakeDirs(ctx.corpus.WavDir());
  MakeDirs(ctx.corpus.TruthDir());
  MakeDirs(ctx.corpus.ManualDir());

  auto errors = RunParallel(jobs.size(), ctx.Jobs(), [&](size_t n) {
    const SynthJob &j = jobs[n];
    fa_clip *clip = nullptr;
    fa_labels *truth = nullptr;
    uint64_t seed = DeriveSeed(ctx.Seed(), static_cast<uint64_t>(j.string),
                               static_cast<uint64_t>(j.exercise),
                               static_cast<uint64_t>(j.take));
    Check(fa_synth_exercise(j.ex, j.index, &policy, sample_rate, seed, &clip, &truth),
          j.stem);
    ClipPtr c(clip);
    LabelsPtr l(truth);
    std::string wav = ctx.corpus.WavDir() + "/" + j.stem + ".wav";
    Check(fa_clip_write_wav(clip, wav.c_str()), wav);
    WriteLabels(truth, ctx.corpus.TruthDir() + "/" + j.stem + ".lab");
    if (j.manual) WriteLabels(truth, ctx.corpus.ManualDir() + "/" + j.stem + ".lab");
  });
  int failed = 0;
  for (size_t i = 0; i < errors.size(); ++i) {
    if (errors[i].empty()) continue;
    ++failed;
    *ctx.err << "error: " << errors[i] << "\n";
  }
  size_t manual = std::count_if(jobs.begin(), jobs.end(),
                                [](const SynthJob &j) { return j.manual; });
  *ctx.out << "synthesized " << jobs.size() - failed << " takes (" << manual
           << " with manual labels)\n";
  return failed ? kExitInputError : kExitOk;
}

// ---- train ------------------------------------------------------------------

void TrainString(Context &ctx, int s) {
  ExercisesPtr ex = LoadExercises(ctx, s);
  std::vector<std::string> stems;
  for (const auto &stem : ListStems(ctx.corpus.ManualDir(), ".lab")) {
    TakeName tn;
    if (ParseTakeName(stem, &tn) && tn.string == s) stems.push_back(stem);
  }
  if (stems.empty())
    throw CliError(kExitInputError, "string " + std::to_string(s) +
                                        ": no manual labels in " +
                                        ctx.corpus.ManualDir());

  std::vector<FeaturesPtr> feats(stems.size());
  std::vector<LabelsPtr> labels(stems.size());
  auto errors = RunParallel(stems.size(), ctx.Jobs(), [&](size_t i) {
    std::string wav = ctx.corpus.WavDir() + "/" + stems[i] + ".wav";
    if (!FileExists(wav)) throw CliError(kExitInputError, "missing audio " + wav);
    labels[i] = ReadLabels(ctx.corpus.ManualDir() + "/" + stems[i] + ".lab");
    feats[i] = ComputeFeatures(ctx, wav);
  });
  for (const auto &e : errors)
    if (!e.empty()) throw CliError(kExitInputError, e);

  TrainerPtr trainer;
  {
    fa_trainer *raw = nullptr;
    Check(fa_trainer_create(&raw), "trainer");
    trainer.reset(raw);
  }
  const bool gaps = ctx.cfg.GetBool("align.gap_model");
  for (size_t i = 0; i < stems.size(); ++i)
    Check(fa_trainer_add_labels(trainer.get(), feats[i].get(), labels[i].get(), gaps,
                                nullptr),
          stems[i]);

  std::map<std::string, size_t> instances, frames;
  for (size_t i = 0; i < fa_trainer_label_count(trainer.get()); ++i) {
    const char *label = nullptr;
    size_t n = 0, f = 0;
    Check(fa_trainer_label(trainer.get(), i, &label, &n, &f), "trainer");
    instances[label] = n;
    frames[label] = f;
  }
  std::set<std::string> required;
  for (size_t i = 0; i < fa_exercises_count(ex.get()); ++i)
    for (size_t k = 0; k < fa_exercises_length(ex.get(), i); ++k)
      required.insert(fa_exercises_note_name(ex.get(), i, k));
  for (const auto &[label, n] : instances)
    if (label != "sil") required.insert(label);
  const size_t min_instances = static_cast<size_t>(ctx.cfg.GetInt("train.min_instances"));
  std::string deficient;
  for (const auto &note : required) {
    size_t n = instances.count(note) ? instances[note] : 0;
    if (n < min_instances) deficient += " " + note + "(" + std::to_string(n) + ")";
  }
  if (!deficient.empty())
    throw CliError(kExitInputError, "string " + std::to_string(s) + ": fewer than " +
                                        std::to_string(min_instances) +
                                        " manual instances for:" + deficient);
  if (gaps && !instances.count("sil"))
    throw CliError(kExitInputError, "string " + std::to_string(s) +
                                        ": gap model enabled but labels leave no gaps");

  fa_train_options opts = ctx.cfg.Train();
  fa_models *raw = nullptr;
  Check(fa_trainer_train(trainer.get(), &opts, &raw), "string " + std::to_string(s));
  ModelsPtr models(raw);
  MakeDirs(ctx.corpus.ModelsDir());
  std::string path = ctx.corpus.ModelFile(s);
  Check(fa_models_save(models.get(), path.c_str()), path);
  *ctx.out << "string " << s << ": " << fa_models_count(models.get())
           << " models from " << stems.size() << " files -> " << path << "\n";
  for (const auto &[label, n] : instances)
    *ctx.out << "  " << label << ": " << n << " instances, " << frames[label]
             << " frames\n";
}

int CmdTrain(Context &ctx, const std::string &strings_spec) {
  int failed = 0;
  for (int s : ParseStrings(strings_spec)) {
    try {
      TrainString(ctx, s);
    } catch (const CliError &e) {
      *ctx.err << "error: " << e.what() << "\n";
      ++failed;
    } catch (const ApiError &e) {
      *ctx.err << "error: " << e.what() << "\n";
      ++failed;
    }
  }
  return failed ? kExitInputError : kExitOk;
}

// ---- align ------------------------------------------------------------------

struct AlignRow {
  std::string stem;
  int string = 0;
  size_t frames = 0;
  double score = 0.0;
  double shift_ms = 0.0;
  std::string shift_source = "none";
  std::string error;
};

// Median constant shift over a string's bootstrap files, aligned against
// their manual labels.  Returns false when there is no usable file.
bool BootstrapShift(const Context &ctx, int s, const fa_exercises *ex,
                    const fa_models *models, double *shift) {
  std::vector<double> shifts;
  for (const auto &stem : ListStems(ctx.corpus.ManualDir(), ".lab")) {
    TakeName tn;
    if (!ParseTakeName(stem, &tn) || tn.string != s) continue;
    std::string wav = ctx.corpus.WavDir() + "/" + stem + ".wav";
    auto transcript = Transcript(ex, tn.ExerciseId());
    if (!FileExists(wav) || transcript.empty()) continue;
    try {
      LabelsPtr manual = ReadLabels(ctx.corpus.ManualDir() + "/" + stem + ".lab");
      if (LabelTexts(manual.get()) != transcript) continue;
      LabelsPtr aligned = AlignTake(ctx, wav, transcript, models, nullptr, nullptr);
      shifts.push_back(EstimateShift(aligned.get(), manual.get(), stem));
    } catch (const ApiError &) {
      continue;
    }
  }
  if (shifts.empty()) return false;
  *shift = Median(shifts);
  return true;
}

int CmdAlign(Context &ctx, const std::string &strings_spec, bool shift_correct,
             bool include_manual) {
  std::vector<AlignRow> rows;
  std::vector<ModelsPtr> models_by_row_owner;
  std::map<int, const fa_models *> models;
  std::map<int, ExercisesPtr> exercises;
  std::map<int, std::string> string_errors;
  std::map<int, double> bootstrap_shift;

  for (int s : ParseStrings(strings_spec)) {
    std::vector<std::string> stems;
    for (const auto &stem : ListStems(ctx.corpus.WavDir(), ".wav")) {
      TakeName tn;
      if (!ParseTakeName(stem, &tn) || tn.string != s) continue;
      if (!include_manual && FileExists(ctx.corpus.ManualDir() + "/" + stem + ".lab"))
        continue;
      rows.push_back({stem, s, 0, 0.0, 0.0, "none", ""});
    }
    try {
      exercises[s] = LoadExercises(ctx, s);
      std::string mpath = ctx.corpus.ModelFile(s);
      if (!FileExists(mpath))
        throw CliError(kExitInputError, "missing model file " + mpath + " (run train)");
      fa_models *raw = nullptr;
      Check(fa_models_load(mpath.c_str(), &raw), mpath);
      models_by_row_owner.emplace_back(raw);
      models[s] = raw;
      if (shift_correct) {
        double shift = 0.0;
        if (BootstrapShift(ctx, s, exercises[s].get(), raw, &shift))
          bootstrap_shift[s] = shift;
      }
    } catch (const std::exception &e) {
      string_errors[s] = e.what();
    }
    if (models.count(s)) {
      const fa_feature_config fcfg = ctx.cfg.Features();
      char fp[512];
      Check(fa_feature_config_fingerprint(&fcfg, ctx.cfg.GetInt("sample_rate"), fp,
                                          sizeof(fp)),
            "feature fingerprint");
      const std::string trained = fa_models_fingerprint(models[s]);
      if (!trained.empty() && trained != fp)
        throw CliError(kExitConfigError, ctx.corpus.ModelFile(s) +
                                             " was trained with features '" + trained +
                                             "' but the configuration gives '" + fp + "'");
    }
  }

  MakeDirs(ctx.corpus.AutoDir());
  auto errors = RunParallel(rows.size(), ctx.Jobs(), [&](size_t i) {
    AlignRow &row = rows[i];
    if (string_errors.count(row.string))
      throw CliError(kExitInputError, string_errors.at(row.string));
    TakeName tn;
    ParseTakeName(row.stem, &tn);
    auto transcript = Transcript(exercises.at(row.string).get(), tn.ExerciseId());
    if (transcript.empty())
      throw CliError(kExitInputError, "no transcript for exercise " + tn.ExerciseId());
    std::string wav = ctx.corpus.WavDir() + "/" + row.stem + ".wav";
    LabelsPtr labels = AlignTake(ctx, wav, transcript, models.at(row.string),
                                 &row.frames, &row.score);
    if (shift_correct) {
      std::string truth = ctx.corpus.TruthDir() + "/" + row.stem + ".lab";
      std::string manual = ctx.corpus.ManualDir() + "/" + row.stem + ".lab";
      std::string ref = FileExists(truth) ? truth : (FileExists(manual) ? manual : "");
      if (!ref.empty()) {
        LabelsPtr reference = ReadLabels(ref);
        row.shift_ms = EstimateShift(labels.get(), reference.get(), row.stem);
        row.shift_source = ref == truth ? "truth" : "manual";
      } else if (bootstrap_shift.count(row.string)) {
        row.shift_ms = bootstrap_shift.at(row.string);
        row.shift_source = "bootstrap";
      }
      if (row.shift_ms != 0.0) labels = Shifted(labels.get(), row.shift_ms, row.stem);
    }
    WriteLabels(labels.get(), ctx.corpus.AutoDir() + "/" + row.stem + ".lab");
  });

  int failed = 0;
  std::ostringstream csv;
  csv << "file,string,status,frames,log_likelihood,shift_ms,shift_source,message\n";
  for (size_t i = 0; i < rows.size(); ++i) {
    AlignRow &row = rows[i];
    row.error = errors[i];
    bool ok = row.error.empty();
    if (!ok) {
      ++failed;
      *ctx.err << "error: " << row.stem << ": " << row.error << "\n";
    }
    std::string msg = row.error;
    std::replace(msg.begin(), msg.end(), ',', ';');
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    csv << row.stem << ',' << row.string << ',' << (ok ? "ok" : "failed") << ','
        << row.frames << ',' << Fmt("%.6f", row.score) << ','
        << Fmt("%.3f", row.shift_ms) << ',' << row.shift_source << ',' << msg << "\n";
  }
  WriteReport(ctx, ctx.corpus.ReportsDir() + "/align.csv", csv.str());
  *ctx.out << "aligned " << rows.size() - failed << " of " << rows.size() << " files";
  if (shift_correct) *ctx.out << " (shift-corrected)";
  *ctx.out << "\n";
  for (const auto &[s, e] : string_errors)
    *ctx.err << "error: string " << s << ": " << e << "\n";
  if (rows.empty() && !string_errors.empty()) return kExitInputError;
  return failed ? kExitPartialFailure : kExitOk;
}

// ---- eval -------------------------------------------------------------------

struct EvalRow {
  std::string stem;
  LabelsPtr reference;
  ReportPtr before;
  ReportPtr after;
  double shift_ms = 0.0;
};

ReportPtr Pool(const std::vector<EvalRow> &rows, bool shifted) {
  std::vector<std::string> names;
  std::vector<double> errors;
  for (const auto &row : rows) {
    const fa_report *r = shifted ? row.after.get() : row.before.get();
    if (r == nullptr) continue;
    for (size_t i = 0; i < fa_report_error_count(r); ++i) {
      const char *note = nullptr;
      double signed_ms = 0.0;
      Check(fa_report_error(r, i, &note, nullptr, &signed_ms), "report");
      names.emplace_back(note);
      errors.push_back(signed_ms);
    }
  }
  std::vector<const char *> ptrs;
  for (const auto &n : names) ptrs.push_back(n.c_str());
  fa_report *raw = nullptr;
  Check(fa_report_from_errors(ptrs.data(), errors.data(), errors.size(), nullptr, 0, &raw),
        "pooled report");
  return ReportPtr(raw);
}

void PrintTable(std::ostream &out, const char *title, const fa_report *r) {
  out << title << ": notes " << fa_report_error_count(r) << ", max "
      << Fmt("%.3f", fa_report_max_ms(r)) << " ms, mean "
      << Fmt("%.3f", fa_report_mean_ms(r)) << " ms, median "
      << Fmt("%.3f", fa_report_median_ms(r)) << " ms\n";
  out << "  Error (ms)  Percentage of Notes\n";
  for (size_t i = 0; i < fa_report_threshold_count(r); ++i) {
    double thr = 0.0, pct = 0.0;
    Check(fa_report_threshold(r, i, &thr, &pct), "report");
    char buf[96];
    if (std::isinf(thr))
      std::snprintf(buf, sizeof(buf), "  %10s  %6.2f%%\n", "inf", pct);
    else
      std::snprintf(buf, sizeof(buf), "  %10g  %6.2f%%\n", thr, pct);
    out << buf;
  }
}

int CmdEval(Context &ctx, const std::string &pred_dir, const std::string &ref_dir,
            const std::string &out_dir) {
  auto stems = ListStems(pred_dir, ".lab");
  if (stems.empty())
    throw CliError(kExitInputError, "no .lab files in " + pred_dir);
  std::vector<std::string> unmatched;
  std::vector<EvalRow> rows;
  for (const auto &stem : stems) {
    if (FileExists(ref_dir + "/" + stem + ".lab"))
      rows.push_back({stem, nullptr, nullptr, nullptr, 0.0});
    else
      unmatched.push_back(stem);
  }
  auto errors = RunParallel(rows.size(), ctx.Jobs(), [&](size_t i) {
    EvalRow &row = rows[i];
    LabelsPtr pred = ReadLabels(pred_dir + "/" + row.stem + ".lab");
    LabelsPtr ref = ReadLabels(ref_dir + "/" + row.stem + ".lab");
    fa_report *raw = nullptr;
    Check(fa_onset_errors(pred.get(), ref.get(), nullptr, 0, &raw), row.stem);
    ReportPtr before(raw);
    row.shift_ms = EstimateShift(pred.get(), ref.get(), row.stem);
    LabelsPtr moved = Shifted(pred.get(), row.shift_ms, row.stem);
    Check(fa_onset_errors(moved.get(), ref.get(), nullptr, 0, &raw), row.stem);
    row.after.reset(raw);
    row.before = std::move(before);
    row.reference = std::move(ref);
  });

  int failed = 0;
  std::ostringstream per_file;
  per_file << "file,notes,max_ms,mean_ms,shift_ms,max_ms_shifted,mean_ms_shifted\n";
  for (size_t i = 0; i < rows.size(); ++i) {
    if (!errors[i].empty()) {
      ++failed;
      *ctx.err << "error: " << errors[i] << "\n";
      continue;
    }
    const EvalRow &r = rows[i];
    per_file << r.stem << ',' << fa_report_error_count(r.before.get()) << ','
             << Fmt("%.3f", fa_report_max_ms(r.before.get())) << ','
             << Fmt("%.3f", fa_report_mean_ms(r.before.get())) << ','
             << Fmt("%.3f", r.shift_ms) << ','
             << Fmt("%.3f", fa_report_max_ms(r.after.get())) << ','
             << Fmt("%.3f", fa_report_mean_ms(r.after.get())) << "\n";
  }
  ReportPtr pooled = Pool(rows, false);
  ReportPtr pooled_shifted = Pool(rows, true);

  std::vector<const fa_labels *> refs;
  for (const auto &r : rows)
    if (r.reference) refs.push_back(r.reference.get());
  fa_counts *raw_counts = nullptr;
  Check(fa_note_counts(refs.data(), refs.size(), &raw_counts), "note counts");
  CountsPtr counts(raw_counts);

  MakeDirs(out_dir);
  auto write = [&](const std::string &name, const std::string &body) {
    WriteTextAtomic(out_dir + "/" + name, ctx.cfg.Echo() + body);
  };
  write("eval_per_file.csv", per_file.str());
  write("eval_cumulative.csv", fa_report_cumulative_csv(pooled.get()));
  write("eval_cumulative_shifted.csv", fa_report_cumulative_csv(pooled_shifted.get()));
  write("eval_summary.csv", fa_report_summary_csv(pooled.get()));
  write("eval_summary_shifted.csv", fa_report_summary_csv(pooled_shifted.get()));
  write("note_counts.csv", fa_counts_csv(counts.get()));

  *ctx.out << "evaluated " << rows.size() - failed << " files against " << ref_dir
           << "\n";
  PrintTable(*ctx.out, "onset error", pooled.get());
  PrintTable(*ctx.out, "onset error after per-file constant shift", pooled_shifted.get());
  *ctx.out << "max_ms,mean_ms\n"
           << Fmt("%.3f", fa_report_max_ms(pooled.get())) << ','
           << Fmt("%.3f", fa_report_mean_ms(pooled.get())) << "\n";
  for (const auto &u : unmatched)
    *ctx.err << "unmatched: " << u << ".lab has no reference in " << ref_dir << "\n";
  return (failed || !unmatched.empty()) ? kExitInputError : kExitOk;
}

// ---- stats ------------------------------------------------------------------

LabelsPtr SequenceAsTrack(const std::vector<std::string> &notes) {
  fa_labels *raw = nullptr;
  Check(fa_labels_create(&raw), "labels");
  LabelsPtr track(raw);
  for (size_t k = 0; k < notes.size(); ++k)
    Check(fa_labels_append(raw, static_cast<double>(k), static_cast<double>(k + 1),
                           notes[k].c_str()),
          "labels");
  return track;
}

CountsPtr Count(const std::vector<LabelsPtr> &tracks) {
  std::vector<const fa_labels *> ptrs;
  for (const auto &t : tracks) ptrs.push_back(t.get());
  fa_counts *raw = nullptr;
  Check(fa_note_counts(ptrs.data(), ptrs.size(), &raw), "note counts");
  return CountsPtr(raw);
}

int CmdStats(Context &ctx) {
  std::vector<TakeName> takes;
  for (const auto &stem : ListStems(ctx.corpus.WavDir(), ".wav")) {
    TakeName tn;
    if (ParseTakeName(stem, &tn)) takes.push_back(tn);
  }
  if (takes.empty()) {
    *ctx.out << "no files: " << ctx.corpus.WavDir()
             << " contains no s<string>_e<exercise>_t<take>.wav recordings\n";
    return kExitOk;
  }

  std::map<int, ExercisesPtr> exercises;
  std::vector<LabelsPtr> sequences;
  std::map<int, std::set<int>> exercise_ids;
  std::map<int, size_t> files_per_string;
  std::map<int, std::set<int>> take_ids;
  size_t missing_transcripts = 0;
  for (const auto &tn : takes) {
    ++files_per_string[tn.string];
    exercise_ids[tn.string].insert(tn.exercise);
    take_ids[tn.string].insert(tn.take);
    if (!exercises.count(tn.string)) {
      std::string path = ctx.corpus.ExerciseFile(tn.string);
      exercises[tn.string] = nullptr;
      if (FileExists(path)) {
        fa_exercises *raw = nullptr;
        Check(fa_exercises_read(path.c_str(), &raw), path);
        exercises[tn.string].reset(raw);
      }
    }
    auto notes = exercises[tn.string]
                     ? Transcript(exercises[tn.string].get(), tn.ExerciseId())
                     : std::vector<std::string>{};
    if (notes.empty()) {
      ++missing_transcripts;
      continue;
    }
    sequences.push_back(SequenceAsTrack(notes));
  }

  std::vector<LabelsPtr> manual;
  std::map<int, size_t> manual_files;
  for (const auto &stem : ListStems(ctx.corpus.ManualDir(), ".lab")) {
    TakeName tn;
    if (!ParseTakeName(stem, &tn)) continue;
    ++manual_files[tn.string];
    manual.push_back(ReadLabels(ctx.corpus.ManualDir() + "/" + stem + ".lab"));
  }

  CountsPtr corpus_counts = Count(sequences);
  CountsPtr manual_counts = Count(manual);
  std::map<std::string, int> manual_by_note;
  for (size_t i = 0; i < fa_counts_size(manual_counts.get()); ++i) {
    const char *note = nullptr;
    int n = 0;
    Check(fa_counts_get(manual_counts.get(), i, &note, &n), "counts");
    manual_by_note[note] = n;
  }

  std::ostringstream per_string;
  per_string << "string,files,exercises,takes,manual_files\n";
  for (const auto &[s, n] : files_per_string)
    per_string << s << ',' << n << ',' << exercise_ids[s].size() << ','
               << take_ids[s].size() << ',' << manual_files[s] << "\n";
  WriteReport(ctx, ctx.corpus.ReportsDir() + "/stats_strings.csv", per_string.str());
  WriteReport(ctx, ctx.corpus.ReportsDir() + "/stats_note_counts.csv",
              fa_counts_csv(corpus_counts.get()));
  WriteReport(ctx, ctx.corpus.ReportsDir() + "/stats_manual_counts.csv",
              fa_counts_csv(manual_counts.get()));

  const int min_instances = ctx.cfg.GetInt("train.min_instances");
  std::vector<std::string> gaps;
  for (const auto &[s, n] : files_per_string)
    for (const auto &note : CoveredNames(s))
      if (manual_by_note[note] < min_instances)
        gaps.push_back(note + "(" + std::to_string(manual_by_note[note]) + ")");

  const size_t num_notes = fa_counts_size(corpus_counts.get());
  long total = 0;
  int lo = 0, hi = 0;
  for (size_t i = 0; i < num_notes; ++i) {
    int n = 0;
    Check(fa_counts_get(corpus_counts.get(), i, nullptr, &n), "counts");
    total += n;
    lo = i == 0 ? n : std::min(lo, n);
    hi = std::max(hi, n);
  }
  *ctx.out << "files: " << takes.size() << " across " << files_per_string.size()
           << " string(s)\n";
  for (const auto &[s, n] : files_per_string)
    *ctx.out << "  string " << s << ": " << n << " files, " << exercise_ids[s].size()
             << " exercises, " << take_ids[s].size() << " takes, " << manual_files[s]
             << " manually labeled\n";
  *ctx.out << "notes covered: " << num_notes << ", instances per note: min " << lo
           << ", max " << hi << ", mean "
           << Fmt("%.1f", num_notes ? static_cast<double>(total) / num_notes : 0.0)
           << "\n";
  if (missing_transcripts)
    *ctx.out << "warning: " << missing_transcripts << " file(s) without a transcript\n";
  if (gaps.empty()) {
    *ctx.out << "manual coverage: every covered note has >= " << min_instances
             << " instances\n";
  } else {
    *ctx.out << "manual coverage gaps (< " << min_instances << " instances):";
    for (const auto &g : gaps) *ctx.out << " " << g;
    *ctx.out << "\n";
  }
  return kExitOk;
}

// ---- shift ------------------------------------------------------------------

int CmdShift(Context &ctx, const std::string &in, const std::string &out_path,
             const double *delta_ms, const std::string &reference) {
  if ((delta_ms == nullptr) == reference.empty())
    throw CliError(kExitConfigError, "give exactly one of --delta-ms or --reference");
  RefuseCollisions(ctx, {out_path});
  LabelsPtr labels = ReadLabels(in);
  double delta = 0.0;
  if (delta_ms) {
    delta = *delta_ms;
  } else {
    LabelsPtr ref = ReadLabels(reference);
    delta = EstimateShift(labels.get(), ref.get(), in);
  }
  LabelsPtr moved = Shifted(labels.get(), delta, in);
  WriteLabels(moved.get(), out_path);
  *ctx.out << "shifted " << in << " by " << Fmt("%.3f", delta) << " ms -> " << out_path
           << "\n";
  return kExitOk;
}

int ExitFor(fa_status st) {
  switch (st) {
    case FA_ERR_INVALID_ARGUMENT:
    case FA_ERR_INFEASIBLE_EXERCISE:
    case FA_ERR_CONFIG_MISMATCH:
      return kExitConfigError;
    case FA_ERR_INFEASIBLE_ALIGNMENT:
    case FA_ERR_UNKNOWN_NOTE:
      return kExitPartialFailure;
    default:
      return kExitInputError;
  }
}

}  // namespace

int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"fretalign: bootstrap time-aligned note labels for monophonic recordings"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  std::optional<uint64_t> seed;
  std::optional<int> jobs;
  app.add_option("--root", g.root, "corpus root directory")->capture_default_str();
  app.add_option("--config", g.config_path, "key = value configuration file");
  app.add_option("--set", g.sets, "override one configuration entry (key=value)");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--force", g.force, "overwrite existing outputs");

  std::string strings = "all";
  std::optional<int> count, length, takes, manual_takes, min_instances;
  auto *compose = app.add_subcommand("compose", "compose exercise sequence files");
  compose->add_option("--string", strings, "string 1..6 or 'all'")->capture_default_str();
  compose->add_option("--count", count, "exercises per string");
  compose->add_option("--length", length, "notes per exercise (default: per string)");

  auto *synth = app.add_subcommand("synth", "synthesize takes with ground-truth labels");
  synth->add_option("--string", strings, "string 1..6 or 'all'")->capture_default_str();
  synth->add_option("--takes", takes, "takes per exercise");
  synth->add_option("--manual-takes", manual_takes, "bootstrap takes given manual labels");

  auto *train = app.add_subcommand("train", "train note models from manual labels");
  train->add_option("--string", strings, "string 1..6 or 'all'")->capture_default_str();
  train->add_option("--min-instances", min_instances, "required instances per note");

  bool shift_correct = false, include_manual = false;
  auto *align = app.add_subcommand("align", "force-align recordings to their exercises");
  align->add_option("--string", strings, "string 1..6 or 'all'")->capture_default_str();
  align->add_flag("--shift-correct", shift_correct,
                  "apply the per-file constant shift against truth/manual labels");
  align->add_flag("--include-manual", include_manual,
                  "also align takes that have manual labels");

  std::string pred_dir, ref_dir, eval_out;
  auto *eval = app.add_subcommand("eval", "onset-error statistics of predicted labels");
  eval->add_option("predicted", pred_dir, "directory of predicted .lab files")->required();
  eval->add_option("reference", ref_dir, "directory of reference .lab files")->required();
  eval->add_option("--out", eval_out, "report directory (default <root>/reports)");

  auto *stats = app.add_subcommand("stats", "corpus inventory and coverage report");

  std::string shift_in, shift_out, shift_ref;
  std::optional<double> delta_ms;
  auto *shift = app.add_subcommand("shift", "shift a label file by a constant offset");
  shift->add_option("input", shift_in, "input .lab file")->required();
  shift->add_option("output", shift_out, "output .lab file")->required();
  shift->add_option("--delta-ms", delta_ms, "shift in milliseconds (signed)");
  shift->add_option("--reference", shift_ref, "estimate the shift against this .lab");

  std::vector<const char *> argv;
  for (const auto &a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }

  try {
    Context ctx;
    ctx.corpus.root = g.root;
    ctx.force = g.force;
    ctx.out = &out;
    ctx.err = &err;
    if (!g.config_path.empty()) ctx.cfg.LoadFile(g.config_path);
    for (const auto &kv : g.sets) {
      size_t eq = kv.find('=');
      if (eq == std::string::npos)
        throw CliError(kExitConfigError, "--set expects key=value, got '" + kv + "'");
      ctx.cfg.Set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (seed) ctx.cfg.Set("seed", std::to_string(*seed));
    if (jobs) ctx.cfg.Set("jobs", std::to_string(*jobs));
    if (count) ctx.cfg.Set("compose.count", std::to_string(*count));
    if (length) ctx.cfg.Set("compose.length", std::to_string(*length));
    if (takes) ctx.cfg.Set("synth.takes", std::to_string(*takes));
    if (manual_takes) ctx.cfg.Set("synth.manual_takes", std::to_string(*manual_takes));
    if (min_instances) ctx.cfg.Set("train.min_instances", std::to_string(*min_instances));
    ctx.cfg.Validate();

    if (*compose) return CmdCompose(ctx, strings);
    if (*synth) return CmdSynth(ctx, strings);
    if (*train) return CmdTrain(ctx, strings);
    if (*align) return CmdAlign(ctx, strings, shift_correct, include_manual);
    if (*eval)
      return CmdEval(ctx, pred_dir, ref_dir,
                     eval_out.empty() ? ctx.corpus.ReportsDir() : eval_out);
    if (*stats) return CmdStats(ctx);
    if (*shift)
      return CmdShift(ctx, shift_in, shift_out, delta_ms ? &*delta_ms : nullptr,
                      shift_ref);
  } catch (const CliError &e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const ApiError &e) {
    err << "error: " << e.what() << "\n";
    return ExitFor(e.status());
  }
  return kExitConfigError;
}

}  // namespace cli
}  // namespace fretalign
