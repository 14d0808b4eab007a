// tests/capi/capi-test.cc

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

// Exercises the public C interface only.

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>
#include <thread>
#include <vector>

#include "doctest.h"

#include "fretalign/fretalign.h"

namespace {

std::string TempPath(const std::string &name) {
  auto dir = std::filesystem::temp_directory_path() / "fretalign-capi-test";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

TEST_CASE("version and status names") {
  CHECK(std::strlen(fa_version()) > 0);
  CHECK(std::string(fa_status_name(FA_OK)) == "ok");
  CHECK(std::string(fa_status_name(FA_ERR_PARSE)) != "ok");
}

TEST_CASE("pitches") {
  int midi = 0;
  CHECK(fa_pitch_from_fret(6, 0, &midi) == FA_OK);
  CHECK(midi == 40);
  CHECK(fa_pitch_from_fret(9, 0, &midi) == FA_ERR_INVALID_POSITION);
  CHECK(std::strlen(fa_last_error()) > 0);
  CHECK(fa_pitch_parse("Gb2", &midi) == FA_OK);
  CHECK(midi == 42);
  CHECK(fa_pitch_parse("X9", &midi) == FA_ERR_PARSE);
  CHECK(fa_pitch_parse(nullptr, &midi) == FA_ERR_INVALID_ARGUMENT);
  char buf[8];
  CHECK(fa_pitch_name(42, buf, sizeof(buf)) == FA_OK);
  CHECK(std::string(buf) == "F#2");
  CHECK(fa_pitch_name(42, buf, 2) == FA_ERR_INVALID_ARGUMENT);
  CHECK(fa_pitch_frequency(69) == doctest::Approx(440.0));
  size_t count = 0;
  CHECK(fa_covered_pitches(0, nullptr, 0, &count) == FA_OK);
  CHECK(count == 29);
  std::vector<int> all(count);
  CHECK(fa_covered_pitches(0, all.data(), all.size(), &count) == FA_OK);
  CHECK(all.front() == 40);
  CHECK(all.back() == 68);
  int small[2];
  CHECK(fa_covered_pitches(3, small, 2, &count) == FA_ERR_INVALID_ARGUMENT);
  CHECK(count == 4);
  CHECK(fa_default_exercise_length(3) == 6);
}

TEST_CASE("errors are kept per thread") {
  int midi;
  CHECK(fa_pitch_parse("Q1", &midi) == FA_ERR_PARSE);
  std::string here = fa_last_error();
  std::string there;
  std::thread t([&] {
    fa_pitch_from_fret(0, 0, &midi);
    there = fa_last_error();
  });
  t.join();
  CHECK(here != there);
  CHECK(std::string(fa_last_error()) == here);
}

TEST_CASE("exercises") {
  fa_exercises *ex = nullptr;
  CHECK(fa_exercises_compose(1, 3, 3, 1, &ex) == FA_ERR_INFEASIBLE_EXERCISE);
  CHECK(ex == nullptr);
  REQUIRE(fa_exercises_compose(1, 3, 0, 1, &ex) == FA_OK);
  CHECK(fa_exercises_count(ex) == 3);
  CHECK(std::string(fa_exercises_id(ex, 0)) == "s1_e1");
  CHECK(fa_exercises_string(ex, 2) == 1);
  CHECK(fa_exercises_length(ex, 1) == 7);
  CHECK(fa_exercises_note(ex, 0, 0) >= 64);
  CHECK(fa_exercises_id(ex, 5) == nullptr);
  std::string path = TempPath("s1.txt");
  CHECK(fa_exercises_write(ex, path.c_str()) == FA_OK);
  fa_exercises *back = nullptr;
  REQUIRE(fa_exercises_read(path.c_str(), &back) == FA_OK);
  for (size_t i = 0; i < 3; ++i)
    for (size_t k = 0; k < 7; ++k) {
      CHECK(fa_exercises_note(back, i, k) == fa_exercises_note(ex, i, k));
      CHECK(std::string(fa_exercises_note_name(back, i, k)) ==
            fa_exercises_note_name(ex, i, k));
    }
  fa_exercises_free(back);
  fa_exercises_free(ex);
  fa_exercises_free(nullptr);
  CHECK(fa_exercises_read("/nonexistent/x.txt", &back) == FA_ERR_FILE_NOT_FOUND);
}

TEST_CASE("clips and wav files") {
  std::vector<float> s = {0.0f, 0.5f, -0.5f, 2.0f};
  fa_clip *clip = nullptr;
  REQUIRE(fa_clip_create(s.data(), s.size(), 16000, &clip) == FA_OK);
  std::string path = TempPath("c.wav");
  CHECK(fa_clip_write_wav(clip, path.c_str()) == FA_OK);
  fa_clip *back = nullptr;
  REQUIRE(fa_clip_read_wav(path.c_str(), &back) == FA_OK);
  CHECK(fa_clip_length(back) == 4);
  CHECK(fa_clip_sample_rate(back) == 16000);
  CHECK(fa_clip_samples(back)[1] == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(fa_clip_samples(back)[3] == doctest::Approx(32767.0 / 32768.0));
  fa_clip_free(back);
  fa_clip_free(clip);
  CHECK(fa_clip_create(s.data(), s.size(), 0, &clip) == FA_ERR_INVALID_ARGUMENT);
  CHECK(fa_clip_read_wav("/nonexistent.wav", &clip) == FA_ERR_FILE_NOT_FOUND);
  CHECK(fa_synth_pluck(40, -1.0, 44100, 1, &clip) == FA_ERR_INVALID_ARGUMENT);
  REQUIRE(fa_synth_pluck(40, 0.1, 44100, 1, &clip) == FA_OK);
  CHECK(fa_clip_length(clip) == 4410);
  fa_clip_free(clip);
}

TEST_CASE("features") {
  fa_clip *clip = nullptr;
  REQUIRE(fa_synth_pluck(45, 0.5, 44100, 2, &clip) == FA_OK);
  fa_feature_config cfg;
  fa_feature_config_default(&cfg);
  CHECK(cfg.mel_filters == 26);
  CHECK(cfg.cepstra == 13);
  fa_features *f = nullptr;
  REQUIRE(fa_features_compute(clip, &cfg, &f) == FA_OK);
  CHECK(fa_features_dim(f) == 39);
  CHECK(fa_features_frames(f) == 1 + (22050 - 1103) / 441);
  CHECK(fa_features_hop(f) == doctest::Approx(0.01));
  double t = 0.0;
  CHECK(fa_features_frame_time(f, 10, &t) == FA_OK);
  CHECK(t == doctest::Approx(0.1));
  CHECK(fa_features_frame_time(f, 10000, &t) == FA_ERR_INVALID_ARGUMENT);
  char fp[512];
  CHECK(fa_feature_config_fingerprint(&cfg, 44100, fp, sizeof(fp)) == FA_OK);
  CHECK(std::string(fp) == fa_features_fingerprint(f));
  CHECK(std::isfinite(fa_features_data(f)[38]));
  fa_features_free(f);
  cfg.cepstra = 20;
  CHECK(fa_features_compute(clip, &cfg, &f) == FA_ERR_INVALID_ARGUMENT);
  fa_clip_free(clip);
  float tiny[10] = {0};
  REQUIRE(fa_clip_create(tiny, 10, 44100, &clip) == FA_OK);
  fa_feature_config_default(&cfg);
  CHECK(fa_features_compute(clip, &cfg, &f) == FA_ERR_TOO_SHORT);
  fa_clip_free(clip);
}

TEST_CASE("labels and evaluation") {
  fa_labels *a = nullptr;
  REQUIRE(fa_labels_create(&a) == FA_OK);
  CHECK(fa_labels_append(a, 0.0, 0.5, "E2") == FA_OK);
  CHECK(fa_labels_append(a, 0.5, 1.0, "F2") == FA_OK);
  CHECK(fa_labels_append(a, 0.9, 1.2, "G2") == FA_ERR_INVALID_ARGUMENT);
  CHECK(fa_labels_append(a, 1.0, 1.5, "two words") == FA_ERR_INVALID_ARGUMENT);
  CHECK(fa_labels_count(a) == 2);
  fa_labels *b = nullptr;
  REQUIRE(fa_labels_shift(a, 6.0, &b) == FA_OK);
  double start, end;
  const char *text;
  CHECK(fa_labels_get(b, 1, &start, &end, &text) == FA_OK);
  CHECK(start == doctest::Approx(0.506));
  CHECK(std::string(text) == "F2");
  CHECK(fa_labels_get(b, 2, &start, &end, &text) == FA_ERR_INVALID_ARGUMENT);

  fa_report *r = nullptr;
  REQUIRE(fa_onset_errors(b, a, nullptr, 0, &r) == FA_OK);
  CHECK(fa_report_error_count(r) == 2);
  CHECK(fa_report_max_ms(r) == doctest::Approx(6.0));
  CHECK(fa_report_threshold_count(r) == 6);
  double thr, pct;
  CHECK(fa_report_threshold(r, 1, &thr, &pct) == FA_OK);
  CHECK(thr == 4.0);
  CHECK(pct == 0.0);
  CHECK(std::string(fa_report_summary_csv(r)) == "max_ms,mean_ms\n6.000,6.000\n");
  fa_report_free(r);
  double shift = 0.0;
  CHECK(fa_estimate_constant_shift(b, a, &shift) == FA_OK);
  CHECK(shift == doctest::Approx(-6.0));

  fa_labels *c = nullptr;
  REQUIRE(fa_labels_parse("0 1 E2\n", &c) == FA_OK);
  CHECK(fa_onset_errors(c, a, nullptr, 0, &r) == FA_ERR_MISALIGNED_TRACKS);
  CHECK(fa_labels_parse("1 0 E2\n", &c) == FA_ERR_PARSE);

  const fa_labels *tracks[] = {a, b};
  fa_counts *counts = nullptr;
  REQUIRE(fa_note_counts(tracks, 2, &counts) == FA_OK);
  CHECK(fa_counts_size(counts) == 2);
  CHECK(std::string(fa_counts_csv(counts)) == "note,count\nE2,2\nF2,2\n");
  fa_counts_free(counts);

  const char *notes[] = {"E2", "E2", "E2"};
  double errs[] = {1.0, -3.0, 12.0};
  double thresholds[] = {2.0, 5.0};
  REQUIRE(fa_report_from_errors(notes, errs, 3, thresholds, 2, &r) == FA_OK);
  CHECK(fa_report_median_ms(r) == doctest::Approx(3.0));
  CHECK(std::string(fa_report_cumulative_csv(r)) ==
        "threshold_ms,percentage\n2,33.33\n5,66.67\n");
  fa_report_free(r);

  std::string path = TempPath("a.lab");
  CHECK(fa_labels_write(b, path.c_str()) == FA_OK);
  fa_labels *d = nullptr;
  REQUIRE(fa_labels_read(path.c_str(), &d) == FA_OK);
  CHECK(fa_labels_count(d) == 2);
  fa_labels_free(d);
  fa_labels_free(c);
  fa_labels_free(b);
  fa_labels_free(a);
}

TEST_CASE("train, save, load and align") {
  fa_exercises *ex = nullptr;
  REQUIRE(fa_exercises_compose(3, 1, 6, 5, &ex) == FA_OK);
  fa_tempo_policy policy;
  fa_tempo_policy_default(&policy);
  CHECK(policy.inter_onset == 0.5);
  fa_feature_config fcfg;
  fa_feature_config_default(&fcfg);

  fa_trainer *trainer = nullptr;
  REQUIRE(fa_trainer_create(&trainer) == FA_OK);
  std::vector<fa_features *> feats;
  std::vector<fa_labels *> truths;
  for (uint64_t take = 0; take < 3; ++take) {
    fa_clip *clip = nullptr;
    fa_labels *truth = nullptr;
    REQUIRE(fa_synth_exercise(ex, 0, &policy, 44100, 100 + take, &clip, &truth) == FA_OK);
    CHECK(fa_labels_count(truth) == 6);
    fa_features *f = nullptr;
    REQUIRE(fa_features_compute(clip, &fcfg, &f) == FA_OK);
    int used = 0;
    CHECK(fa_trainer_add_labels(trainer, f, truth, 0, &used) == FA_OK);
    CHECK(used == 6);
    feats.push_back(f);
    truths.push_back(truth);
    fa_clip_free(clip);
  }
  CHECK(fa_trainer_label_count(trainer) == 4);
  const char *label;
  size_t instances, frames;
  CHECK(fa_trainer_label(trainer, 0, &label, &instances, &frames) == FA_OK);
  CHECK(frames > instances);

  fa_train_options opts;
  fa_train_options_default(&opts);
  fa_models *models = nullptr;
  // Each note occurs only three to six times here.
  CHECK(fa_trainer_train(trainer, &opts, &models) == FA_ERR_INSUFFICIENT_EXAMPLES);
  opts.allow_few_instances = 1;
  REQUIRE(fa_trainer_train(trainer, &opts, &models) == FA_OK);
  CHECK(fa_models_count(models) == 4);
  CHECK(std::string(fa_models_fingerprint(models)) == fa_features_fingerprint(feats[0]));

  std::string path = TempPath("s3.model");
  CHECK(fa_models_save(models, path.c_str()) == FA_OK);
  fa_models *loaded = nullptr;
  REQUIRE(fa_models_load(path.c_str(), &loaded) == FA_OK);
  double l1, l2;
  CHECK(fa_models_log_likelihood(models, "G3", fa_features_data(feats[0]), 39, &l1) == FA_OK);
  CHECK(fa_models_log_likelihood(loaded, "G3", fa_features_data(feats[0]), 39, &l2) == FA_OK);
  CHECK(l1 == l2);
  CHECK(fa_models_log_likelihood(models, "E2", fa_features_data(feats[0]), 39, &l1) ==
        FA_ERR_UNKNOWN_NOTE);

  std::vector<const char *> transcript;
  for (size_t k = 0; k < 6; ++k) transcript.push_back(fa_exercises_note_name(ex, 0, k));
  fa_align_config acfg;
  fa_align_config_default(&acfg);
  CHECK(acfg.min_duration_frames == 5);
  fa_segmentation *seg = nullptr;
  REQUIRE(fa_force_align(feats[1], transcript.data(), transcript.size(), loaded, &acfg,
                         &seg) == FA_OK);
  CHECK(fa_segmentation_count(seg) == 6);
  int start, end, gap;
  CHECK(fa_segmentation_get(seg, 0, &label, &start, &end, &gap) == FA_OK);
  CHECK(start == 0);
  CHECK(gap == 0);
  CHECK(std::isfinite(fa_segmentation_score(seg)));
  fa_labels *pred = nullptr;
  REQUIRE(fa_segmentation_to_labels(seg, feats[1], &pred) == FA_OK);
  fa_report *r = nullptr;
  REQUIRE(fa_onset_errors(pred, truths[1], nullptr, 0, &r) == FA_OK);
  CHECK(fa_report_max_ms(r) < 100.0);
  fa_report_free(r);
  fa_labels_free(pred);
  fa_segmentation_free(seg);

  const char *wrong[] = {"E2"};
  CHECK(fa_force_align(feats[1], wrong, 1, loaded, &acfg, &seg) == FA_ERR_UNKNOWN_NOTE);
  acfg.gap_model = 1;
  CHECK(fa_force_align(feats[1], transcript.data(), 6, loaded, &acfg, &seg) ==
        FA_ERR_UNKNOWN_NOTE);

  fa_feature_config other = fcfg;
  other.hop = 0.005;
  fa_clip *clip = nullptr;
  fa_labels *truth = nullptr;
  REQUIRE(fa_synth_exercise(ex, 0, &policy, 44100, 7, &clip, &truth) == FA_OK);
  fa_features *mismatched = nullptr;
  REQUIRE(fa_features_compute(clip, &other, &mismatched) == FA_OK);
  acfg.gap_model = 0;
  CHECK(fa_force_align(mismatched, transcript.data(), 6, loaded, &acfg, &seg) ==
        FA_ERR_CONFIG_MISMATCH);
  fa_features_free(mismatched);
  fa_labels_free(truth);
  fa_clip_free(clip);

  std::FILE *fp = std::fopen(path.c_str(), "w");
  std::fputs("fretalign-model v1 dim 39 models 4 fingerprint -\nG3 1 2\n", fp);
  std::fclose(fp);
  CHECK(fa_models_load(path.c_str(), &loaded) == FA_ERR_CORRUPT_MODEL);

  fa_models_free(loaded);
  fa_models_free(models);
  fa_trainer_free(trainer);
  for (auto *f : feats) fa_features_free(f);
  for (auto *t : truths) fa_labels_free(t);
  fa_exercises_free(ex);
}

TEST_CASE("free functions accept NULL") {
  fa_clip_free(nullptr);
  fa_features_free(nullptr);
  fa_labels_free(nullptr);
  fa_report_free(nullptr);
  fa_counts_free(nullptr);
  fa_trainer_free(nullptr);
  fa_models_free(nullptr);
  fa_segmentation_free(nullptr);
  CHECK(fa_clip_length(nullptr) == 0);
  CHECK(fa_labels_count(nullptr) == 0);
}

}  // namespace
