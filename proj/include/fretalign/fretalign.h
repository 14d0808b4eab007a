// include/fretalign/fretalign.h

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

/*
 * C interface to the fretalign library: fretboard exercise composition,
 * plucked-string synthesis, 39-dimensional MFCC features, single-Gaussian
 * note models and forced Viterbi alignment, label files and onset-error
 * statistics.
 *
 * Conventions:
 *  - Every object is an opaque handle created by a fa_*_create / compute /
 *    read / load call and released with the matching fa_*_free (NULL is
 *    accepted by every free function).
 *  - Fallible calls return fa_status; on failure fa_last_error() holds a
 *    message for the calling thread until its next failing call.
 *  - Strings returned as const char * are owned by the handle they come
 *    from and stay valid until it is freed.
 *  - Handles are immutable once built except fa_labels (append) and
 *    fa_trainer (add); immutable handles may be shared across threads.
 */
#ifndef FRETALIGN_FRETALIGN_H_
#define FRETALIGN_FRETALIGN_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(FRETALIGN_BUILDING)
#    define FA_API __declspec(dllexport)
#  else
#    define FA_API __declspec(dllimport)
#  endif
#else
#  define FA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fa_status {
  FA_OK = 0,
  FA_ERR_INVALID_ARGUMENT = 1,
  FA_ERR_INVALID_POSITION = 2,
  FA_ERR_INFEASIBLE_EXERCISE = 3,
  FA_ERR_FILE_NOT_FOUND = 4,
  FA_ERR_UNSUPPORTED_ENCODING = 5,
  FA_ERR_TRUNCATED_DATA = 6,
  FA_ERR_MALFORMED_FILE = 7,
  FA_ERR_IO = 8,
  FA_ERR_TOO_SHORT = 9,
  FA_ERR_INSUFFICIENT_EXAMPLES = 10,
  FA_ERR_UNKNOWN_NOTE = 11,
  FA_ERR_INFEASIBLE_ALIGNMENT = 12,
  FA_ERR_CONFIG_MISMATCH = 13,
  FA_ERR_CORRUPT_MODEL = 14,
  FA_ERR_PARSE = 15,
  FA_ERR_MISALIGNED_TRACKS = 16,
  FA_ERR_INTERNAL = 17
} fa_status;

FA_API const char *fa_version(void);
FA_API const char *fa_status_name(fa_status status);
FA_API const char *fa_last_error(void);

/* ---- notes and exercises ------------------------------------------------ */

FA_API fa_status fa_pitch_from_fret(int string, int fret, int *midi);
FA_API fa_status fa_pitch_parse(const char *name, int *midi);
/* Writes e.g. "F#2" into buf (NUL-terminated). */
FA_API fa_status fa_pitch_name(int midi, char *buf, size_t cap);
FA_API double fa_pitch_frequency(int midi);
/* Covered pitches of one string (1..6), or all 29 when string == 0.
 * *count receives the full count even when cap is too small. */
FA_API fa_status fa_covered_pitches(int string, int *midis, size_t cap,
                                    size_t *count);
/* Exercise length giving ~50 instances per note at 3 exercises x 12 takes. */
FA_API int fa_default_exercise_length(int string);

typedef struct fa_exercises fa_exercises;

/* length <= 0 selects fa_default_exercise_length(string). */
FA_API fa_status fa_exercises_compose(int string, int count, int length,
                                      uint64_t seed, fa_exercises **out);
FA_API fa_status fa_exercises_read(const char *path, fa_exercises **out);
FA_API fa_status fa_exercises_write(const fa_exercises *ex, const char *path);
FA_API size_t fa_exercises_count(const fa_exercises *ex);
FA_API const char *fa_exercises_id(const fa_exercises *ex, size_t i);
FA_API int fa_exercises_string(const fa_exercises *ex, size_t i);
FA_API size_t fa_exercises_length(const fa_exercises *ex, size_t i);
FA_API int fa_exercises_note(const fa_exercises *ex, size_t i, size_t k);
FA_API const char *fa_exercises_note_name(const fa_exercises *ex, size_t i,
                                          size_t k);
FA_API void fa_exercises_free(fa_exercises *ex);

/* ---- audio -------------------------------------------------------------- */

typedef struct fa_clip fa_clip;

FA_API fa_status fa_clip_create(const float *samples, size_t n, int sample_rate,
                                fa_clip **out);
FA_API fa_status fa_clip_read_wav(const char *path, fa_clip **out);
/* 16-bit mono PCM; out-of-range samples saturate. */
FA_API fa_status fa_clip_write_wav(const fa_clip *clip, const char *path);
FA_API size_t fa_clip_length(const fa_clip *clip);
FA_API int fa_clip_sample_rate(const fa_clip *clip);
FA_API const float *fa_clip_samples(const fa_clip *clip);
FA_API void fa_clip_free(fa_clip *clip);

FA_API fa_status fa_synth_pluck(int midi, double duration, int sample_rate,
                                uint64_t seed, fa_clip **out);

typedef struct fa_tempo_policy {
  double inter_onset;    /* seconds, default 0.5 */
  double jitter;         /* +/- seconds, default 0.05 */
  double overlap;        /* ring-over into the next note, default 0.05 */
  double final_duration; /* default 1.0 */
  double min_amplitude;  /* default 0.6 */
  double max_amplitude;  /* default 1.0 */
} fa_tempo_policy;

FA_API void fa_tempo_policy_default(fa_tempo_policy *policy);

typedef struct fa_labels fa_labels;

/* Synthesizes exercise `index`.  *truth receives one label per note running
 * from its onset to the next onset (the last to its end). */
FA_API fa_status fa_synth_exercise(const fa_exercises *ex, size_t index,
                                   const fa_tempo_policy *policy,
                                   int sample_rate, uint64_t seed,
                                   fa_clip **clip, fa_labels **truth);

/* ---- features ----------------------------------------------------------- */

typedef struct fa_feature_config {
  double frame_length; /* seconds, default 0.025 */
  double hop;          /* seconds, default 0.010 */
  double pre_emphasis; /* default 0.97 */
  int mel_filters;     /* default 26 */
  int cepstra;         /* must be 13 */
  int delta_window;    /* default 2 */
  double log_floor;    /* default 1e-10 */
} fa_feature_config;

FA_API void fa_feature_config_default(fa_feature_config *cfg);
FA_API fa_status fa_feature_config_fingerprint(const fa_feature_config *cfg,
                                               int sample_rate, char *buf,
                                               size_t cap);

typedef struct fa_features fa_features;

FA_API fa_status fa_features_compute(const fa_clip *clip,
                                     const fa_feature_config *cfg,
                                     fa_features **out);
FA_API size_t fa_features_frames(const fa_features *f);
FA_API size_t fa_features_dim(const fa_features *f);
/* Row-major frames x dim. */
FA_API const double *fa_features_data(const fa_features *f);
FA_API double fa_features_hop(const fa_features *f);
FA_API const char *fa_features_fingerprint(const fa_features *f);
FA_API fa_status fa_features_frame_time(const fa_features *f, size_t index,
                                        double *seconds);
FA_API fa_status fa_features_write_csv(const fa_features *f, const char *path);
FA_API void fa_features_free(fa_features *f);

/* ---- labels ------------------------------------------------------------- */

FA_API fa_status fa_labels_create(fa_labels **out);
/* Must start at or after the previous label's end. */
FA_API fa_status fa_labels_append(fa_labels *labels, double start, double end,
                                  const char *text);
FA_API fa_status fa_labels_parse(const char *text, fa_labels **out);
FA_API fa_status fa_labels_read(const char *path, fa_labels **out);
FA_API fa_status fa_labels_write(const fa_labels *labels, const char *path);
FA_API size_t fa_labels_count(const fa_labels *labels);
FA_API fa_status fa_labels_get(const fa_labels *labels, size_t i, double *start,
                               double *end, const char **text);
FA_API fa_status fa_labels_shift(const fa_labels *labels, double delta_ms,
                                 fa_labels **out);
FA_API void fa_labels_free(fa_labels *labels);

/* ---- evaluation --------------------------------------------------------- */

typedef struct fa_report fa_report;

/* thresholds == NULL selects {2, 4, 6, 8, 10, inf} ms. */
FA_API fa_status fa_onset_errors(const fa_labels *predicted,
                                 const fa_labels *reference,
                                 const double *thresholds, size_t n_thresholds,
                                 fa_report **out);
/* Builds a report from already matched signed errors (predicted - reference,
 * ms), e.g. pooled over many files. */
FA_API fa_status fa_report_from_errors(const char *const *notes,
                                       const double *signed_ms, size_t n,
                                       const double *thresholds,
                                       size_t n_thresholds, fa_report **out);
FA_API fa_status fa_estimate_constant_shift(const fa_labels *predicted,
                                            const fa_labels *reference,
                                            double *delta_ms);
FA_API double fa_report_max_ms(const fa_report *r);
FA_API double fa_report_mean_ms(const fa_report *r);
FA_API double fa_report_median_ms(const fa_report *r);
FA_API size_t fa_report_error_count(const fa_report *r);
FA_API fa_status fa_report_error(const fa_report *r, size_t i, const char **note,
                                 double *abs_ms, double *signed_ms);
FA_API size_t fa_report_threshold_count(const fa_report *r);
FA_API fa_status fa_report_threshold(const fa_report *r, size_t i,
                                     double *threshold_ms, double *percentage);
/* "threshold_ms,percentage" CSV. */
FA_API const char *fa_report_cumulative_csv(const fa_report *r);
/* "max_ms,mean_ms" CSV. */
FA_API const char *fa_report_summary_csv(const fa_report *r);
FA_API void fa_report_free(fa_report *r);

typedef struct fa_counts fa_counts;

FA_API fa_status fa_note_counts(const fa_labels *const *tracks, size_t n,
                                fa_counts **out);
FA_API size_t fa_counts_size(const fa_counts *c);
FA_API fa_status fa_counts_get(const fa_counts *c, size_t i, const char **note,
                               int *count);
/* "note,count" CSV ordered by pitch. */
FA_API const char *fa_counts_csv(const fa_counts *c);
FA_API void fa_counts_free(fa_counts *c);

/* ---- models and alignment ----------------------------------------------- */

typedef struct fa_trainer fa_trainer;
typedef struct fa_models fa_models;

typedef struct fa_train_options {
  double floor_ratio;      /* default 1e-3 */
  int min_instances;       /* default 5 */
  int allow_few_instances; /* default 0 */
} fa_train_options;

FA_API void fa_train_options_default(fa_train_options *opts);
FA_API fa_status fa_trainer_create(fa_trainer **out);
/* Adds the frames under each label (by frame center).  collect_gaps adds
 * unlabeled runs to the gap model "sil".  *used (optional) receives the
 * number of labels that captured at least one frame. */
FA_API fa_status fa_trainer_add_labels(fa_trainer *t, const fa_features *f,
                                       const fa_labels *labels,
                                       int collect_gaps, int *used);
FA_API fa_status fa_trainer_add_segment(fa_trainer *t, const char *label,
                                        const double *rows_data, size_t rows,
                                        size_t cols);
FA_API size_t fa_trainer_label_count(const fa_trainer *t);
FA_API fa_status fa_trainer_label(const fa_trainer *t, size_t i,
                                  const char **label, size_t *instances,
                                  size_t *frames);
FA_API fa_status fa_trainer_train(const fa_trainer *t,
                                  const fa_train_options *opts,
                                  fa_models **out);
FA_API void fa_trainer_free(fa_trainer *t);

FA_API fa_status fa_models_load(const char *path, fa_models **out);
FA_API fa_status fa_models_save(const fa_models *m, const char *path);
FA_API size_t fa_models_count(const fa_models *m);
FA_API fa_status fa_models_get(const fa_models *m, size_t i, const char **label,
                               long *frame_count);
FA_API const char *fa_models_fingerprint(const fa_models *m);
FA_API fa_status fa_models_log_likelihood(const fa_models *m, const char *label,
                                          const double *frame, size_t dim,
                                          double *out);
FA_API void fa_models_free(fa_models *m);

typedef struct fa_align_config {
  double self_loop_prob;   /* default 0.9 */
  int min_duration_frames; /* default 5 */
  int gap_model;           /* default 0 */
} fa_align_config;

typedef struct fa_segmentation fa_segmentation;

FA_API void fa_align_config_default(fa_align_config *cfg);
FA_API fa_status fa_force_align(const fa_features *f,
                                const char *const *transcript, size_t n,
                                const fa_models *models,
                                const fa_align_config *cfg,
                                fa_segmentation **out);
FA_API size_t fa_segmentation_count(const fa_segmentation *s);
FA_API fa_status fa_segmentation_get(const fa_segmentation *s, size_t i,
                                     const char **label, int *start, int *end,
                                     int *is_gap);
FA_API double fa_segmentation_score(const fa_segmentation *s);
FA_API fa_status fa_segmentation_to_labels(const fa_segmentation *s,
                                           const fa_features *f,
                                           fa_labels **out);
FA_API void fa_segmentation_free(fa_segmentation *s);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* FRETALIGN_FRETALIGN_H_ */
