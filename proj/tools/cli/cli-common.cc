// tools/cli/cli-common.cc

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

#include "cli-common.h"

#include <unistd.h>

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <thread>

namespace fretalign {
namespace cli {

namespace fs = std::filesystem;

namespace {

std::string Trim(const std::string &s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void ConfigFail(const std::string &what) {
  throw CliError(kExitConfigError, what);
}

}  // namespace

RunConfig::RunConfig() {
  fa_feature_config f;
  fa_feature_config_default(&f);
  fa_align_config a;
  fa_align_config_default(&a);
  fa_train_options t;
  fa_train_options_default(&t);
  fa_tempo_policy p;
  fa_tempo_policy_default(&p);
  auto num = [](double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
  };
  values_ = {
      {"seed", "20190401"},
      {"jobs", "1"},
      {"sample_rate", "44100"},
      {"compose.count", "3"},
      {"compose.length", "auto"},
      {"synth.takes", "12"},
      {"synth.manual_takes", "5"},
      {"synth.inter_onset", num(p.inter_onset)},
      {"synth.jitter", num(p.jitter)},
      {"synth.overlap", num(p.overlap)},
      {"synth.final_duration", num(p.final_duration)},
      {"synth.min_amplitude", num(p.min_amplitude)},
      {"synth.max_amplitude", num(p.max_amplitude)},
      {"features.frame_length", num(f.frame_length)},
      {"features.hop", num(f.hop)},
      {"features.pre_emphasis", num(f.pre_emphasis)},
      {"features.mel_filters", std::to_string(f.mel_filters)},
      {"features.cepstra", std::to_string(f.cepstra)},
      {"features.delta_window", std::to_string(f.delta_window)},
      {"features.log_floor", num(f.log_floor)},
      {"train.min_instances", std::to_string(t.min_instances)},
      {"train.floor_ratio", num(t.floor_ratio)},
      {"align.self_loop_prob", num(a.self_loop_prob)},
      {"align.min_duration_frames", std::to_string(a.min_duration_frames)},
      {"align.gap_model", a.gap_model ? "true" : "false"},
  };
}

void RunConfig::LoadFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) ConfigFail("cannot read config file " + path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = Trim(line.substr(0, line.find('#')));
    if (body.empty()) continue;
    size_t eq = body.find('=');
    if (eq == std::string::npos)
      ConfigFail(path + ":" + std::to_string(line_no) + ": expected key = value");
    Set(Trim(body.substr(0, eq)), Trim(body.substr(eq + 1)));
  }
}

void RunConfig::Set(const std::string &key, const std::string &value) {
  auto it = values_.find(key);
  if (it == values_.end()) ConfigFail("unknown configuration key '" + key + "'");
  if (value.empty()) ConfigFail("empty value for '" + key + "'");
  it->second = value;
}

std::string RunConfig::Get(const std::string &key) const {
  auto it = values_.find(key);
  if (it == values_.end()) ConfigFail("unknown configuration key '" + key + "'");
  return it->second;
}

int RunConfig::GetInt(const std::string &key) const {
  std::string v = Get(key);
  int out = 0;
  auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || end != v.data() + v.size())
    ConfigFail(key + ": expected an integer, got '" + v + "'");
  return out;
}

uint64_t RunConfig::GetU64(const std::string &key) const {
  std::string v = Get(key);
  uint64_t out = 0;
  auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || end != v.data() + v.size())
    ConfigFail(key + ": expected a non-negative integer, got '" + v + "'");
  return out;
}

double RunConfig::GetDouble(const std::string &key) const {
  std::string v = Get(key);
  double out = 0;
  auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || end != v.data() + v.size() || !std::isfinite(out))
    ConfigFail(key + ": expected a number, got '" + v + "'");
  return out;
}

bool RunConfig::GetBool(const std::string &key) const {
  std::string v = Get(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  ConfigFail(key + ": expected true/false, got '" + v + "'");
}

fa_feature_config RunConfig::Features() const {
  fa_feature_config f;
  f.frame_length = GetDouble("features.frame_length");
  f.hop = GetDouble("features.hop");
  f.pre_emphasis = GetDouble("features.pre_emphasis");
  f.mel_filters = GetInt("features.mel_filters");
  f.cepstra = GetInt("features.cepstra");
  f.delta_window = GetInt("features.delta_window");
  f.log_floor = GetDouble("features.log_floor");
  return f;
}

fa_align_config RunConfig::Align() const {
  fa_align_config a;
  a.self_loop_prob = GetDouble("align.self_loop_prob");
  a.min_duration_frames = GetInt("align.min_duration_frames");
  a.gap_model = GetBool("align.gap_model") ? 1 : 0;
  return a;
}

fa_train_options RunConfig::Train() const {
  fa_train_options t;
  fa_train_options_default(&t);
  t.floor_ratio = GetDouble("train.floor_ratio");
  t.min_instances = GetInt("train.min_instances");
  return t;
}

fa_tempo_policy RunConfig::Tempo() const {
  fa_tempo_policy p;
  p.inter_onset = GetDouble("synth.inter_onset");
  p.jitter = GetDouble("synth.jitter");
  p.overlap = GetDouble("synth.overlap");
  p.final_duration = GetDouble("synth.final_duration");
  p.min_amplitude = GetDouble("synth.min_amplitude");
  p.max_amplitude = GetDouble("synth.max_amplitude");
  return p;
}

void RunConfig::Validate() const {
  GetU64("seed");
  if (GetInt("jobs") < 1) ConfigFail("jobs must be >= 1");
  if (GetInt("sample_rate") < 8000) ConfigFail("sample_rate must be >= 8000");
  if (GetInt("compose.count") < 1) ConfigFail("compose.count must be >= 1");
  if (Get("compose.length") != "auto") GetInt("compose.length");
  if (GetInt("synth.takes") < 1) ConfigFail("synth.takes must be >= 1");
  if (GetInt("synth.manual_takes") < 0) ConfigFail("synth.manual_takes must be >= 0");
  Tempo();
  Train();
  if (GetInt("train.min_instances") < 1) ConfigFail("train.min_instances must be >= 1");
  if (!(GetDouble("train.floor_ratio") > 0)) ConfigFail("train.floor_ratio must be > 0");
  fa_feature_config f = Features();
  char buf[512];
  if (fa_feature_config_fingerprint(&f, GetInt("sample_rate"), buf, sizeof(buf)) != FA_OK)
    ConfigFail(std::string("feature configuration: ") + fa_last_error());
  fa_align_config a = Align();
  if (!(a.self_loop_prob > 0 && a.self_loop_prob < 1))
    ConfigFail("align.self_loop_prob must be in (0, 1)");
  if (a.min_duration_frames < 1) ConfigFail("align.min_duration_frames must be >= 1");
}

std::string RunConfig::Echo() const {
  std::string out;
  for (const auto &[k, v] : values_)
    if (k != "jobs") out += "# " + k + " = " + v + "\n";
  return out;
}

bool ParseTakeName(const std::string &stem, TakeName *out) {
  static const std::regex re(R"(s([1-6])_e([0-9]+)_t([0-9]+))");
  std::smatch m;
  if (!std::regex_match(stem, m, re)) return false;
  out->string = std::stoi(m[1]);
  out->exercise = std::stoi(m[2]);
  out->take = std::stoi(m[3]);
  out->stem = stem;
  return true;
}

std::string MakeTakeStem(const std::string &exercise_id, int take) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "_t%02d", take);
  return exercise_id + buf;
}

std::vector<std::string> ListStems(const std::string &dir, const std::string &extension) {
  std::vector<std::string> out;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return out;
  for (const auto &entry : fs::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file()) continue;
    const auto &p = entry.path();
    if (p.extension() == extension) out.push_back(p.stem().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool FileExists(const std::string &path) {
  std::error_code ec;
  return fs::exists(path, ec);
}

void MakeDirs(const std::string &dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw CliError(kExitInputError, "cannot create " + dir + ": " + ec.message());
}

void WriteTextAtomic(const std::string &path, const std::string &text) {
  std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw CliError(kExitInputError, "cannot write " + path);
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw CliError(kExitInputError, "cannot write " + path + ": " + ec.message());
}

std::vector<int> ParseStrings(const std::string &spec) {
  if (spec == "all") return {1, 2, 3, 4, 5, 6};
  int s = 0;
  auto [end, ec] = std::from_chars(spec.data(), spec.data() + spec.size(), s);
  if (ec != std::errc() || end != spec.data() + spec.size() || s < 1 || s > 6)
    ConfigFail("--string must be 'all' or 1..6, got '" + spec + "'");
  return {s};
}

std::vector<std::string> RunParallel(size_t n, int workers,
                                     const std::function<void(size_t)> &job) {
  std::vector<std::string> errors(n);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < n; i = next++) {
      try {
        job(i);
      } catch (const std::exception &e) {
        errors[i] = e.what();
        if (errors[i].empty()) errors[i] = "unknown failure";
      }
    }
  };
  size_t count = std::min<size_t>(n, static_cast<size_t>(std::max(1, workers)));
  std::vector<std::thread> pool;
  for (size_t w = 1; w < count; ++w) pool.emplace_back(worker);
  worker();
  for (auto &t : pool) t.join();
  return errors;
}

uint64_t DeriveSeed(uint64_t seed, uint64_t a, uint64_t b, uint64_t c) {
  uint64_t z = seed;
  for (uint64_t v : {a, b, c}) {
    z += 0x9E3779B97F4A7C15ULL * (v + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
  }
  return z;
}

}  // namespace cli
}  // namespace fretalign
