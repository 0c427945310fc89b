// src/cli/cli.cc

// Copyright 2026  The vawgan authors

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

#include "vawgan/cli/cli.h"

#include <filesystem>
#include <iostream>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "vawgan/conversion/convert.h"
#include "vawgan/errors.h"
#include "vawgan/evaluation/metrics.h"
#include "vawgan/features/binary-io.h"
#include "vawgan/features/frame-io.h"
#include "vawgan/features/synthetic.h"
#include "vawgan/key-value.h"
#include "vawgan/training/checkpoint.h"
#include "vawgan/training/trainer.h"

namespace vawgan {

namespace {

struct GlobalFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string threads = "auto";

  bool deterministic() const { return threads == "single"; }
  int thread_count() const {
    if (threads == "single") return 1;
    if (threads == "auto") return std::max(1u, std::thread::hardware_concurrency());
    long long n = parse_int("--threads", threads);
    if (n < 1) throw ConfigError("--threads must be >= 1 or 'single'");
    return static_cast<int>(n);
  }
};

std::string Join(const std::filesystem::path &dir, const std::string &name) { return (dir / name).string(); }

void EnsureDir(const std::string &dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
}

// Concatenates frame files of one speaker.
FrameMatrix LoadSpeaker(const std::vector<std::string> &paths, const char *role) {
  FrameMatrix all;
  bool with_energy = true;
  std::vector<FrameMatrix> parts;
  for (const std::string &p : paths) {
    parts.push_back(read_frames(p));
    with_energy = with_energy && parts.back().energy.has_value();
  }
  if (parts.empty()) throw ConfigError(std::string("no ") + role + " files given");
  Index total = 0;
  for (const FrameMatrix &f : parts) {
    if (f.speaker_id != parts[0].speaker_id || f.dim() != parts[0].dim())
      throw FormatError(FormatError::Kind::kInvalid,
                        std::string(role) + " files disagree on speaker id or dim");
    total += f.num_frames();
  }
  all.speaker_id = parts[0].speaker_id;
  all.frames.resize(total, parts[0].dim());
  Eigen::VectorXd energy(total);
  Index row = 0;
  for (const FrameMatrix &f : parts) {
    all.frames.middleRows(row, f.num_frames()) = f.frames;
    if (with_energy) energy.segment(row, f.num_frames()) = *f.energy;
    row += f.num_frames();
  }
  if (with_energy) all.energy = std::move(energy);
  return all;
}

TrainConfig EffectiveConfig(const GlobalFlags &g, bool *dim_given) {
  TrainConfig cfg;
  if (dim_given) *dim_given = false;
  if (!g.config_path.empty()) {
    KeyValues kv = parse_key_values(read_text_file(g.config_path));
    for (const auto &[k, v] : kv)
      if (k == "dim" && dim_given) *dim_given = true;
    apply_config(kv, &cfg);
  }
  if (g.seed) cfg.seed = *g.seed;
  return cfg;
}

int MakeSynthetic(const GlobalFlags &g, const std::string &spec_path, const std::string &out_dir,
                  std::ostream &err) {
  SyntheticSpec spec;
  if (!spec_path.empty()) spec = parse_synthetic_spec(read_text_file(spec_path));
  if (g.seed) spec.seed = *g.seed;
  SyntheticCorpus corpus = generate_synthetic(spec);
  EnsureDir(out_dir);
  for (const FrameMatrix &f : corpus.speakers) {
    std::string path = Join(out_dir, "speaker_" + std::to_string(f.speaker_id) + ".vawf");
    write_frames(path, f);
    err << "[make-synthetic] wrote " << path << " (" << f.num_frames() << " frames, dim " << f.dim() << ")\n";
  }
  return kExitOk;
}

int Train(const GlobalFlags &g, const std::vector<std::string> &source_paths,
          const std::vector<std::string> &target_paths, const std::string &out_dir, std::ostream &err) {
  bool dim_given = false;
  TrainConfig cfg = EffectiveConfig(g, &dim_given);
  FrameMatrix source = LoadSpeaker(source_paths, "source");
  FrameMatrix target = LoadSpeaker(target_paths, "target");
  if (source.dim() != target.dim())
    throw FormatError(FormatError::Kind::kInvalid, "source and target dims differ");
  if (dim_given && cfg.arch.dim != source.dim())
    throw ConfigError("config dim " + std::to_string(cfg.arch.dim) + " does not match data dim " +
                      std::to_string(source.dim()));
  cfg.arch.dim = static_cast<int>(source.dim());
  cfg.arch.num_speakers = std::max(cfg.arch.num_speakers, std::max(source.speaker_id, target.speaker_id) + 1);
  cfg.Validate();

  const std::vector<FrameMatrix> both{source, target};
  NormStats norm = fit_normalizer(both);
  EnsureDir(out_dir);
  write_norm_stats(Join(out_dir, "norm.vawn"), norm);

  TrainHooks<float> hooks;
  hooks.on_phase1_end = [&](int step, const ModelParams<float> &p) {
    save_checkpoint(p, norm, cfg, Join(out_dir, "vae.vawc"));
    err << "[train] phase 1 done at step " << step << "\n";
  };
  hooks.on_checkpoint = [&](int step, const ModelParams<float> &p) {
    save_checkpoint(p, norm, cfg, Join(out_dir, "ckpt_" + std::to_string(step) + ".vawc"));
  };
  const int total = cfg.phase1_steps + cfg.phase2_steps;
  const int every = std::max(1, total / 20);
  hooks.on_record = [&](const TraceRecord &r) {
    if (r.step % every != 0 && r.step != total) return;
    err << "[train] step " << r.step << "/" << total << " phase " << r.phase << " j_obs " << r.j_obs
        << " j_lat " << r.j_lat;
    if (r.has_wgan) err << " j_wgan " << r.j_wgan;
    err << "\n";
  };
  TrainOptions opts;
  opts.deterministic = g.deterministic();
  TrainResult<float> result = train<float>(normalize(source, norm), normalize(target, norm), cfg, hooks, opts);
  save_checkpoint(result.params, norm, cfg, Join(out_dir, "final.vawc"));
  std::string csv = result.trace.to_csv();
  WriteFileBytes(Join(out_dir, "trace.csv"), std::vector<char>(csv.begin(), csv.end()));
  err << "[train] wrote " << Join(out_dir, "final.vawc") << "\n";
  return kExitOk;
}

int Convert(const GlobalFlags &g, const std::string &in, const std::string &out, int target,
            const std::string &ckpt, bool sample_z, std::ostream &err) {
  ConversionOptions opts;
  opts.use_posterior_mean = !sample_z;
  opts.sample_seed = g.seed.value_or(0);
  opts.threads = g.thread_count();
  convert_file(in, out, target, ckpt, opts);
  err << "[convert] wrote " << out << "\n";
  return kExitOk;
}

int Eval(const GlobalFlags &g, const std::string &converted_path, const std::string &reference_path,
         const std::string &baseline_path, const std::string &out_path, double silence_db, std::ostream &err) {
  TrainConfig cfg = EffectiveConfig(g, nullptr);
  auto load = [&](const std::string &p) { return filter_nonsilent(read_frames(p), silence_db).frames; };
  FrameMatrix converted = load(converted_path);
  FrameMatrix reference = load(reference_path);
  std::optional<FrameMatrix> baseline;
  if (!baseline_path.empty()) baseline = load(baseline_path);
  if (converted.dim() != reference.dim() || (baseline && baseline->dim() != reference.dim()))
    throw FormatError(FormatError::Kind::kInvalid, "eval: dimension mismatch between files");

  EvalReport report;
  report.curves.emplace_back("gv_reference", global_variance(reference.frames));
  report.curves.emplace_back("gv_converted", global_variance(converted.frames));
  if (baseline) report.curves.emplace_back("gv_baseline", global_variance(baseline->frames));

  constexpr Index kMaxRows = 1000;
  Matrix<double> ref = subsample_rows(reference.frames, kMaxRows);
  Matrix<double> conv = subsample_rows(converted.frames, kMaxRows);
  const double h = median_bandwidth(ref, conv);
  auto mean_w1 = [&](const FrameMatrix &x) {
    double acc = 0;
    for (Index d = 0; d < x.dim(); ++d) {
      Eigen::VectorXd a = x.frames.col(d), b = reference.frames.col(d);
      acc += w1_exact_1d(std::span<const double>(a.data(), a.size()), std::span<const double>(b.data(), b.size()));
    }
    return acc / static_cast<double>(x.dim());
  };
  report.metrics.emplace_back("frames_reference", static_cast<double>(reference.num_frames()));
  report.metrics.emplace_back("frames_converted", static_cast<double>(converted.num_frames()));
  report.metrics.emplace_back("bandwidth", h);
  report.metrics.emplace_back("mmd_converted", mmd(conv, ref, h));
  report.metrics.emplace_back("w1_mean_converted", mean_w1(converted));
  report.metrics.emplace_back("gv_mean_reference", report.curves[0].second.mean());
  report.metrics.emplace_back("gv_mean_converted", report.curves[1].second.mean());
  if (baseline) {
    Matrix<double> base = subsample_rows(baseline->frames, kMaxRows);
    report.metrics.emplace_back("frames_baseline", static_cast<double>(baseline->num_frames()));
    report.metrics.emplace_back("mmd_baseline", mmd(base, ref, h));
    report.metrics.emplace_back("w1_mean_baseline", mean_w1(*baseline));
    report.metrics.emplace_back("gv_mean_baseline", report.curves[2].second.mean());
  }
  report.config_digest = config_digest(serialize_train_config(cfg));
  emit_report(report, out_path);
  err << "[eval] wrote " << out_path << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Non-parallel voice conversion with a variational autoencoding Wasserstein GAN", "vawgan"};
  app.require_subcommand(1);
  GlobalFlags g;
  std::string threads_flag = "auto";
  std::uint64_t seed = 0;
  auto *seed_opt = app.add_option("--seed", seed, "RNG seed (overrides config)");
  app.add_option("--config", g.config_path, "key = value config file")->check(CLI::ExistingFile);
  app.add_option("--threads", g.threads, "worker threads, or 'single' for the deterministic mode");

  auto *mk = app.add_subcommand("make-synthetic", "Write a synthetic multi-speaker corpus");
  std::string spec_path, out_dir;
  mk->add_option("--spec", spec_path, "synthetic corpus spec (key = value)")->check(CLI::ExistingFile);
  mk->add_option("--out-dir", out_dir, "output directory")->required();

  auto *tr = app.add_subcommand("train", "Two-phase VAE / VAW-GAN training");
  std::vector<std::string> sources, targets;
  std::string train_dir;
  tr->add_option("--source", sources, "source speaker VAWF files")->required();
  tr->add_option("--target", targets, "target speaker VAWF files")->required();
  tr->add_option("--out-dir", train_dir, "output directory")->required();

  auto *cv = app.add_subcommand("convert", "Frame-by-frame conversion to a target speaker");
  std::string in_path, out_path, ckpt;
  int target = 0;
  bool sample_z = false;
  cv->add_option("--in", in_path, "input VAWF file")->required();
  cv->add_option("--out", out_path, "output VAWF file")->required();
  cv->add_option("--target", target, "target speaker id")->required();
  cv->add_option("--ckpt", ckpt, "checkpoint file")->required();
  cv->add_flag("--sample-z", sample_z, "sample z from the posterior instead of using its mean");

  auto *ev = app.add_subcommand("eval", "Global variance and distribution distances");
  std::string conv_path, ref_path, base_path, report_path;
  double silence_db = 30.0;
  ev->add_option("--converted", conv_path, "converted VAWF file")->required();
  ev->add_option("--reference", ref_path, "reference VAWF file of the target speaker")->required();
  ev->add_option("--baseline", base_path, "baseline-converted VAWF file");
  ev->add_option("--out", report_path, "CSV report path")->required();
  ev->add_option("--silence-db", silence_db, "frames below max energy minus this are dropped");

  for (CLI::App *sub : {mk, tr, cv, ev}) sub->fallthrough();

  std::vector<std::string> argv_storage{"vawgan"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char *> argv;
  for (std::string &s : argv_storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp &e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    out << app.help();
    return kExitUsage;
  }
  if (*seed_opt) g.seed = seed;

  try {
    g.thread_count();
    if (*mk) return MakeSynthetic(g, spec_path, out_dir, err);
    if (*tr) return Train(g, sources, targets, train_dir, err);
    if (*cv) return Convert(g, in_path, out_path, target, ckpt, sample_z, err);
    if (*ev) return Eval(g, conv_path, ref_path, base_path, report_path, silence_db, err);
  } catch (const NumericError &e) {
    err << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const ConfigError &e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error &e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace vawgan
