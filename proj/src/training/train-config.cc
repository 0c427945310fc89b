// src/training/train-config.cc

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

#include "vawgan/training/train-config.h"

#include <sstream>

#include "vawgan/errors.h"

namespace vawgan {

namespace {

std::vector<int> ParseIntList(const std::string &key, const std::string &value) {
  std::vector<int> out;
  if (value.empty() || value == "none") return out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t b = item.find_first_not_of(' '), e = item.find_last_not_of(' ');
    if (b == std::string::npos) throw ConfigError(key + ": empty list element");
    out.push_back(static_cast<int>(parse_int(key, item.substr(b, e - b + 1))));
  }
  return out;
}

std::string FormatIntList(const std::vector<int> &v) {
  if (v.empty()) return "none";
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

int ToInt(const std::string &k, const std::string &v) { return static_cast<int>(parse_int(k, v)); }

}  // namespace

void TrainConfig::Validate() const {
  if (!(alpha >= 0)) throw ConfigError("alpha must be >= 0");
  if (n_critic < 1) throw ConfigError("n_critic must be >= 1");
  if (!(clip_c > 0)) throw ConfigError("clip_c must be > 0");
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (!(lr_encoder > 0) || !(lr_generator > 0) || !(lr_critic > 0))
    throw ConfigError("learning rates must be > 0");
  if (phase1_steps < 0 || phase2_steps < 0) throw ConfigError("step budgets must be >= 0");
  if (checkpoint_every < 0) throw ConfigError("checkpoint_every must be >= 0");
  arch.Validate();
}

void apply_config(const KeyValues &kv, TrainConfig *cfg) {
  ArchConfig &a = cfg->arch;
  for (const auto &[k, v] : kv) {
    if (k == "alpha") cfg->alpha = parse_double(k, v);
    else if (k == "n_critic") cfg->n_critic = ToInt(k, v);
    else if (k == "clip_c") cfg->clip_c = parse_double(k, v);
    else if (k == "batch_size") cfg->batch_size = ToInt(k, v);
    else if (k == "lr_encoder") cfg->lr_encoder = parse_double(k, v);
    else if (k == "lr_generator") cfg->lr_generator = parse_double(k, v);
    else if (k == "lr_critic") cfg->lr_critic = parse_double(k, v);
    else if (k == "phase1_steps") cfg->phase1_steps = ToInt(k, v);
    else if (k == "phase2_steps") cfg->phase2_steps = ToInt(k, v);
    else if (k == "checkpoint_every") cfg->checkpoint_every = ToInt(k, v);
    else if (k == "seed") cfg->seed = parse_u64(k, v);
    else if (k == "adversarial") {
      if (v == "wasserstein") cfg->adversarial = AdversarialMode::kWasserstein;
      else if (v == "jensen_shannon") cfg->adversarial = AdversarialMode::kJensenShannon;
      else throw ConfigError("adversarial: expected wasserstein or jensen_shannon, got " + v);
    }
    else if (k == "dim") a.dim = ToInt(k, v);
    else if (k == "z_dim") a.z_dim = ToInt(k, v);
    else if (k == "num_speakers") a.num_speakers = ToInt(k, v);
    else if (k == "embed_dim") a.embed_dim = ToInt(k, v);
    else if (k == "enc_channels") a.enc_channels = ParseIntList(k, v);
    else if (k == "enc_strides") a.enc_strides = ParseIntList(k, v);
    else if (k == "enc_kernel") a.enc_kernel = ToInt(k, v);
    else if (k == "gen_channels") a.gen_channels = ParseIntList(k, v);
    else if (k == "gen_kernel") a.gen_kernel = ToInt(k, v);
    else if (k == "critic_channels") a.critic_channels = ParseIntList(k, v);
    else if (k == "critic_strides") a.critic_strides = ParseIntList(k, v);
    else if (k == "critic_kernel") a.critic_kernel = ToInt(k, v);
    else if (k == "critic_hidden") a.critic_hidden = ParseIntList(k, v);
    else if (k == "slope") a.slope = parse_double(k, v);
    else if (k == "log_var_bound") a.log_var_bound = parse_double(k, v);
    else throw ConfigError("unknown config key: " + k);
  }
}

TrainConfig parse_train_config(const std::string &text) {
  TrainConfig cfg;
  apply_config(parse_key_values(text), &cfg);
  cfg.Validate();
  return cfg;
}

std::string serialize_train_config(const TrainConfig &c) {
  const ArchConfig &a = c.arch;
  std::ostringstream os;
  os << "alpha = " << format_double(c.alpha) << "\n"
     << "n_critic = " << c.n_critic << "\n"
     << "clip_c = " << format_double(c.clip_c) << "\n"
     << "batch_size = " << c.batch_size << "\n"
     << "lr_encoder = " << format_double(c.lr_encoder) << "\n"
     << "lr_generator = " << format_double(c.lr_generator) << "\n"
     << "lr_critic = " << format_double(c.lr_critic) << "\n"
     << "phase1_steps = " << c.phase1_steps << "\n"
     << "phase2_steps = " << c.phase2_steps << "\n"
     << "checkpoint_every = " << c.checkpoint_every << "\n"
     << "seed = " << c.seed << "\n"
     << "adversarial = "
     << (c.adversarial == AdversarialMode::kWasserstein ? "wasserstein" : "jensen_shannon") << "\n"
     << "dim = " << a.dim << "\n"
     << "z_dim = " << a.z_dim << "\n"
     << "num_speakers = " << a.num_speakers << "\n"
     << "embed_dim = " << a.embed_dim << "\n"
     << "enc_channels = " << FormatIntList(a.enc_channels) << "\n"
     << "enc_strides = " << FormatIntList(a.enc_strides) << "\n"
     << "enc_kernel = " << a.enc_kernel << "\n"
     << "gen_channels = " << FormatIntList(a.gen_channels) << "\n"
     << "gen_kernel = " << a.gen_kernel << "\n"
     << "critic_channels = " << FormatIntList(a.critic_channels) << "\n"
     << "critic_strides = " << FormatIntList(a.critic_strides) << "\n"
     << "critic_kernel = " << a.critic_kernel << "\n"
     << "critic_hidden = " << FormatIntList(a.critic_hidden) << "\n"
     << "slope = " << format_double(a.slope) << "\n"
     << "log_var_bound = " << format_double(a.log_var_bound) << "\n";
  return os.str();
}

}  // namespace vawgan
