// src/training/trace.cc

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

#include <sstream>

#include "vawgan/key-value.h"
#include "vawgan/training/trainer.h"

namespace vawgan {

std::string TrainTrace::to_csv() const {
  std::ostringstream os;
  os << "step,phase,j_lat,j_obs,j_wgan,seconds\n";
  for (const TraceRecord &r : records) {
    os << r.step << ',' << r.phase << ',' << format_double(r.j_lat) << ',' << format_double(r.j_obs) << ',';
    if (r.has_wgan) os << format_double(r.j_wgan);
    os << ',' << format_double(r.seconds) << '\n';
  }
  return os.str();
}

}  // namespace vawgan
