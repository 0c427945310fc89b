// vawgan/cli/cli.h

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

#ifndef VAWGAN_CLI_CLI_H_
#define VAWGAN_CLI_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace vawgan {

// Exit codes of run().
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitNumeric = 3,
};

/// Entry point behind the `vawgan` binary. `args` excludes the program name.
/// Progress goes to `err`; help and usage text to `out`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace vawgan

#endif  // VAWGAN_CLI_CLI_H_
