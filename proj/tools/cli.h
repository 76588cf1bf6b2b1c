// tools/cli.h

// Copyright 2026  The vowelkit Authors

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
//

#ifndef VOWELKIT_TOOLS_CLI_H_
#define VOWELKIT_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace vowelkit::cli {

enum ExitCode : int {
  kOk = 0,
  kUsageError = 1,
  kDataError = 2,
  kInternalError = 3,
};

// Entry point of the `vowelkit` tool. Subcommands: extract, train, predict,
// evaluate, grid, report. Results go to |out|, diagnostics to |err|.
int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
int RunCli(int argc, char **argv);

}  // namespace vowelkit::cli

#endif  // VOWELKIT_TOOLS_CLI_H_
