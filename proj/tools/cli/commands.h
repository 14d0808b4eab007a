// tools/cli/commands.h

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

#ifndef FRETALIGN_TOOLS_CLI_COMMANDS_H_
#define FRETALIGN_TOOLS_CLI_COMMANDS_H_

#include <ostream>
#include <string>
#include <vector>

namespace fretalign {
namespace cli {

// Parses `args` (args[0] is the program name) and runs one subcommand:
// compose, synth, train, align, eval, stats or shift.  Returns the process
// exit code: 0 success, 1 configuration error, 2 input error, 3 partial
// alignment failure.
int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace cli
}  // namespace fretalign

#endif  // FRETALIGN_TOOLS_CLI_COMMANDS_H_
