// Copyright 2026 The netfed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NETFED_TOOLS_CLI_H_
#define NETFED_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace netfed::cli {

// Runs one netfed subcommand. args excludes the program name. Returns the
// process exit code: 0 on success, 1 on validation or I/O errors, 2 on usage
// errors.
int Dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

int Dispatch(int argc, char** argv);

std::vector<int> ParseCounts(const std::string& text);
std::vector<double> ParseGrid(const std::string& text);

}  // namespace netfed::cli

#endif  // NETFED_TOOLS_CLI_H_
