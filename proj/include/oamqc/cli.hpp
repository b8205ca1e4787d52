// Copyright 2026 The oamqc Authors
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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oamqc::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitIo = 3;

/// Entry point of the `oamqc` tool. args[0] is the program name. Results go
/// to files named by --output (or `out`); errors are reported on `err` as a
/// JSON object {"error": {"kind": ..., "message": ...}, "exit_code": ...}.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace oamqc::cli
