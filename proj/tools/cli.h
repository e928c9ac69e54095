/*
Copyright 2026 The mpkex Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef MPKEX_TOOLS_CLI_H_
#define MPKEX_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace mpkex::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitExhausted = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitTransport = 3;

// Entry point for the mpkex tool. args excludes the program name.
int Main(const std::vector<std::string>& args, std::ostream& out,
         std::ostream& err);

}  // namespace mpkex::cli

#endif  // MPKEX_TOOLS_CLI_H_
