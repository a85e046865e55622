/*
 * Copyright 2026 The serpscale authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace serpscale {

/// Runs the command line front end. Arguments exclude the program name.
/// Exit codes: 0 success, 1 usage error, 2 data or parse error, 3 audit
/// found violations.
int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err);

}  // namespace serpscale
