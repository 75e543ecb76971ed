/*
 * Copyright 2026 the alcforget authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef ALCF_CLI_HPP
#define ALCF_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace alcf {

// Exit codes: 0 yes/success, 1 no, 2 usage or format error, 3 resource cap.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace alcf

#endif // ALCF_CLI_HPP
