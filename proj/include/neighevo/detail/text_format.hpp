/*
 * Copyright 2026 The neighevo Authors
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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace neighevo::detail {

std::vector<std::string_view> split_fields(std::string_view line);
std::optional<std::int64_t> parse_int(std::string_view field);

// 17 significant digits, shortest general notation; "inf"/"-inf"/"nan"
// for non-finite values.
std::string format_double(double value);

std::string json_escape(std::string_view text);

std::string_view trim(std::string_view text);

}  // namespace neighevo::detail
