// Copyright 2026 The anyonbraid authors
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

#include <stdexcept>
#include <string>

namespace anyonbraid {

/// Bad inputs: malformed files, out-of-range indices, invalid dimensions.
/// The CLI maps this to exit code 2.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// Structurally valid input driving a protocol outside its contract
/// (open braiding loop, unexpected final syndrome). CLI exit code 3.
struct protocol_error : std::runtime_error {
    explicit protocol_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace anyonbraid
