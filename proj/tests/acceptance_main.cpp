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

// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
// Optional argument filters criteria by id or name substring.

#include <cstdio>
#include <string>

#include "anyonbraid/acceptance.hpp"

int main(int argc, char** argv) {
    std::string filter = argc > 1 ? argv[1] : "";
    auto results = anyonbraid::run_acceptance(filter);
    if (results.empty()) {
        std::printf("no acceptance criteria match '%s'\n", filter.c_str());
        return 1;
    }
    int failures = 0;
    for (const auto& r : results) {
        std::printf("%s %s %s (%.2f ms) - %s\n", r.passed ? "PASS" : "FAIL", r.id.c_str(),
                    r.name.c_str(), r.millis, r.detail.c_str());
        failures += !r.passed;
    }
    std::printf("%zu/%zu acceptance criteria passed\n", results.size() - failures,
                results.size());
    return failures == 0 ? 0 : 1;
}
