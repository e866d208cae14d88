// Copyright 2026 The pqfi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

namespace pqfi {

/// Agreement required between the analytic channel and the dense oracle.
struct OracleTolerances {
    static constexpr double qfi_rel = 1e-6;
    static constexpr double qfi_abs = 1e-8;
    static constexpr double prob_abs = 1e-10;
};

} // namespace pqfi
