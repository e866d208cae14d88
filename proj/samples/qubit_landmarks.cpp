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

// Prints the three characteristic phases and the QFI breakdown at each of them
// for a qubit meter in the weak-coupling regime.

#include <cstdio>

#include "pqfi/pqfi.hpp"

int main() {
    const auto spec = pqfi::MeterSpec::pancharatnam(2);
    const auto base = pqfi::ChannelParams::extremal(pqfi::HalfInt{1}, 1e-3, 0.0);
    const pqfi::ThetaLandmarks lm = pqfi::compute_landmarks(base, spec);

    const struct {
        const char *name;
        pqfi::Landmark at;
    } rows[] = {{"theta_T", lm.total}, {"theta_perp", lm.perp}, {"theta_par", lm.parallel}};

    std::printf("%-10s %-22s %-14s %-14s %-14s\n", "landmark", "theta", "P", "I_perp", "T");
    for (const auto &r : rows) {
        auto p = base;
        p.theta = r.at.theta;
        const auto b = pqfi::qfi_breakdown(p, spec);
        std::printf("%-10s %-22.17g %-14.6g %-14.6g %-14.6g\n", r.name, r.at.theta, b.p, b.i_perp,
                    b.t_per_trial);
    }
    return 0;
}
