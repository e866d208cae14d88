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

#include "pqfi/channel.hpp"
#include "pqfi/errors.hpp"
#include "pqfi/experiments.hpp"
#include "pqfi/halfint.hpp"
#include "pqfi/landmarks.hpp"
#include "pqfi/meter.hpp"
#include "pqfi/optimize.hpp"
#include "pqfi/oracle.hpp"
#include "pqfi/tolerances.hpp"
#include "pqfi/wigner.hpp"
