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

#include <stdexcept>
#include <string>

namespace pqfi {

/// Invalid quantum numbers, mismatched meter specs, malformed configuration.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// The postselection probability fell to or below the floor; the QFI is
/// divergent or undefined there.
class VanishingPostselection : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Tuning the postselection phase cannot change the parallel term.
class NoSuppression : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Neighbouring states along a meter path became orthogonal.
class ConjugatePoint : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An objective is identically zero (or undefined) over the whole search range.
class DegenerateLandscape : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace pqfi
