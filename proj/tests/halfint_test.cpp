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

#include <gtest/gtest.h>

#include "pqfi/halfint.hpp"

namespace pqfi {
namespace {

TEST(HalfInt, ParsesFractionsDecimalsAndTwiceValues) {
    EXPECT_EQ(HalfInt::parse("3/2").twice, 3);
    EXPECT_EQ(HalfInt::parse("1/2").twice, 1);
    EXPECT_EQ(HalfInt::parse("4/2").twice, 4);
    EXPECT_EQ(HalfInt::parse("2/1").twice, 4);
    EXPECT_EQ(HalfInt::parse("-1/2").twice, -1);
    EXPECT_EQ(HalfInt::parse("1.5").twice, 3);
    EXPECT_EQ(HalfInt::parse("2.0").twice, 4);
    EXPECT_EQ(HalfInt::parse("3").twice, 3);
    EXPECT_EQ(HalfInt::parse("0").twice, 0);
}

TEST(HalfInt, RejectsMalformedText) {
    EXPECT_THROW(HalfInt::parse(""), DomainError);
    EXPECT_THROW(HalfInt::parse("1/3"), DomainError);
    EXPECT_THROW(HalfInt::parse("1.25"), DomainError);
    EXPECT_THROW(HalfInt::parse("abc"), DomainError);
    EXPECT_THROW(HalfInt::parse("1/0"), DomainError);
}

TEST(HalfInt, FormatsAsFractionOrInteger) {
    EXPECT_EQ(HalfInt{1}.str(), "1/2");
    EXPECT_EQ(HalfInt{-3}.str(), "-3/2");
    EXPECT_EQ(HalfInt{4}.str(), "2");
    EXPECT_EQ(HalfInt{0}.str(), "0");
    EXPECT_DOUBLE_EQ(HalfInt{3}.value(), 1.5);
}

TEST(HalfInt, MagneticPairs) {
    const HalfInt j{3};
    for (int m = -3; m <= 3; m += 2) {
        EXPECT_TRUE(valid_magnetic_pair(j, HalfInt{m}));
    }
    EXPECT_FALSE(valid_magnetic_pair(j, HalfInt{2}));
    EXPECT_FALSE(valid_magnetic_pair(j, HalfInt{5}));
    EXPECT_FALSE(valid_magnetic_pair(HalfInt{-1}, HalfInt{-1}));
    EXPECT_THROW(require_magnetic_pair(HalfInt{2}, HalfInt{1}), DomainError);
    EXPECT_NO_THROW(require_magnetic_pair(HalfInt{0}, HalfInt{0}));
}

TEST(HalfInt, OrderingAndNegation) {
    EXPECT_LT(HalfInt{1}, HalfInt{3});
    EXPECT_EQ(-HalfInt{3}, HalfInt{-3});
    EXPECT_TRUE(HalfInt{4}.is_integer());
    EXPECT_FALSE(HalfInt{5}.is_integer());
}

} // namespace
} // namespace pqfi
