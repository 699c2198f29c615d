// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sdofsim authors

#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

namespace sdofsim {

// Exact rational value. All closed-form degree-of-freedom computations use
// this type; floating point never enters the formula layer.
using Rational = boost::rational<std::int64_t>;

// Renders "n/d", or just "n" when the denominator is 1.
inline std::string to_string(const Rational &r) {
    if (r.denominator() == 1)
        return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline double to_double(const Rational &r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

} // namespace sdofsim
