// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sdofsim authors

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sdofsim {

// A requested formula or transmission scheme does not apply to the given
// antenna configuration (outside its validity regime).
class not_applicable_error : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// Floating-point analysis produced a non-finite intermediate value.
class numerical_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A random draw violated a genericity assumption (measure-zero event at the
// configured tolerance). Callers resample with a fresh substream and count.
class degenerate_draw_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// An exhaustive enumeration would exceed the configured state cap. Carries
// the computed state count so callers can report it.
class too_large_error : public std::runtime_error {
  public:
    too_large_error(const std::string &msg, std::uint64_t states)
        : std::runtime_error(msg), states_(states) {}
    std::uint64_t states() const { return states_; }

  private:
    std::uint64_t states_;
};

} // namespace sdofsim
