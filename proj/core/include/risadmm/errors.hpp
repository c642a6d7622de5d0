// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risadmm contributors

#pragma once

#include <stdexcept>

namespace risadmm {

/// Thrown when matrix/vector dimensions violate an operation's contract.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an iterative numerical routine fails to converge.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace risadmm
