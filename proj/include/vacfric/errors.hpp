// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace vacfric {

/// Input outside an operation's domain (non-unit vectors, undersized grids, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The time integrator lost unitarity beyond its tolerance.
class IntegratorFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A fit window could not be used (non-monotone data, too few samples).
class FitWindowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vacfric
