// Copyright 2026 The tunnel_wkb Authors
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
#include <string_view>

namespace tunnel_wkb {

// Machine-readable error category, surfaced by the CLI as the exit reason.
enum class ErrorCategory { Domain, Applicability, Convergence, Unsupported, Usage };

inline std::string_view to_string(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Domain: return "domain";
    case ErrorCategory::Applicability: return "applicability";
    case ErrorCategory::Convergence: return "convergence";
    case ErrorCategory::Unsupported: return "unsupported";
    case ErrorCategory::Usage: return "usage";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}
  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCategory::Domain, what) {}
};

// Hypergeometric series evaluated where it does not converge (e.g. x = 1 with c-a-b <= 0).
class DivergenceError : public DomainError {
 public:
  using DomainError::DomainError;
};

// The total potential has no barrier above the requested energy.
class NoBarrierError : public DomainError {
 public:
  using DomainError::DomainError;
};

class ApplicabilityError : public Error {
 public:
  explicit ApplicabilityError(const std::string& what)
      : Error(ErrorCategory::Applicability, what) {}
};

class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& what) : Error(ErrorCategory::Convergence, what) {}
};

class BracketError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

class UnsupportedError : public Error {
 public:
  explicit UnsupportedError(const std::string& what) : Error(ErrorCategory::Unsupported, what) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorCategory::Usage, what) {}
};

}  // namespace tunnel_wkb
