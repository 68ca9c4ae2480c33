#pragma once

#include <stdexcept>
#include <string>

namespace tailmix {

// Classification query outside the supported regime table.
class UnsupportedRegimeError : public std::runtime_error {
 public:
  explicit UnsupportedRegimeError(const std::string& what) : std::runtime_error(what) {}
};

// An integral whose convergence cannot be certified to tolerance.
class DivergentIntegralError : public std::runtime_error {
 public:
  explicit DivergentIntegralError(const std::string& what) : std::runtime_error(what) {}
};

// Sampler initialization failed to find a positive-likelihood state.
class InitFailureError : public std::runtime_error {
 public:
  explicit InitFailureError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tailmix
