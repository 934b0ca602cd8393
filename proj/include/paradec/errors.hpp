/**
 * @file errors.hpp
 * @brief Error hierarchy shared by the whole library.
 *
 * Two families matter to callers:
 *  - ConfigError: bad user input (malformed file, unreduced fraction,
 *    unknown option). The CLI maps these to exit status 2.
 *  - MathError: a violated mathematical precondition or broken invariant
 *    (pole inside an interval, determinant not one, non-square-free
 *    polynomial). These indicate either bad input data or an internal bug
 *    and also map to exit status 2; they are never used for a *verified
 *    negative finding*, which is an ordinary return value (exit status 1).
 */
#pragma once

#include <stdexcept>
#include <string>

namespace paradec {

/// Malformed input: files, literals, CLI arguments, configs.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Violated mathematical precondition or internal invariant.
class MathError : public std::runtime_error {
 public:
  explicit MathError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace paradec
