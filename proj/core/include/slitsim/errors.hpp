#pragma once

#include <stdexcept>
#include <string>

namespace slitsim {

// Configuration rejected: invalid value, unknown key, or broken invariant.
// The CLI maps this to exit code 2.
class invalid_config : public std::runtime_error {
 public:
  explicit invalid_config(const std::string& what_arg)
      : std::runtime_error(what_arg) {}
};

// A file could not be read, written, or parsed; the message names the path
// (and the line for parse failures).  The CLI maps this to exit code 3.
class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& what_arg)
      : std::runtime_error(what_arg) {}
};

// The simulation could not proceed, e.g. a trajectory ran into a density
// node and exhausted its sub-step budget.  The CLI maps this to exit code 1.
class sim_error : public std::runtime_error {
 public:
  explicit sim_error(const std::string& what_arg)
      : std::runtime_error(what_arg) {}
};

}  // namespace slitsim
