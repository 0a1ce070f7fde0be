#pragma once

#include <stdexcept>
#include <string>

namespace tuplesieve {

// A wedge with no interior is a normal geometric outcome, not a bad argument,
// so callers can distinguish it from ordinary domain errors.
class EmptyWedgeError : public std::domain_error {
 public:
  explicit EmptyWedgeError(const std::string& what) : std::domain_error(what) {}
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tuplesieve
