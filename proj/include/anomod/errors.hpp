#pragma once

#include <stdexcept>
#include <string>

namespace anomod {

// Operands belong to different ring contexts, or a name is not a generator.
class ContextError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An operation was called outside its domain (non-nilpotent argument to exp,
// non-unit constant term, inhomogeneous substitution, ...).
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The requested computation needs data the model does not carry, e.g. a
// symbolic rank where only an integer rank makes sense.
class UnsupportedConfiguration : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A verification target was run under a configuration that contradicts its
// hypotheses.
class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace anomod
