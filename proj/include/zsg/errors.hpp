#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zsg {

// Base class for every error thrown by the toolkit.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A domain type or game family rejected its parameters. The message names
// the violated invariant.
class construction_error : public error {
 public:
  using error::error;
};

class invalid_player_error : public error {
 public:
  using error::error;
};

// A strategy profile has the wrong shape or leaves the strategy box.
class profile_error : public error {
 public:
  using error::error;
};

// A same-group operation was requested for players of different groups.
class invalid_pair_error : public error {
 public:
  using error::error;
};

// An objective oracle produced a non-finite value.
class numeric_error : public error {
 public:
  using error::error;
};

// Expression source rejected; carries the byte offset of the problem.
class parse_error : public error {
 public:
  enum class kind { syntax, unknown_identifier, index_out_of_range };

  parse_error(kind k, const std::string& what, std::size_t offset)
      : error(what + " (byte offset " + std::to_string(offset) + ")"),
        kind_(k),
        offset_(offset) {}

  kind error_kind() const { return kind_; }
  std::size_t offset() const { return offset_; }

 private:
  kind kind_;
  std::size_t offset_;
};

// Expression evaluation failed (division by zero); the message quotes the
// offending subexpression.
class eval_error : public error {
 public:
  using error::error;
};

// A verification was invoked at a point that does not satisfy its
// hypothesis (e.g. the supplied point is not a Nash equilibrium).
class hypothesis_error : public error {
 public:
  using error::error;
};

// The maximin and minimax strategies fail to coincide, so the
// saddle-to-Nash verification cannot proceed.
class coincidence_error : public error {
 public:
  using error::error;
};

// A solver trace handed to a verification is unusable (not converged).
class trace_error : public error {
 public:
  using error::error;
};

// Config file or CLI usage problem; the message carries the field path.
class config_error : public error {
 public:
  using error::error;
};

}  // namespace zsg
