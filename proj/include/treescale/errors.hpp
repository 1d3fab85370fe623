#pragma once

#include <stdexcept>
#include <string>

namespace treescale {

/// Base of every error raised by the library.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A vertex address or end word uses a label that does not exist.
class address_error : public error {
public:
  using error::error;
};

/// An automorphism description is not realizable on the given tree
/// (parity violation, inversion in a biregular tree, bad permutation).
class representation_error : public error {
public:
  using error::error;
};

class not_hyperbolic_error : public error {
public:
  using error::error;
};

class degenerate_axis_error : public error {
public:
  using error::error;
};

/// A classification certificate failed; indicates a broken representation.
class internal_consistency_error : public error {
public:
  using error::error;
};

/// The brute-force index oracle refused an instance outside its budget.
class oracle_budget_error : public error {
public:
  using error::error;
};

/// A search window or iteration cap was exhausted before a decision.
class inconclusive_error : public error {
public:
  inconclusive_error(const std::string& what, int radius)
      : error(what + " (radius " + std::to_string(radius) + ")"), radius_(radius) {}
  int radius() const noexcept { return radius_; }

private:
  int radius_;
};

class parse_error : public error {
public:
  using error::error;
};

}  // namespace treescale
