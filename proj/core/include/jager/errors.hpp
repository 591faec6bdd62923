#ifndef JAGER_ERRORS_HPP
#define JAGER_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jager {

// Input outside an operation's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Working precision is insufficient for a trustworthy result. `index` is the
// 1-based step (or coefficient index) at which trust was lost, 0 if unknown.
class PrecisionLoss : public std::runtime_error {
 public:
  PrecisionLoss(const std::string& what, std::size_t index)
      : std::runtime_error(what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

// A Prop. vertex whose denominator vanishes (m = 1, k = 1, a = b = 0).
class VertexAtInfinity : public DomainError {
 public:
  using DomainError::DomainError;
};

// A bound whose region is unbounded.
class UnboundedRegion : public DomainError {
 public:
  using DomainError::DomainError;
};

class ConstructionFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace jager

#endif  // JAGER_ERRORS_HPP
