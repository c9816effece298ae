#pragma once

#include <stdexcept>
#include <string>

namespace psfree {

/// An interval evaluation still straddles an integer at the policy's maxBits.
class AmbiguousAtMaxPrecision : public std::runtime_error {
 public:
  explicit AmbiguousAtMaxPrecision(const std::string& what) : std::runtime_error(what) {}
};

class NotInvertible : public std::domain_error {
 public:
  explicit NotInvertible(const std::string& what) : std::domain_error(what) {}
};

class RangeTooLarge : public std::runtime_error {
 public:
  explicit RangeTooLarge(const std::string& what) : std::runtime_error(what) {}
};

class InsufficientData : public std::runtime_error {
 public:
  explicit InsufficientData(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace psfree
