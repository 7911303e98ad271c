#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "posicert/rational.hpp"

namespace posicert {

struct ClosedInterval {
  Rational lo;
  Rational hi;

  bool is_point() const { return lo == hi; }
  friend bool operator==(const ClosedInterval&, const ClosedInterval&) = default;
};

// Compact U = [a1,b1] u ... u [ak,bk] with a1 <= b1 < a2 <= b2 < ... < ak <= bk.
class IntervalUnion {
 public:
  // Throws PreconditionError if the components are empty, unordered or overlapping.
  explicit IntervalUnion(std::vector<ClosedInterval> components);

  // "[0,1]u[2,3]"; 'U' is accepted as well, and a bare point may be written "[c,c]".
  static IntervalUnion parse(std::string_view text);

  const std::vector<ClosedInterval>& components() const { return components_; }
  std::size_t size() const { return components_.size(); }
  const ClosedInterval& operator[](std::size_t i) const { return components_[i]; }
  const Rational& min() const { return components_.front().lo; }
  const Rational& max() const { return components_.back().hi; }

  bool contains(const Rational& x) const;

  friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

 private:
  std::vector<ClosedInterval> components_;
};

std::string to_string(const IntervalUnion& u);

}  // namespace posicert
