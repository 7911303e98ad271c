#include "posicert/interval_union.hpp"

#include <cctype>

#include "posicert/errors.hpp"

namespace posicert {

IntervalUnion::IntervalUnion(std::vector<ClosedInterval> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw PreconditionError("interval union needs at least one component");
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (components_[i].lo > components_[i].hi) {
      throw PreconditionError("interval component " + std::to_string(i + 1) + " has lo > hi");
    }
    if (i > 0 && !(components_[i - 1].hi < components_[i].lo)) {
      throw PreconditionError("interval components must be strictly increasing and disjoint");
    }
  }
}

IntervalUnion IntervalUnion::parse(std::string_view text) {
  std::vector<ClosedInterval> parts;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto read_until = [&](char stop) {
    const std::size_t start = pos;
    while (pos < text.size() && text[pos] != stop) ++pos;
    if (pos == text.size()) throw ParseError(std::string("expected '") + stop + "'", pos);
    const auto item = text.substr(start, pos - start);
    ++pos;
    try {
      return parse_rational(item);
    } catch (const ParseError& e) {
      throw ParseError("bad interval endpoint '" + std::string(item) + "'", start);
    }
  };
  while (true) {
    skip();
    if (pos >= text.size() || text[pos] != '[') throw ParseError("expected '['", pos);
    ++pos;
    Rational lo = read_until(',');
    Rational hi = read_until(']');
    parts.push_back({lo, hi});
    skip();
    if (pos == text.size()) break;
    if (text[pos] != 'u' && text[pos] != 'U') throw ParseError("expected 'u' between intervals", pos);
    ++pos;
  }
  return IntervalUnion(std::move(parts));
}

bool IntervalUnion::contains(const Rational& x) const {
  for (const auto& c : components_) {
    if (c.lo <= x && x <= c.hi) return true;
  }
  return false;
}

std::string to_string(const IntervalUnion& u) {
  std::string out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i > 0) out += "u";
    out += "[" + u[i].lo.get_str() + "," + u[i].hi.get_str() + "]";
  }
  return out;
}

}  // namespace posicert
