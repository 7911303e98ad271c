#include "posicert/poly_io.hpp"

#include <cctype>

namespace posicert {

namespace {

constexpr char kVarNames[3] = {'x', 'y', 'z'};
constexpr unsigned kMaxExponent = 100000;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  TriPoly parse() {
    TriPoly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

  std::size_t max_variable() const { return max_var_; }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  TriPoly expr() {
    TriPoly acc = term();
    for (char c = peek(); c == '+' || c == '-'; c = peek()) {
      ++pos_;
      TriPoly rhs = term();
      if (c == '+') {
        acc += rhs;
      } else {
        acc -= rhs;
      }
    }
    return acc;
  }

  static bool starts_atom(char c) {
    return c == '(' || c == 'x' || c == 'y' || c == 'z';
  }

  TriPoly term() {
    TriPoly acc = unary();
    while (true) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc *= unary();
      } else if (c == '/') {
        ++pos_;
        const std::size_t at = pos_;
        TriPoly d = unary();
        if (!d.is_constant()) throw ParseError("division by a non-constant", at);
        if (d.is_zero()) throw ParseError("division by zero", at);
        acc *= Rational(1) / d.constant_term();
      } else if (starts_atom(c)) {
        acc *= unary();
      } else {
        return acc;
      }
    }
  }

  TriPoly unary() {
    const char c = peek();
    if (c == '-') {
      ++pos_;
      return -unary();
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  TriPoly power() {
    TriPoly base = atom();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a non-negative integer exponent");
      if (pos_ - start > 6) throw ParseError("exponent too large", start);
      const unsigned k = static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
      if (k > kMaxExponent) throw ParseError("exponent too large", start);
      return base.pow(k);
    }
    return base;
  }

  TriPoly atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      TriPoly inner = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return TriPoly(Rational(Integer(std::string(text_.substr(start, pos_ - start)))));
    }
    for (std::size_t v = 0; v < 3; ++v) {
      if (c == kVarNames[v]) {
        ++pos_;
        max_var_ = std::max(max_var_, v + 1);
        return TriPoly::variable(v);
      }
    }
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t max_var_ = 0;
};

}  // namespace

Rational parse_rational(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto digits = [&]() -> std::string {
    skip();
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) throw ParseError("expected digits in rational", pos);
    return std::string(text.substr(start, pos - start));
  };
  skip();
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  Integer num(digits());
  Integer den(1);
  skip();
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    den = Integer(digits());
    if (den == 0) throw ParseError("zero denominator", pos);
  }
  skip();
  if (pos != text.size()) throw ParseError("trailing characters in rational", pos);
  Rational r(negative ? Integer(-num) : num, den);
  r.canonicalize();
  return r;
}

template <std::size_t N>
Poly<N> parse_poly(std::string_view text) {
  Parser parser(text);
  TriPoly p = parser.parse();
  if (parser.max_variable() > N) {
    throw ParseError(std::string("variable '") + kVarNames[parser.max_variable() - 1] +
                         "' is not available with " + std::to_string(N) + " variable(s)",
                     0);
  }
  return restrict_to<N>(p);
}

std::size_t detect_arity(std::string_view text) {
  Parser parser(text);
  parser.parse();
  return std::max<std::size_t>(parser.max_variable(), 1);
}

std::vector<std::string> split_list(std::string_view text, char separator) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(separator, start);
    if (end == std::string_view::npos) end = text.size();
    std::string item(text.substr(start, end - start));
    const auto b = item.find_first_not_of(" \t\n\r");
    const auto e = item.find_last_not_of(" \t\n\r");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    start = end + 1;
  }
  return out;
}

template <std::size_t N>
std::string to_string(const Poly<N>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const bool has_vars = total_degree_of<N>(e) > 0;
    bool need_star = false;
    if (!has_vars || mag != 1) {
      out += mag.get_str();
      need_star = true;
    }
    for (std::size_t v = 0; v < N; ++v) {
      if (e[v] == 0) continue;
      if (need_star) out += "*";
      out += kVarNames[v];
      if (e[v] > 1) out += "^" + std::to_string(e[v]);
      need_star = true;
    }
  }
  return out;
}

template Poly<1> parse_poly<1>(std::string_view);
template Poly<2> parse_poly<2>(std::string_view);
template Poly<3> parse_poly<3>(std::string_view);
template std::string to_string<1>(const Poly<1>&);
template std::string to_string<2>(const Poly<2>&);
template std::string to_string<3>(const Poly<3>&);

}  // namespace posicert
