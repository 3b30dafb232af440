#include <cctype>

#include "minder/polyring.hpp"

namespace minder {

namespace {

// Recursive descent over
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (['*'] factor)*
//   factor := integer ['/' integer] | identifier ['^' integer]
class PolyParser {
 public:
  PolyParser(std::string_view text, const RingPtr& ring) : text_(text), ring_(ring) {}

  Polynomial parse() {
    Polynomial result(ring_);
    skip_ws();
    if (at_end()) fail("empty polynomial");
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos_;
    }
    while (true) {
      Polynomial t = parse_term();
      if (negative) t = -t;
      result += t;
      skip_ws();
      if (at_end()) break;
      if (peek() != '+' && peek() != '-') fail(std::string("unexpected character '") + peek() + "'");
      negative = peek() == '-';
      ++pos_;
    }
    return result;
  }

  Rational parse_number_literal() {
    skip_ws();
    bool negative = false;
    if (!at_end() && (peek() == '+' || peek() == '-')) {
      negative = peek() == '-';
      ++pos_;
    }
    Rational r = parse_coefficient();
    skip_ws();
    if (!at_end()) fail("trailing characters after number");
    return negative ? Rational(-r) : r;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what, ErrorCode code = ErrorCode::Parse) const {
    throw ParseError(code, what, pos_);
  }

  Integer parse_integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected integer");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  Rational parse_coefficient() {
    Integer num = parse_integer();
    skip_ws();
    if (!at_end() && peek() == '/') {
      ++pos_;
      const std::size_t den_pos = pos_;
      Integer den = parse_integer();
      if (den == 0) throw ParseError(ErrorCode::Parse, "zero denominator", den_pos);
      Rational q(num, den);
      q.canonicalize();
      return q;
    }
    return Rational(num);
  }

  bool factor_starts() const {
    if (at_end()) return false;
    const unsigned char c = static_cast<unsigned char>(peek());
    return std::isdigit(c) || std::isalpha(c) || c == '_';
  }

  Polynomial parse_factor() {
    skip_ws();
    if (at_end()) fail("expected factor");
    const unsigned char c = static_cast<unsigned char>(peek());
    if (std::isdigit(c)) return Polynomial::constant(ring_, parse_coefficient());
    if (!(std::isalpha(c) || c == '_')) fail(std::string("unexpected character '") + peek() + "'");

    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    const auto index = ring_->index_of(name);
    if (!index) {
      throw ParseError(ErrorCode::UnknownVariable, "unknown variable '" + std::string(name) + "'",
                       start);
    }
    int power = 1;
    skip_ws();
    if (!at_end() && peek() == '^') {
      ++pos_;
      Integer e = parse_integer();
      if (!e.fits_sint_p() || e > 100000) fail("exponent too large");
      power = static_cast<int>(e.get_si());
    }
    return Polynomial::monomial(ring_, Monomial::unit(ring_->size(), *index, power));
  }

  Polynomial parse_term() {
    Polynomial t = parse_factor();
    while (true) {
      skip_ws();
      if (at_end()) break;
      if (peek() == '*') {
        ++pos_;
        t = t * parse_factor();
      } else if (factor_starts()) {
        t = t * parse_factor();
      } else {
        break;
      }
    }
    return t;
  }

  std::string_view text_;
  const RingPtr& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring) {
  return PolyParser(text, ring).parse();
}

Rational parse_rational(std::string_view text) {
  static const RingPtr empty = make_ring({});
  return PolyParser(text, empty).parse_number_literal();
}

}  // namespace minder
