#include "muhs/initspec.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace muhs {

namespace {

constexpr double kFourPiSq = 4.0 * std::numbers::pi * std::numbers::pi;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::vector<InitTerm> parse() {
    std::vector<InitTerm> terms;
    skip_ws();
    double sign = 1.0;
    if (peek() == '+' || peek() == '-') {
      sign = peek() == '-' ? -1.0 : 1.0;
      ++pos_;
    }
    terms.push_back(parse_term(sign));
    skip_ws();
    while (!at_end()) {
      const char c = peek();
      if (c != '+' && c != '-') fail("'+' or '-' between terms");
      ++pos_;
      terms.push_back(parse_term(c == '-' ? -1.0 : 1.0));
      skip_ws();
    }
    return terms;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError(pos_, expected);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool match(std::string_view word) {
    if (text_.substr(pos_, word.size()) == word) {
      pos_ += word.size();
      return true;
    }
    return false;
  }

  double parse_unsigned_number() {
    skip_ws();
    if (match("4pi2")) return kFourPiSq;
    double value = 0.0;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc() || res.ptr == begin) fail("a number");
    pos_ += res.ptr - begin;
    return value;
  }

  double parse_signed_number() {
    skip_ws();
    double sign = 1.0;
    if (peek() == '+' || peek() == '-') {
      sign = peek() == '-' ? -1.0 : 1.0;
      ++pos_;
    }
    return sign * parse_unsigned_number();
  }

  int parse_int() {
    skip_ws();
    int value = 0;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc() || res.ptr == begin || value < 0) {
      fail("a nonnegative integer wavenumber");
    }
    pos_ += res.ptr - begin;
    return value;
  }

  bool at_trig() {
    skip_ws();
    return text_.substr(pos_, 4) == "cos(" || text_.substr(pos_, 4) == "sin(";
  }

  InitTerm parse_trig(double amp_prefix) {
    InitTerm t;
    if (match("cos(")) {
      t.kind = InitTerm::Kind::Cos;
    } else if (match("sin(")) {
      t.kind = InitTerm::Kind::Sin;
    } else {
      fail("'cos(' or 'sin('");
    }
    t.k = parse_int();
    t.amp = 1.0;
    skip_ws();
    if (peek() == ',') {
      ++pos_;
      t.amp = parse_signed_number();
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        t.phase = parse_signed_number();
        skip_ws();
      }
    }
    if (peek() != ')') fail("',' or ')'");
    ++pos_;
    t.amp *= amp_prefix;
    return t;
  }

  InitTerm parse_term(double sign) {
    skip_ws();
    if (at_end()) fail("a term");
    if (at_trig()) return parse_trig(sign);
    const double value = parse_unsigned_number();
    skip_ws();
    if (peek() == '*') {
      ++pos_;
      skip_ws();
      return parse_trig(sign * value);
    }
    InitTerm t;
    t.kind = InitTerm::Kind::Const;
    t.amp = sign * value;
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

InitSpec parse_init(std::string_view text) {
  InitSpec spec;
  spec.source = std::string(text);
  spec.terms = Parser(text).parse();
  return spec;
}

RealField InitSpec::build(PeriodicGrid grid) const {
  Eigen::ArrayXd s = Eigen::ArrayXd::Zero(grid.n);
  const Eigen::ArrayXd x = grid.nodes();
  for (const InitTerm& t : terms) {
    switch (t.kind) {
      case InitTerm::Kind::Const:
        s += t.amp;
        break;
      case InitTerm::Kind::Cos:
        s += t.amp * (2.0 * std::numbers::pi * t.k * x + t.phase).cos();
        break;
      case InitTerm::Kind::Sin:
        s += t.amp * (2.0 * std::numbers::pi * t.k * x + t.phase).sin();
        break;
    }
  }
  return RealField(grid, std::move(s));
}

std::string InitSpec::render() const {
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const InitTerm& t = terms[i];
    const bool neg = std::signbit(t.amp);
    if (i == 0) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    const double mag = std::abs(t.amp);
    if (t.kind == InitTerm::Kind::Const) {
      out += fmt17(mag);
    } else {
      out += t.kind == InitTerm::Kind::Cos ? "cos(" : "sin(";
      out += std::to_string(t.k) + ", " + fmt17(mag) + ", " + fmt17(t.phase) +
             ")";
    }
  }
  return out;
}

}  // namespace muhs
