#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "muhs/field.hpp"

namespace muhs {

/// One summand of an initial-condition expression: a constant, or
/// amp * cos(2 pi k x + phase) / amp * sin(2 pi k x + phase).
struct InitTerm {
  enum class Kind { Const, Cos, Sin };
  Kind kind = Kind::Const;
  int k = 0;
  double amp = 0.0;
  double phase = 0.0;

  bool operator==(const InitTerm&) const = default;
};

/// Parsed initial-condition mini-expression.  Grammar:
///   spec := ['+'|'-'] term { ('+'|'-') term }
///   term := NUMBER | [NUMBER '*'] ('cos('|'sin(') INT [',' NUMBER
///           [',' NUMBER]] ')'
/// cos(k, amp, phase) means amp*cos(2 pi k x + phase) with defaults amp = 1,
/// phase = 0; whitespace is insignificant; the literal token 4pi2 denotes
/// 4*pi^2 exactly.
struct InitSpec {
  std::string source;
  std::vector<InitTerm> terms;

  RealField build(PeriodicGrid grid) const;
  /// Canonical text that re-parses to an identical term list.
  std::string render() const;
};

/// Throws ParseError (with byte offset and expected-token message) on
/// malformed input.
InitSpec parse_init(std::string_view text);

}  // namespace muhs
