#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "dioph/qalg/error.hpp"
#include "dioph/qalg/ratfunc.hpp"

namespace dioph::qalg {

class ParseError : public Error {
 public:
  ParseError(std::string input, std::size_t position, const std::string& message)
      : Error(message), input_(std::move(input)), position_(position) {}

  std::size_t position() const { return position_; }
  const std::string& input() const { return input_; }

  /// Two-line diagnostic: the input, then a caret under the offending column.
  std::string caret() const;

 private:
  std::string input_;
  std::size_t position_;
};

/// Parses the expression grammar shared by every CLI flag:
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary | primary)*     juxtaposition multiplies
///   unary   := ('+' | '-') unary | power
///   power   := primary ('^' ['-'] integer)?
///   primary := integer | 't' | 'z' | '(' expr ')'
///
/// Whitespace is insignificant; `p/q` literals are ordinary division.
RatFunc parse_ratfunc(std::string_view text);

}  // namespace dioph::qalg
