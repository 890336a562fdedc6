#ifndef VHRD_EXPRESSION_HPP
#define VHRD_EXPRESSION_HPP

#include <functional>
#include <string>

namespace vhrd {

// Compiles a small arithmetic expression over the variables x and t into an
// evaluable function. Grammar:
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := ('+' | '-') unary | power
//   power  := atom ('^' unary)?
//   atom   := number | 'x' | 't' | 'pi' | 'cos' '(' expr ')'
//           | 'sin' '(' expr ')' | '(' expr ')'
//
// Numbers use the usual decimal/scientific notation. Throws ConfigError on a
// malformed expression.
std::function<double(double, double)> compile_expression(const std::string& text);

}  // namespace vhrd

#endif
