#pragma once

#include <string>
#include <string_view>

#include "octoslice/stem.hpp"

namespace octoslice {

/// Parses the expression language
///
///   expr   := term (('+' | '-') term)*
///   term   := factor ('*' factor)*          '*' is the slice product
///   factor := base ('^' signed-int)?
///   base   := 'x' | literal | '[' octonion ']' | 'eta(' octonion ')'
///           | 'conj(' expr ')' | 'N(' expr ')' | 'd(' expr ')' | '(' expr ')'
///
/// where a literal is one signed coefficient term such as 2, 1i or -0.5lj,
/// and an octonion is a sum of such terms. d(...) is the slice derivative.
/// Throws SyntaxError or UnknownToken with a character span.
SliceExpr parse_expr(std::string_view text);

/// Renders an expression so that parse_expr(render_expr(e)) is structurally
/// equal to e.
std::string render_expr(const SliceExpr& e);

/// Caret line pointing at a span of `text`.
std::string caret_line(std::string_view text, std::size_t begin, std::size_t end);

}  // namespace octoslice
