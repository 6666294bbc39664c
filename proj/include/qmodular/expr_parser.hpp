#pragma once

#include <string_view>

#include "qmodular/form_expr.hpp"

namespace qmodular {

/// Parse the expression language:
///
///   expr   := ('+'|'-')? term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := atom ('^' uint)?
///   atom   := rational | '(' expr ')' | Delta(N) | E(W,N,s) | wp(a,b,m)
///           | wpt(a,b,m) | eta(m[:e], ...) | E4 | E6 | E8 | E10 | E12
///           | Eis(k,m) | Phi(N) | twist(expr)
///
/// A bare rational leading a term with further factors is that term's
/// coefficient.  Throws SyntaxError (with byte offset) or WeightMismatch.
FormExpr parse_expr(std::string_view src);

}  // namespace qmodular
