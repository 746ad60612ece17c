#pragma once

#include <string_view>

#include "coexpand/expr.hpp"

namespace coexpand {

struct ParseOptions {
  /// Accept `glue(l, r)` / `glue(l, r, arg)` terms.  Only for re-reading
  /// trees that were printed by `format`; user text never enables this.
  bool allow_glue = false;
};

/// Recursive-descent parser for
///
///   expr    := term (("+"|"-") term)*
///   term    := factor (("*"|"/") factor)*
///   factor  := ("-")? base ("^" integer)?
///   base    := number | "x" | ident "(" expr ")" | "(" expr ")"
///
/// A minus sign directly in front of a numeric literal that is not raised
/// to a power folds into a negative Constant.  Throws ParseError.
FunctionExpr parse(std::string_view text, const ParseOptions& options = {});

}  // namespace coexpand
