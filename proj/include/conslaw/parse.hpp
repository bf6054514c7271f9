#pragma once

#include <string_view>

#include "conslaw/expr.hpp"

namespace conslaw {

class SymbolTable;

// Parses the expression grammar, resolving identifiers against symbols.
// Throws ParseError carrying the byte offset of the offending token.
Expr parse(std::string_view text, const SymbolTable& symbols);

}  // namespace conslaw
