#pragma once

#include <string_view>

#include "stlguard/formula.hpp"

namespace stlguard::stl {

/// Parses the textual formula language:
///
///   formula := "G" win? formula | "F" win? formula | formula "U" win formula
///            | "!" formula | formula "&" formula | formula "|" formula
///            | "(" formula ")" | "true" | "false" | pred
///   win     := "[" int "," int "]"
///   pred    := linexpr rel number     linexpr := term ("+" term)*
///   term    := number "*" ident | ident     rel := ">=" | ">" | "<=" | "<"
///
/// Binding strength, tightest first: `!`, temporal prefixes, `&`, `|`, `U`.
/// `&`, `|` and `U` associate to the left.
///
/// Throws ParseError carrying the 1-based line and column of the offending token.
Formula parse_formula(std::string_view text);

}  // namespace stlguard::stl
