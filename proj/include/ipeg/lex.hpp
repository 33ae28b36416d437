#pragma once

#include <set>
#include <string>
#include <vector>

#include "ipeg/rel.hpp"

namespace ipeg {

/// One input token: a terminal name and the 0-based column of its
/// first character.
struct Token {
  std::string name;
  Col col = 0;
  bool operator==(const Token& o) const = default;
};

enum class InputFormat {
  Raw,        // whitespace-separated words, columns from layout
  Annotated,  // `name@col` items, columns taken literally
};

/// Raw mode: splits on whitespace, column = offset within the line;
/// every word must be a known terminal.  Annotated mode: each
/// whitespace-separated item is `name@col`.  Throws SyntaxError on
/// unknown tokens or malformed annotations.
std::vector<Token> lex(const std::string& text,
                       const std::set<std::string>& terminals,
                       InputFormat format);

}  // namespace ipeg
