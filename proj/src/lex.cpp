#include "ipeg/lex.hpp"

#include <cctype>

#include "ipeg/errors.hpp"

namespace ipeg {

std::vector<Token> lex(const std::string& text,
                       const std::set<std::string>& terminals,
                       InputFormat format) {
  std::vector<Token> out;
  std::size_t line = 1, col = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      col = 0;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
      continue;
    }
    const std::size_t startCol = col;
    std::string word;
    while (i < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[i]))) {
      word += text[i];
      ++i;
      ++col;
    }
    if (format == InputFormat::Raw) {
      if (!terminals.count(word))
        throw SyntaxError("unknown token '" + word + "'", line, startCol + 1);
      out.push_back(Token{word, static_cast<Col>(startCol)});
    } else {
      const std::size_t at = word.rfind('@');
      if (at == std::string::npos || at == 0 || at + 1 >= word.size())
        throw SyntaxError("malformed annotation '" + word +
                              "' (expected name@col)",
                          line, startCol + 1);
      const std::string name = word.substr(0, at);
      const std::string num = word.substr(at + 1);
      Col column = 0;
      for (const char d : num) {
        if (!std::isdigit(static_cast<unsigned char>(d)))
          throw SyntaxError("malformed annotation '" + word + "'", line,
                            startCol + 1);
        column = column * 10 + static_cast<Col>(d - '0');
      }
      out.push_back(Token{name, column});
    }
  }
  return out;
}

}  // namespace ipeg
