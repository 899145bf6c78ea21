#pragma once

#include <string>
#include <vector>

#include "igusa/cli/document.hpp"

namespace igusa::cli {

struct Token {
  enum class Kind { Ident, Number, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  Loc loc;
  bool is(const std::string& s) const { return (kind == Kind::Punct || kind == Kind::Ident) && text == s; }
};

// '#' starts a comment running to the end of the line.
std::vector<Token> lex(const std::string& text);

}  // namespace igusa::cli
