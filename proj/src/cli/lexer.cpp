#include "lexer.hpp"

#include <cctype>

namespace igusa::cli {

ParseError::ParseError(Loc l, std::vector<std::string> exp, std::string f, const std::string& msg)
    : std::runtime_error([&] {
        std::string s = "line " + std::to_string(l.line) + ", column " + std::to_string(l.col) + ": ";
        if (!msg.empty()) return s + msg;
        s += "expected ";
        for (size_t i = 0; i < exp.size(); ++i) s += (i ? (i + 1 == exp.size() ? " or " : ", ") : "") + exp[i];
        return s + ", found " + f;
      }()),
      loc(l),
      expected(std::move(exp)),
      found(std::move(f)) {}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  Loc loc;
  size_t i = 0;
  auto advance = [&](size_t k) {
    for (size_t j = 0; j < k; ++j, ++i) {
      if (text[i] == '\n') {
        ++loc.line;
        loc.col = 1;
      } else {
        ++loc.col;
      }
    }
  };
  static const std::vector<std::string> two = {">=", "<=", "==", "!="};
  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.loc = loc;
    if (std::isalpha(c) || c == '_') {
      size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      t.kind = Token::Kind::Ident;
      t.text = text.substr(i, j - i);
      advance(t.text.size());
    } else if (std::isdigit(c)) {
      size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      t.kind = Token::Kind::Number;
      t.text = text.substr(i, j - i);
      advance(j - i);
    } else {
      t.kind = Token::Kind::Punct;
      std::string two_c = text.substr(i, 2);
      bool matched = false;
      for (const auto& s : two)
        if (two_c == s) {
          t.text = s;
          matched = true;
        }
      if (!matched) {
        static const std::string single = "{}()[];:,.*+-/^><=!";
        if (single.find(static_cast<char>(c)) == std::string::npos)
          throw ParseError(loc, {}, "", std::string("unexpected character '") + static_cast<char>(c) + "'");
        t.text = std::string(1, static_cast<char>(c));
      }
      advance(t.text.size());
    }
    out.push_back(t);
  }
  Token end;
  end.loc = loc;
  out.push_back(end);
  return out;
}

}  // namespace igusa::cli
