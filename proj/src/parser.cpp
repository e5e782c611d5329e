#include <cctype>
#include <string>
#include <vector>

#include "ilb/error.hpp"
#include "ilb/formula.hpp"

namespace ilb {

namespace {

enum class Tok {
  End, LParen, RParen, Not, Box, Dia, And, Or, Imp, Iff, Rhd, Equiv,
  Ident, False, True
};

struct Token {
  Tok kind;
  std::string text;
  int pos;  // 1-based character position
};

[[noreturn]] void fail(int pos, const std::string& what) {
  throw Error(Error::Kind::Parse, "parse error at " + std::to_string(pos) + ": " + what);
}

bool ident_head(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_tail(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    const int pos = static_cast<int>(i) + 1;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    switch (c) {
      case '(': out.push_back({Tok::LParen, "(", pos}); ++i; continue;
      case ')': out.push_back({Tok::RParen, ")", pos}); ++i; continue;
      case '~': out.push_back({Tok::Not, "~", pos}); ++i; continue;
      case '&': out.push_back({Tok::And, "&", pos}); ++i; continue;
      case '[':
        if (i + 1 < text.size() && text[i + 1] == ']') {
          out.push_back({Tok::Box, "[]", pos});
          i += 2;
          continue;
        }
        fail(pos, "expected \"[]\"");
      case '<':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          out.push_back({Tok::Dia, "<>", pos});
          i += 2;
          continue;
        }
        if (i + 2 < text.size() && text[i + 1] == '-' && text[i + 2] == '>') {
          out.push_back({Tok::Iff, "<->", pos});
          i += 3;
          continue;
        }
        fail(pos, "expected \"<>\" or \"<->\"");
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          out.push_back({Tok::Imp, "->", pos});
          i += 2;
          continue;
        }
        fail(pos, "expected \"->\"");
      case '|':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          out.push_back({Tok::Rhd, "|>", pos});
          i += 2;
          continue;
        }
        out.push_back({Tok::Or, "|", pos});
        ++i;
        continue;
      case '=':
        if (i + 1 < text.size() && text[i + 1] == '=') {
          out.push_back({Tok::Equiv, "==", pos});
          i += 2;
          continue;
        }
        fail(pos, "expected \"==\"");
      default:
        break;
    }
    if (c == '#' || ident_head(c)) {
      std::size_t j = i;
      if (c == '#') {
        ++j;
        if (j >= text.size() || !ident_head(text[j]))
          fail(pos, "'#' must be followed by an identifier");
      }
      ++j;
      while (j < text.size() && ident_tail(text[j])) ++j;
      std::string name(text.substr(i, j - i));
      if (name == "false")
        out.push_back({Tok::False, name, pos});
      else if (name == "true")
        out.push_back({Tok::True, name, pos});
      else
        out.push_back({Tok::Ident, name, pos});
      i = j;
      continue;
    }
    fail(pos, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", static_cast<int>(text.size()) + 1});
  return out;
}

class Parser {
public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula run() {
    Formula f = parse_iff();
    if (!at(Tok::End)) fail(cur().pos, "unexpected \"" + cur().text + "\"");
    return f;
  }

private:
  const Token& cur() const { return toks_[idx_]; }
  bool at(Tok k) const { return cur().kind == k; }
  Token eat() { return toks_[idx_++]; }

  Formula parse_iff() {
    Formula l = parse_imp();
    if (at(Tok::Iff)) {
      eat();
      return Formula::iff(l, parse_iff());
    }
    return l;
  }

  Formula parse_imp() {
    Formula l = parse_rhd();
    if (at(Tok::Imp)) {
      eat();
      return Formula::imp(l, parse_imp());
    }
    return l;
  }

  Formula parse_rhd() {
    Formula l = parse_or();
    if (at(Tok::Rhd) || at(Tok::Equiv)) {
      const bool equiv = at(Tok::Equiv);
      eat();
      Formula r = parse_or();
      if (at(Tok::Rhd) || at(Tok::Equiv))
        fail(cur().pos, "chained |>/== needs parentheses (non-associative)");
      return equiv ? Formula::equiv(l, r) : Formula::rhd(l, r);
    }
    return l;
  }

  Formula parse_or() {
    Formula l = parse_and();
    while (at(Tok::Or)) {
      eat();
      l = Formula::disj(l, parse_and());
    }
    return l;
  }

  Formula parse_and() {
    Formula l = parse_unary();
    while (at(Tok::And)) {
      eat();
      l = Formula::conj(l, parse_unary());
    }
    return l;
  }

  Formula parse_unary() {
    switch (cur().kind) {
      case Tok::Not: eat(); return Formula::neg(parse_unary());
      case Tok::Box: eat(); return Formula::box(parse_unary());
      case Tok::Dia: eat(); return Formula::dia(parse_unary());
      default: return parse_atom();
    }
  }

  Formula parse_atom() {
    switch (cur().kind) {
      case Tok::False: eat(); return Formula::bot();
      case Tok::True: eat(); return Formula::top();
      case Tok::Ident: return Formula::var(eat().text);
      case Tok::LParen: {
        const Token open = eat();
        Formula f = parse_iff();
        if (!at(Tok::RParen)) fail(open.pos, "unbalanced parenthesis");
        eat();
        return f;
      }
      case Tok::End: fail(cur().pos, "unexpected end of input");
      default: fail(cur().pos, "unexpected \"" + cur().text + "\"");
    }
  }

  std::vector<Token> toks_;
  std::size_t idx_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(lex(text)).run(); }

}  // namespace ilb
