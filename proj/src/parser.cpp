#include <cctype>
#include <optional>
#include <string>

#include "qdom/error.hpp"
#include "qdom/qwhile.hpp"

namespace qdom {

namespace {

enum class Tok { Ident, Int, LParen, RParen, LBrace, RBrace, Comma, Semi, EqEq, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t col;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space_and_comments();
    const std::size_t line = line_;
    const std::size_t col = col_;
    if (pos_ >= src_.size()) return {Tok::End, "end of input", line, col};
    const char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        word += advance();
      }
      return {Tok::Ident, word, line, col};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) num += advance();
      return {Tok::Int, num, line, col};
    }
    advance();
    switch (c) {
      case '(': return {Tok::LParen, "'('", line, col};
      case ')': return {Tok::RParen, "')'", line, col};
      case '{': return {Tok::LBrace, "'{'", line, col};
      case '}': return {Tok::RBrace, "'}'", line, col};
      case ',': return {Tok::Comma, "','", line, col};
      case ';': return {Tok::Semi, "';'", line, col};
      case '=':
        if (pos_ < src_.size() && src_[pos_] == '=') {
          advance();
          return {Tok::EqEq, "'=='", line, col};
        }
        break;
      default: break;
    }
    throw SyntaxError(line, col, "a token", "'" + std::string(1, c) + "'");
  }

 private:
  char advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { cur_ = lex_.next(); }

  Program program() {
    std::optional<std::size_t> declared;
    if (cur_.kind == Tok::Ident && cur_.text == "qubits") {
      take();
      const Token n = expect(Tok::Int, "qubit count");
      const std::size_t count = std::stoul(n.text);
      if (count == 0 || count > kMaxQubits) {
        throw SyntaxError(n.line, n.col, "qubit count in 1.." + std::to_string(kMaxQubits), n.text);
      }
      declared = count;
      expect(Tok::Semi, "';'");
    }
    limit_ = declared.value_or(kMaxQubits);
    StmtPtr body = stmt();
    if (cur_.kind != Tok::End) throw error("';' or end of input");
    const std::size_t used = std::max<std::size_t>(qubits_used(*body), 1);
    return Program{declared.value_or(used), std::move(body)};
  }

 private:
  Token take() {
    Token t = cur_;
    cur_ = lex_.next();
    return t;
  }

  SyntaxError error(const std::string& expected) const {
    return SyntaxError(cur_.line, cur_.col, expected,
                       cur_.kind == Tok::Ident || cur_.kind == Tok::Int ? "'" + cur_.text + "'"
                                                                         : cur_.text);
  }

  Token expect(Tok kind, const std::string& what) {
    if (cur_.kind != kind) throw error(what);
    return take();
  }

  void expect_keyword(const char* kw) {
    if (cur_.kind != Tok::Ident || cur_.text != kw) throw error(std::string("'") + kw + "'");
    take();
  }

  std::size_t qubit() {
    if (cur_.kind != Tok::Ident || cur_.text.size() < 2 || cur_.text[0] != 'q' ||
        cur_.text.find_first_not_of("0123456789", 1) != std::string::npos) {
      throw error("qubit (q<index>)");
    }
    const std::size_t q = std::stoul(cur_.text.substr(1));
    if (q >= limit_) throw error("qubit index below " + std::to_string(limit_));
    take();
    return q;
  }

  Cond cond() {
    const std::size_t q = qubit();
    expect(Tok::EqEq, "'=='");
    if (cur_.kind != Tok::Int || (cur_.text != "0" && cur_.text != "1")) throw error("0 or 1");
    const int v = take().text == "1" ? 1 : 0;
    return Cond{q, v};
  }

  StmtPtr block() {
    expect(Tok::LBrace, "'{'");
    StmtPtr s = stmt();
    expect(Tok::RBrace, "'}'");
    return s;
  }

  StmtPtr stmt() {
    StmtPtr s = simple();
    while (cur_.kind == Tok::Semi) {
      take();
      s = build::seq(std::move(s), simple());
    }
    return s;
  }

  StmtPtr simple() {
    if (cur_.kind != Tok::Ident) throw error("statement");
    const Token head = cur_;
    if (head.text == "skip") {
      take();
      return build::skip();
    }
    if (head.text == "apply") {
      take();
      if (cur_.kind != Tok::Ident) throw error("gate name");
      const Token name = cur_;
      const Gate* g = nullptr;
      try {
        g = &gate_by_name(name.text);
      } catch (const Error&) {
        throw error("gate H, X, P, T or CNOT");
      }
      take();
      expect(Tok::LParen, "'('");
      std::vector<std::size_t> targets{qubit()};
      while (cur_.kind == Tok::Comma) {
        take();
        targets.push_back(qubit());
      }
      const Token close = cur_;
      expect(Tok::RParen, "')'");
      if (targets.size() != g->arity()) {
        throw SyntaxError(name.line, name.col,
                          std::to_string(g->arity()) + " target(s) for " + name.text,
                          std::to_string(targets.size()));
      }
      if (targets.size() == 2 && targets[0] == targets[1]) {
        throw SyntaxError(close.line, close.col, "distinct targets", "repeated qubit");
      }
      return build::apply(g->kind, std::move(targets));
    }
    if (head.text == "meas") {
      take();
      expect(Tok::LParen, "'('");
      const std::size_t q = qubit();
      expect(Tok::RParen, "')'");
      return build::measure(q);
    }
    if (head.text == "if") {
      take();
      const Cond c = cond();
      expect_keyword("then");
      StmtPtr t = block();
      expect_keyword("else");
      StmtPtr e = block();
      return build::if_(c, std::move(t), std::move(e));
    }
    if (head.text == "while") {
      take();
      const Cond c = cond();
      expect_keyword("do");
      return build::while_(c, block());
    }
    throw error("statement");
  }

  Lexer lex_;
  Token cur_;
  std::size_t limit_ = kMaxQubits;
};

}  // namespace

Program parse(std::string_view src) { return Parser(src).program(); }

}  // namespace qdom
