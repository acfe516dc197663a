#include "strsat/textio.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "strsat/strcore.hpp"

namespace strsat {

bool StrfDocument::has(DirectiveKind kind) const {
  for (const auto& d : directives)
    if (d.kind == kind) return true;
  return false;
}

namespace {

struct Token {
  enum class Kind { LParen, RParen, String, Symbol, End };
  Kind kind = Kind::End;
  std::string text;
  std::size_t line = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_blank();
    Token tok;
    tok.line = line_;
    if (pos_ >= text_.size()) return tok;
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      tok.kind = Token::Kind::LParen;
    } else if (c == ')') {
      ++pos_;
      tok.kind = Token::Kind::RParen;
    } else if (c == '"') {
      ++pos_;
      tok.kind = Token::Kind::String;
      for (;;) {
        if (pos_ >= text_.size()) throw ParseError(tok.line, "unterminated string literal");
        char d = text_[pos_++];
        if (d == '"') break;
        if (d == '\n') ++line_;
        if (d == '\\') {
          if (pos_ >= text_.size()) throw ParseError(tok.line, "unterminated string literal");
          d = text_[pos_++];
          if (d != '"' && d != '\\') throw ParseError(line_, "unknown escape sequence");
        }
        tok.text += d;
      }
    } else {
      tok.kind = Token::Kind::Symbol;
      while (pos_ < text_.size()) {
        char d = text_[pos_];
        if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == '"' || d == ';') break;
        tok.text += d;
        ++pos_;
      }
    }
    return tok;
  }

 private:
  void skip_blank() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  unsigned char c0 = static_cast<unsigned char>(s[0]);
  if (!std::isalpha(c0) && s[0] != '_') return false;
  for (char c : s) {
    unsigned char u = static_cast<unsigned char>(c);
    if (!std::isalnum(u) && c != '_' && c != '-' && c != '.' && c != '\'') return false;
  }
  return s != "true" && s != "false";
}

class StrfParser {
 public:
  explicit StrfParser(std::string_view text) : lexer_(text) { advance(); }

  StrfProgram run() {
    std::vector<BoolExpr> asserts;
    while (tok_.kind != Token::Kind::End) statement(asserts);
    program_.formula = normalize(BoolExpr::conj(std::move(asserts)));
    return std::move(program_);
  }

 private:
  void advance() { tok_ = lexer_.next(); }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(tok_.line, message); }

  void expect(Token::Kind kind, const char* what) {
    if (tok_.kind != kind) fail(std::string("expected ") + what);
    advance();
  }

  std::string symbol(const char* what) {
    if (tok_.kind != Token::Kind::Symbol) fail(std::string("expected ") + what);
    std::string s = tok_.text;
    advance();
    return s;
  }

  std::size_t nat() {
    if (tok_.kind != Token::Kind::Symbol) fail("expected a natural number");
    const std::string& s = tok_.text;
    std::size_t value = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || end != s.data() + s.size() || s.empty() || s[0] == '-' || s[0] == '+')
      fail("expected a natural number, got '" + s + "'");
    advance();
    return value;
  }

  std::string string_literal() {
    if (tok_.kind != Token::Kind::String) fail("expected a string literal");
    std::string s = tok_.text;
    advance();
    return s;
  }

  void statement(std::vector<BoolExpr>& asserts) {
    expect(Token::Kind::LParen, "'('");
    std::size_t line = tok_.line;
    std::string head = symbol("a directive");
    auto& cfg = program_.config;
    DirectiveKind kind;
    if (head == "set-alphabet") {
      kind = DirectiveKind::SetAlphabet;
      if (program_.document.has(kind)) fail("duplicate set-alphabet");
      if (body_started_) fail("set-alphabet must precede declarations and assertions");
      std::string chars = string_literal();
      try {
        cfg.alphabet = Alphabet(chars);
      } catch (const std::invalid_argument& e) {
        throw ParseError(line, e.what());
      }
    } else if (head == "set-max-len") {
      kind = DirectiveKind::SetMaxLen;
      if (program_.document.has(kind)) fail("duplicate set-max-len");
      if (body_started_) fail("set-max-len must precede declarations and assertions");
      cfg.l_max = nat();
    } else if (head == "declare-str") {
      kind = DirectiveKind::DeclareStr;
      body_started_ = true;
      std::string name = symbol("a variable name");
      if (!is_identifier(name)) throw ParseError(line, "invalid variable name '" + name + "'");
      std::optional<std::size_t> bound;
      if (tok_.kind == Token::Kind::Symbol) bound = nat();
      if (cfg.find(name)) throw ParseError(line, "duplicate declaration of '" + name + "'");
      if (bound && *bound > cfg.l_max)
        throw ParseError(line, "bound of '" + name + "' exceeds the maximum length");
      cfg.declare(name, bound);
    } else if (head == "assert") {
      kind = DirectiveKind::Assert;
      body_started_ = true;
      asserts.push_back(bexpr());
    } else if (head == "check-sat") {
      kind = DirectiveKind::CheckSat;
    } else if (head == "get-model") {
      kind = DirectiveKind::GetModel;
    } else {
      throw ParseError(line, "unknown directive '" + head + "'");
    }
    expect(Token::Kind::RParen, "')'");
    program_.document.directives.push_back({kind, line});
  }

  BoolExpr bexpr() {
    if (tok_.kind == Token::Kind::Symbol) {
      std::string s = symbol("a boolean expression");
      if (s == "true") return BoolExpr::truth();
      if (s == "false") return BoolExpr::falsity();
      fail("expected a boolean expression, got '" + s + "'");
    }
    expect(Token::Kind::LParen, "a boolean expression");
    std::size_t line = tok_.line;
    std::string head = symbol("a predicate");
    BoolExpr out;
    if (head == "not") {
      out = BoolExpr::negate(bexpr());
    } else if (head == "=") {
      Term a = term();
      Term b = term();
      out = BoolExpr::of(Atom::eq(std::move(a), std::move(b)));
    } else if (head == "contains") {
      Term a = term();
      Term b = term();
      out = BoolExpr::of(Atom::contains(std::move(a), std::move(b)));
    } else if (head == "contains-at") {
      Term a = term();
      std::size_t pos = nat();
      if (pos < 1) throw ParseError(line, "index must be ≥ 1");
      Term b = term();
      out = BoolExpr::of(Atom::contains_at(std::move(a), pos, std::move(b)));
    } else {
      throw ParseError(line, "unknown predicate '" + head + "'");
    }
    expect(Token::Kind::RParen, "')'");
    return out;
  }

  Term term() {
    if (tok_.kind == Token::Kind::String) {
      std::size_t line = tok_.line;
      std::string value = string_literal();
      for (char c : value)
        if (!program_.config.alphabet.contains(c))
          throw ParseError(line, std::string("character '") + c + "' not in alphabet");
      return Term::constant(std::move(value));
    }
    if (tok_.kind == Token::Kind::Symbol) {
      std::size_t line = tok_.line;
      std::string name = symbol("a term");
      if (!is_identifier(name)) throw ParseError(line, "expected a term, got '" + name + "'");
      if (!program_.config.find(name)) throw ParseError(line, "undeclared variable '" + name + "'");
      return Term::var(std::move(name));
    }
    expect(Token::Kind::LParen, "a term");
    std::size_t line = tok_.line;
    std::string head = symbol("a function");
    Term out;
    if (head == "concat") {
      Term a = term();
      Term b = term();
      out = Term::concat(std::move(a), std::move(b));
    } else if (head == "extract") {
      Term base = term();
      std::size_t i = nat();
      std::size_t j = nat();
      if (i < 1) throw ParseError(line, "extract start must be ≥ 1");
      if (i > j) throw ParseError(line, "extract start must not exceed its end");
      out = Term::extract(std::move(base), i, j);
    } else {
      throw ParseError(line, "unknown function '" + head + "'");
    }
    expect(Token::Kind::RParen, "')'");
    return out;
  }

  Lexer lexer_;
  Token tok_;
  StrfProgram program_;
  bool body_started_ = false;
};

}  // namespace

StrfProgram parse_strf(std::string_view text) { return StrfParser(text).run(); }

std::string print_strf(const Formula& f, const SolverConfig& cfg) {
  std::ostringstream out;
  out << "(set-alphabet " << quote(cfg.alphabet.chars()) << ")\n";
  out << "(set-max-len " << cfg.l_max << ")\n";
  for (const auto& v : cfg.vars) {
    out << "(declare-str " << v.name;
    if (v.bound) out << ' ' << *v.bound;
    out << ")\n";
  }
  for (const auto& name : variables_of(f))
    if (!cfg.find(name)) out << "(declare-str " << name << ")\n";
  if (f.is_false) out << "(assert false)\n";
  for (const auto& lit : f.literals) out << "(assert " << lit.key() << ")\n";
  return out.str();
}

std::string write_model(const Assignment& a) {
  std::string out;
  for (const auto& [name, value] : a.entries()) out += "(define-str " + name + " " + quote(value) + ")\n";
  return out;
}

Assignment parse_model(std::string_view text) {
  Lexer lexer(text);
  Assignment a;
  for (Token tok = lexer.next(); tok.kind != Token::Kind::End; tok = lexer.next()) {
    if (tok.kind == Token::Kind::Symbol && (tok.text == "sat" || tok.text == "unsat")) continue;
    if (tok.kind != Token::Kind::LParen) throw ParseError(tok.line, "expected '(define-str ...)'");
    Token head = lexer.next();
    Token name = lexer.next();
    Token value = lexer.next();
    Token close = lexer.next();
    if (head.kind != Token::Kind::Symbol || head.text != "define-str" || name.kind != Token::Kind::Symbol ||
        value.kind != Token::Kind::String || close.kind != Token::Kind::RParen)
      throw ParseError(tok.line, "malformed define-str");
    a.set(name.text, value.text);
  }
  return a;
}

CnfInstance parse_dimacs(std::string_view text) {
  CnfInstance cnf;
  bool header = false;
  std::vector<int> clause;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    char c = line[first];
    if (c == 'c') continue;
    if (c == '%') break;
    std::istringstream fields(line.substr(first));
    if (c == 'p') {
      if (header) throw ParseError(line_no, "duplicate problem line");
      std::string p;
      std::string fmt;
      long long n = -1;
      long long m = -1;
      fields >> p >> fmt >> n >> m;
      if (fields.fail() || p != "p" || fmt != "cnf" || n < 0 || m < 0)
        throw ParseError(line_no, "malformed problem line");
      cnf.num_vars = static_cast<int>(n);
      header = true;
      continue;
    }
    if (!header) throw ParseError(line_no, "missing 'p cnf' header");
    std::string tok;
    while (fields >> tok) {
      int lit = 0;
      auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), lit);
      if (ec != std::errc() || end != tok.data() + tok.size())
        throw ParseError(line_no, "invalid literal '" + tok + "'");
      if (lit == 0) {
        cnf.clauses.push_back(std::move(clause));
        clause.clear();
        continue;
      }
      if (std::abs(lit) > cnf.num_vars) throw ParseError(line_no, "literal " + tok + " out of range");
      clause.push_back(lit);
    }
  }
  if (!header) throw ParseError(line_no == 0 ? 1 : line_no, "missing 'p cnf' header");
  if (!clause.empty()) throw ParseError(line_no, "unterminated clause");
  return cnf;
}

std::string write_dimacs(const CnfInstance& cnf) {
  std::string out = "p cnf " + std::to_string(cnf.num_vars) + " " + std::to_string(cnf.clauses.size()) + "\n";
  for (const auto& clause : cnf.clauses) {
    for (int lit : clause) out += std::to_string(lit) + " ";
    out += "0\n";
  }
  return out;
}

}  // namespace strsat
