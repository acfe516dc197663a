#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "strsat/ast.hpp"
#include "strsat/cnf.hpp"

namespace strsat {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class DirectiveKind { SetAlphabet, SetMaxLen, DeclareStr, Assert, CheckSat, GetModel };

struct Directive {
  DirectiveKind kind;
  std::size_t line = 0;
};

struct StrfDocument {
  std::vector<Directive> directives;

  bool has(DirectiveKind kind) const;
};

struct StrfProgram {
  StrfDocument document;
  Formula formula;
  SolverConfig config;
};

/// Parses a `.strf` document. Defaults: alphabet "ab", maximum length 8.
/// Throws ParseError with the offending line number.
StrfProgram parse_strf(std::string_view text);

/// Writes alphabet, maximum length, declarations and one assert per literal.
std::string print_strf(const Formula& f, const SolverConfig& cfg);

/// `(define-str <name> "<value>")` per entry, in assignment order.
std::string write_model(const Assignment& a);

/// Reads back `define-str` lines; `sat`/`unsat` and `;` comment lines are skipped.
Assignment parse_model(std::string_view text);

CnfInstance parse_dimacs(std::string_view text);
std::string write_dimacs(const CnfInstance& cnf);

}  // namespace strsat
