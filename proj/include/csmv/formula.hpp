#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "csmv/errors.hpp"

namespace csmv {

using Symbol = std::string;
using SymbolSet = std::set<Symbol>;

// Partial truth assignment; symbols it does not mention stay unconstrained.
using Assignment = std::map<Symbol, bool>;

inline constexpr std::size_t kDefaultAtomCap = 20;

// Boolean guard over symbol atoms. '!' negates, '*' is Boolean product, '+' is
// Boolean sum; precedence in that order, '0'/'1' are the constants. Values are
// immutable once built and all operations on them are pure. Construction goes
// through the factories, which constant-fold and flatten nested products/sums,
// so `a*1` and `a` build the same tree; nothing beyond constant folding is
// ever applied (no minimization, no double-negation elimination).
class Formula {
 public:
  enum class Kind { False, True, Atom, Not, And, Or };

  Formula() = default;  // the constant 0

  static Formula constant(bool value);
  static Formula atom(Symbol name);
  static Formula negation(Formula operand);
  static Formula conjunction(std::vector<Formula> operands);
  static Formula disjunction(std::vector<Formula> operands);

  Kind kind() const { return kind_; }
  bool is_true() const { return kind_ == Kind::True; }
  bool is_false() const { return kind_ == Kind::False; }

  // Valid for Atom nodes only.
  const Symbol& atom_name() const { return atom_; }
  // Valid for Not (one operand), And and Or (two or more after folding).
  const std::vector<Formula>& operands() const { return operands_; }

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  static Formula nary(Kind kind, std::vector<Formula> operands);

  Kind kind_ = Kind::False;
  Symbol atom_;
  std::vector<Formula> operands_;
};

// Grammar: sum := product ('+' product)*, product := unary ('*' unary)*,
// unary := '!' unary | '0' | '1' | atom | '(' sum ')'. Atoms are C-style
// identifiers. Throws FormulaParseError on malformed or empty input.
Formula parse_formula(std::string_view text);

// Deterministic text form that parses back to an equivalent formula; emits
// parentheses only where precedence demands them.
std::string render_formula(const Formula& f);

SymbolSet atoms(const Formula& f);

// Atoms absent from `present` are false: presence in the broadcast set is truth.
bool eval(const Formula& f, const SymbolSet& present);

// Replaces assigned atoms by constants and folds. Never introduces atoms; the
// result's atoms are a subset of atoms(f) minus the assigned ones.
Formula restrict(const Formula& f, const Assignment& partial);

// Exhaustive enumeration over the formula's atoms; throws AtomCapError when
// the formula mentions more than `atom_cap` atoms.
bool is_satisfiable(const Formula& f, std::size_t atom_cap = kDefaultAtomCap);
bool is_tautology(const Formula& f, std::size_t atom_cap = kDefaultAtomCap);

// Truth-table equality over the union of both formulas' atoms.
bool equivalent(const Formula& a, const Formula& b,
                std::size_t atom_cap = kDefaultAtomCap);

// Product of all guards; the empty product is 1.
Formula conjoin(const std::vector<Formula>& fs);

}  // namespace csmv
