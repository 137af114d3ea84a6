#include "csmv/formula.hpp"

#include <cctype>
#include <cstdint>
#include <utility>

namespace csmv {

Formula Formula::constant(bool value) {
  Formula f;
  f.kind_ = value ? Kind::True : Kind::False;
  return f;
}

Formula Formula::atom(Symbol name) {
  Formula f;
  f.kind_ = Kind::Atom;
  f.atom_ = std::move(name);
  return f;
}

Formula Formula::negation(Formula operand) {
  if (operand.is_true()) return constant(false);
  if (operand.is_false()) return constant(true);
  Formula f;
  f.kind_ = Kind::Not;
  f.operands_.push_back(std::move(operand));
  return f;
}

Formula Formula::nary(Kind kind, std::vector<Formula> operands) {
  const bool is_and = kind == Kind::And;
  std::vector<Formula> flat;
  for (auto& op : operands) {
    const bool absorbing = is_and ? op.is_false() : op.is_true();
    const bool neutral = is_and ? op.is_true() : op.is_false();
    if (absorbing) return constant(!is_and);
    if (neutral) continue;
    if (op.kind_ == kind) {
      for (auto& inner : op.operands_) flat.push_back(std::move(inner));
    } else {
      flat.push_back(std::move(op));
    }
  }
  if (flat.empty()) return constant(is_and);
  if (flat.size() == 1) return std::move(flat.front());
  Formula f;
  f.kind_ = kind;
  f.operands_ = std::move(flat);
  return f;
}

Formula Formula::conjunction(std::vector<Formula> operands) {
  return nary(Kind::And, std::move(operands));
}

Formula Formula::disjunction(std::vector<Formula> operands) {
  return nary(Kind::Or, std::move(operands));
}

namespace {

class GuardParser {
 public:
  explicit GuardParser(std::string_view text) : text_(text) {}

  Formula parse() {
    skip_space();
    if (pos_ >= text_.size()) throw FormulaParseError("empty formula", pos_);
    Formula f = parse_sum();
    skip_space();
    if (pos_ < text_.size())
      throw FormulaParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return f;
  }

 private:
  Formula parse_sum() {
    std::vector<Formula> terms;
    terms.push_back(parse_product());
    while (consume('+')) terms.push_back(parse_product());
    return Formula::disjunction(std::move(terms));
  }

  Formula parse_product() {
    std::vector<Formula> factors;
    factors.push_back(parse_unary());
    while (consume('*')) factors.push_back(parse_unary());
    return Formula::conjunction(std::move(factors));
  }

  Formula parse_unary() {
    if (consume('!')) return Formula::negation(parse_unary());
    return parse_primary();
  }

  Formula parse_primary() {
    skip_space();
    if (pos_ >= text_.size())
      throw FormulaParseError("unexpected end of formula", pos_);
    const char c = text_[pos_];
    if (c == '0') {
      ++pos_;
      return Formula::constant(false);
    }
    if (c == '1') {
      ++pos_;
      return Formula::constant(true);
    }
    if (c == '(') {
      ++pos_;
      Formula f = parse_sum();
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != ')')
        throw FormulaParseError("expected ')'", pos_);
      ++pos_;
      return f;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_'))
        ++pos_;
      return Formula::atom(std::string(text_.substr(start, pos_ - start)));
    }
    throw FormulaParseError(std::string("unexpected '") + c + "'", pos_);
  }

  bool consume(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t'))
      ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void render_into(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::False:
      out += '0';
      return;
    case Formula::Kind::True:
      out += '1';
      return;
    case Formula::Kind::Atom:
      out += f.atom_name();
      return;
    case Formula::Kind::Not: {
      out += '!';
      const Formula& inner = f.operands().front();
      const bool parens = inner.kind() == Formula::Kind::And ||
                          inner.kind() == Formula::Kind::Or;
      if (parens) out += '(';
      render_into(inner, out);
      if (parens) out += ')';
      return;
    }
    case Formula::Kind::And: {
      bool first = true;
      for (const auto& op : f.operands()) {
        if (!first) out += '*';
        first = false;
        const bool parens = op.kind() == Formula::Kind::Or;
        if (parens) out += '(';
        render_into(op, out);
        if (parens) out += ')';
      }
      return;
    }
    case Formula::Kind::Or: {
      bool first = true;
      for (const auto& op : f.operands()) {
        if (!first) out += '+';
        first = false;
        render_into(op, out);
      }
      return;
    }
  }
}

template <class LookupFn>
bool eval_under(const Formula& f, const LookupFn& lookup) {
  switch (f.kind()) {
    case Formula::Kind::False:
      return false;
    case Formula::Kind::True:
      return true;
    case Formula::Kind::Atom:
      return lookup(f.atom_name());
    case Formula::Kind::Not:
      return !eval_under(f.operands().front(), lookup);
    case Formula::Kind::And:
      for (const auto& op : f.operands())
        if (!eval_under(op, lookup)) return false;
      return true;
    case Formula::Kind::Or:
      for (const auto& op : f.operands())
        if (eval_under(op, lookup)) return true;
      return false;
  }
  return false;
}

// Row enumerator for exhaustive checks; at most 62 atoms fit in the mask, and
// the cap keeps practical use far below that.
struct TruthTable {
  std::vector<Symbol> atom_list;
  std::map<Symbol, std::size_t> index;

  TruthTable(const SymbolSet& s, std::size_t cap) {
    if (s.size() > cap || s.size() > 62) throw AtomCapError(s.size(), cap);
    atom_list.assign(s.begin(), s.end());
    for (std::size_t i = 0; i < atom_list.size(); ++i) index[atom_list[i]] = i;
  }

  bool eval_row(const Formula& f, std::uint64_t mask) const {
    return eval_under(f, [&](const Symbol& a) -> bool {
      return (mask >> index.at(a)) & 1u;
    });
  }

  std::uint64_t rows() const { return std::uint64_t{1} << atom_list.size(); }
};

}  // namespace

Formula parse_formula(std::string_view text) { return GuardParser(text).parse(); }

std::string render_formula(const Formula& f) {
  std::string out;
  render_into(f, out);
  return out;
}

namespace {
void collect_atoms(const Formula& f, SymbolSet& out) {
  if (f.kind() == Formula::Kind::Atom) {
    out.insert(f.atom_name());
    return;
  }
  for (const auto& op : f.operands()) collect_atoms(op, out);
}
}  // namespace

SymbolSet atoms(const Formula& f) {
  SymbolSet out;
  collect_atoms(f, out);
  return out;
}

bool eval(const Formula& f, const SymbolSet& present) {
  return eval_under(f, [&](const Symbol& a) { return present.count(a) > 0; });
}

Formula restrict(const Formula& f, const Assignment& partial) {
  switch (f.kind()) {
    case Formula::Kind::False:
    case Formula::Kind::True:
      return f;
    case Formula::Kind::Atom: {
      auto it = partial.find(f.atom_name());
      if (it == partial.end()) return f;
      return Formula::constant(it->second);
    }
    case Formula::Kind::Not:
      return Formula::negation(restrict(f.operands().front(), partial));
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<Formula> ops;
      ops.reserve(f.operands().size());
      for (const auto& op : f.operands()) ops.push_back(restrict(op, partial));
      return f.kind() == Formula::Kind::And
                 ? Formula::conjunction(std::move(ops))
                 : Formula::disjunction(std::move(ops));
    }
  }
  return f;
}

bool is_satisfiable(const Formula& f, std::size_t atom_cap) {
  if (f.is_false()) return false;
  if (f.is_true()) return true;
  TruthTable table(atoms(f), atom_cap);
  for (std::uint64_t m = 0; m < table.rows(); ++m)
    if (table.eval_row(f, m)) return true;
  return false;
}

bool is_tautology(const Formula& f, std::size_t atom_cap) {
  if (f.is_false()) return false;
  if (f.is_true()) return true;
  TruthTable table(atoms(f), atom_cap);
  for (std::uint64_t m = 0; m < table.rows(); ++m)
    if (!table.eval_row(f, m)) return false;
  return true;
}

bool equivalent(const Formula& a, const Formula& b, std::size_t atom_cap) {
  SymbolSet joint = atoms(a);
  for (const auto& s : atoms(b)) joint.insert(s);
  TruthTable table(joint, atom_cap);
  for (std::uint64_t m = 0; m < table.rows(); ++m)
    if (table.eval_row(a, m) != table.eval_row(b, m)) return false;
  return true;
}

Formula conjoin(const std::vector<Formula>& fs) {
  return Formula::conjunction(fs);
}

}  // namespace csmv
