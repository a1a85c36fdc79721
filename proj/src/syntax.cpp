#include "nqgl/syntax.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <vector>

namespace nqgl {

ParseError::ParseError(std::size_t position, const std::string& message)
    : std::runtime_error("position " + std::to_string(position) + ": " + message), position_(position) {}

const PredicateSymbol& towerParameter() {
  static const PredicateSymbol symbol{"#n", 0};
  return symbol;
}

bool mentionsTowerParameter(const Formula& phi) { return predicates(phi).contains(towerParameter()); }

namespace {

enum class Tok { Ident, Number, Symbol, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t pos = 0;
};

std::vector<Token> tokenize(std::string_view text) {
  static const char* const kSymbols[] = {"->", "|-", "|", "&", "~", "(", ")", ",", ".", "^", "{", "}", "+"};
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(text.substr(i, j - i)), i});
      i = j;
      continue;
    }
    if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Tok::Number, std::string(text.substr(i, j - i)), i});
      i = j;
      continue;
    }
    bool matched = false;
    for (const char* sym : kSymbols) {
      std::string_view s(sym);
      if (text.substr(i, s.size()) == s) {
        out.push_back({Tok::Symbol, std::string(s), i});
        i += s.size();
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError(i, std::string("unexpected character '") + text[i] + "'");
  }
  out.push_back({Tok::End, "", text.size()});
  return out;
}

bool isVariableName(std::string_view s) {
  if (s.size() < 2 || s[0] != 'v') return false;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

bool isKeyword(std::string_view s) {
  return s == "T" || s == "F" || s == "box" || s == "dia" || s == "forall" || s == "exists";
}

class Parser {
 public:
  Parser(std::string_view text, ParseOptions options) : tokens_(tokenize(text)), options_(options) {}

  Formula formulaToEnd() {
    Formula f = implication();
    expectEnd();
    return f;
  }

  Sequent sequentToEnd() {
    Sequent s;
    if (!atSymbol("|-")) s.antecedent = list();
    expectSymbol("|-");
    if (peek().kind != Tok::End) s.succedent = list();
    expectEnd();
    return s;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  bool atSymbol(std::string_view s) const { return peek().kind == Tok::Symbol && peek().text == s; }
  bool atIdent(std::string_view s) const { return peek().kind == Tok::Ident && peek().text == s; }

  [[noreturn]] void fail(const std::string& what) const {
    const auto& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.pos, what + ", found " + found);
  }

  void expectSymbol(std::string_view s) {
    if (!atSymbol(s)) fail("expected '" + std::string(s) + "'");
    ++pos_;
  }

  void expectEnd() {
    if (peek().kind != Tok::End) fail("expected end of input");
  }

  FormulaSet list() {
    FormulaSet out;
    out.insert(implication());
    while (atSymbol(",")) {
      ++pos_;
      out.insert(implication());
    }
    return out;
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (atSymbol("->")) {
      ++pos_;
      return Formula::implies(std::move(lhs), implication());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (atSymbol("|")) {
      ++pos_;
      f = Formula::disj(std::move(f), conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (atSymbol("&")) {
      ++pos_;
      f = Formula::conj(std::move(f), unary());
    }
    return f;
  }

  Variable variable() {
    const auto& t = peek();
    if (t.kind != Tok::Ident || !isVariableName(t.text)) fail("expected a variable vN");
    ++pos_;
    return parseVariable(t.text);
  }

  Formula unary() {
    if (atSymbol("~")) {
      ++pos_;
      return Formula::negation(unary());
    }
    if (atIdent("box")) {
      ++pos_;
      return Formula::box(unary());
    }
    if (atIdent("dia")) {
      ++pos_;
      if (atSymbol("^")) return schematicTower();
      return Formula::diamond(unary());
    }
    if (atIdent("forall") || atIdent("exists")) {
      bool universal = next().text == "forall";
      Variable v = variable();
      expectSymbol(".");
      Formula body = unary();
      return universal ? Formula::forall(v, std::move(body)) : Formula::exists(v, std::move(body));
    }
    return primary();
  }

  // dia^{n} T | dia^{n+c} T
  Formula schematicTower() {
    if (!options_.schematic) fail("exponent towers are only allowed in schematic templates");
    expectSymbol("^");
    expectSymbol("{");
    if (!atIdent("n")) fail("expected the exponent parameter 'n'");
    ++pos_;
    std::size_t offset = 0;
    if (atSymbol("+")) {
      ++pos_;
      if (peek().kind != Tok::Number) fail("expected a numeric exponent offset");
      offset = std::stoul(next().text);
    }
    expectSymbol("}");
    if (!atIdent("T")) fail("schematic towers must end in T");
    ++pos_;
    Formula f = Formula::atom(towerParameter());
    for (std::size_t i = 0; i < offset; ++i) f = Formula::diamond(std::move(f));
    return f;
  }

  Formula primary() {
    const auto& t = peek();
    if (atSymbol("(")) {
      ++pos_;
      Formula f = implication();
      expectSymbol(")");
      return f;
    }
    if (t.kind != Tok::Ident) fail("expected a formula");
    if (t.text == "T") {
      ++pos_;
      return Formula::top();
    }
    if (t.text == "F") {
      ++pos_;
      return Formula::bottom();
    }
    if (isKeyword(t.text) || !std::isupper(static_cast<unsigned char>(t.text[0]))) {
      fail("expected a predicate name starting with an uppercase letter");
    }
    std::size_t at = t.pos;
    std::string name = next().text;
    std::vector<Variable> args;
    if (atSymbol("(")) {
      ++pos_;
      if (!atSymbol(")")) {
        args.push_back(variable());
        while (atSymbol(",")) {
          ++pos_;
          args.push_back(variable());
        }
      }
      expectSymbol(")");
    }
    auto [it, inserted] = arities_.emplace(name, args.size());
    if (!inserted && it->second != args.size()) {
      throw ParseError(at, "arity mismatch: " + name + " used with " + std::to_string(it->second) + " and " +
                               std::to_string(args.size()) + " arguments");
    }
    PredicateSymbol symbol{name, args.size()};
    return Formula::atom(std::move(symbol), std::move(args));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  ParseOptions options_;
  std::map<std::string, std::size_t> arities_;
};

// Precedence contexts: 0 implication, 1 disjunction, 2 conjunction, 3 unary.
void printInto(const Formula& phi, int ctx, std::string& out) {
  switch (phi.kind()) {
    case Kind::Top:
      out += "T";
      return;
    case Kind::Bottom:
      out += "F";
      return;
    case Kind::Atom: {
      if (phi.predicate() == towerParameter()) {
        out += "dia^{n} T";
        return;
      }
      out += phi.predicate().name;
      if (!phi.args().empty()) {
        out += "(";
        for (std::size_t i = 0; i < phi.args().size(); ++i) {
          if (i) out += ",";
          out += phi.args()[i].name();
        }
        out += ")";
      }
      return;
    }
    case Kind::And:
      if (ctx > 2) out += "(";
      printInto(phi.lhs(), 2, out);
      out += " & ";
      printInto(phi.rhs(), 3, out);
      if (ctx > 2) out += ")";
      return;
    case Kind::Implies:
      if (ctx > 0) out += "(";
      printInto(phi.lhs(), 1, out);
      out += " -> ";
      printInto(phi.rhs(), 0, out);
      if (ctx > 0) out += ")";
      return;
    case Kind::Not: {
      const auto& b = phi.body();
      if (b.is(Kind::Box) && b.body().is(Kind::Not)) {
        // dia-chain; collapse onto a schematic tower when it ends in one
        std::size_t depth = 0;
        const Formula* cur = &phi;
        while (cur->is(Kind::Not) && cur->body().is(Kind::Box) && cur->body().body().is(Kind::Not)) {
          cur = &cur->body().body().body();
          ++depth;
        }
        if (cur->is(Kind::Atom) && cur->predicate() == towerParameter()) {
          out += "dia^{n+" + std::to_string(depth) + "} T";
          return;
        }
        out += "dia ";
        printInto(b.body().body(), 3, out);
        return;
      }
      out += "~";
      printInto(b, 3, out);
      return;
    }
    case Kind::Box:
      out += "box ";
      printInto(phi.body(), 3, out);
      return;
    case Kind::ForAll:
      out += "forall " + phi.bound().name() + ". ";
      printInto(phi.body(), 3, out);
      return;
  }
}

}  // namespace

Formula parse(std::string_view text, ParseOptions options) { return Parser(text, options).formulaToEnd(); }

Sequent parseSequent(std::string_view text, ParseOptions options) { return Parser(text, options).sequentToEnd(); }

Sequent parseGoal(std::string_view text, ParseOptions options) {
  for (const auto& t : tokenize(text)) {
    if (t.kind == Tok::Symbol && t.text == "|-") return parseSequent(text, options);
  }
  return Sequent{{}, {parse(text, options)}};
}

Variable parseVariable(std::string_view text) {
  if (!isVariableName(text)) throw ParseError(0, "not a variable: '" + std::string(text) + "'");
  return Variable{static_cast<std::uint32_t>(std::stoul(std::string(text.substr(1))))};
}

std::string print(const Formula& phi) {
  std::string out;
  printInto(phi, 0, out);
  return out;
}

std::string print(const FormulaSet& s) {
  std::string out;
  bool first = true;
  for (const auto& f : s) {
    if (!first) out += ", ";
    first = false;
    out += print(f);
  }
  return out;
}

std::string print(const Sequent& s) {
  std::string out = print(s.antecedent);
  out += out.empty() ? "|-" : " |-";
  if (!s.succedent.empty()) out += " " + print(s.succedent);
  return out;
}

}  // namespace nqgl
