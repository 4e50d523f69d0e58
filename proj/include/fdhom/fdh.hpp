#pragma once

// The .fdh input language: a field declaration, algebra blocks, module blocks
// and task blocks. Parsing is field-agnostic; scalars stay textual until a
// runner interprets them in the declared field.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fdhom/errors.hpp"

namespace fdhom::fdh {

struct Location {
  int line = 1;
  int column = 1;
  // Locations are diagnostics only and never distinguish two documents.
  friend bool operator==(const Location&, const Location&) { return true; }
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, Location loc)
      : Error(std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " + msg), loc_(loc) {}
  Location location() const { return loc_; }

 private:
  Location loc_;
};

/// A name that does not resolve (unknown algebra, module, vertex or arrow).
class ResolutionError : public Error {
 public:
  ResolutionError(const std::string& name, const std::string& msg, Location loc)
      : Error(std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " + msg), name_(name), loc_(loc) {}
  const std::string& name() const { return name_; }
  Location location() const { return loc_; }

 private:
  std::string name_;
  Location loc_;
};

struct ArrowDecl {
  std::string name, source, target;
  friend bool operator==(const ArrowDecl&, const ArrowDecl&) = default;
};

/// Coefficient and path in composition order ("b*a" is a then b).
struct Term {
  std::string coeff;
  std::vector<std::string> path;
  friend bool operator==(const Term&, const Term&) = default;
};

using Relation = std::vector<Term>;

struct AlgebraDecl {
  std::string name;
  std::vector<std::string> vertices;
  std::vector<ArrowDecl> arrows;
  std::vector<Relation> relations;
  Location loc;
  friend bool operator==(const AlgebraDecl&, const AlgebraDecl&) = default;
};

/// `A`, `Aop`, `A⊗Bop` or `A^e`.
struct AlgebraExpr {
  std::vector<std::string> factors;  // one or two
  bool enveloping = false;
  friend bool operator==(const AlgebraExpr&, const AlgebraExpr&) = default;
  std::string to_string() const {
    if (enveloping) return factors[0] + "^e";
    return factors.size() == 1 ? factors[0] : factors[0] + "⊗" + factors[1];
  }
};

using MatrixText = std::vector<std::vector<std::string>>;

struct ModuleDecl {
  std::string name;
  // explicit form
  std::optional<AlgebraExpr> over;
  std::vector<std::pair<std::string, int>> dims;  // vertex name ("" when positional), dimension
  std::vector<std::pair<std::string, MatrixText>> maps;
  // constructor form: `module X = simple A 1;`
  std::string ctor;
  std::vector<std::string> args;
  Location loc;
  friend bool operator==(const ModuleDecl&, const ModuleDecl&) = default;
};

struct TaskDecl {
  std::string command;
  std::vector<std::pair<std::string, std::vector<std::string>>> params;
  Location loc;
  friend bool operator==(const TaskDecl&, const TaskDecl&) = default;

  const std::vector<std::string>* find(const std::string& key) const {
    for (const auto& [k, v] : params)
      if (k == key) return &v;
    return nullptr;
  }
  std::optional<std::string> get(const std::string& key) const {
    auto v = find(key);
    if (!v || v->empty()) return std::nullopt;
    return v->front();
  }
};

struct Document {
  std::optional<std::string> field;
  Location field_loc;
  std::vector<AlgebraDecl> algebras;
  std::vector<ModuleDecl> modules;
  std::vector<TaskDecl> tasks;
  friend bool operator==(const Document&, const Document&) = default;

  const AlgebraDecl* algebra(const std::string& n) const {
    for (const auto& a : algebras)
      if (a.name == n) return &a;
    return nullptr;
  }
  const ModuleDecl* module(const std::string& n) const {
    for (const auto& m : modules)
      if (m.name == n) return &m;
    return nullptr;
  }
};

// ---------------------------------------------------------------------------
// Task schema.

enum class ParamKind { Algebra, Module, Int, Word, Modules };

struct CommandSpec {
  std::vector<std::pair<std::string, ParamKind>> params;
  std::vector<std::string> positional;
};

inline const std::map<std::string, CommandSpec>& commands() {
  using P = ParamKind;
  static const std::vector<std::pair<std::string, ParamKind>> data = {
      {"lambda", P::Algebra}, {"sigma", P::Algebra}, {"m", P::Module}, {"n", P::Module}, {"level", P::Int}};
  auto with_data = [&](std::vector<std::pair<std::string, ParamKind>> extra) {
    auto p = data;
    p.insert(p.end(), extra.begin(), extra.end());
    return p;
  };
  static const std::map<std::string, CommandSpec> specs = {
      {"dim", {{{"algebra", P::Algebra}, {"module", P::Module}}, {"algebra"}}},
      {"basis", {{{"algebra", P::Algebra}}, {"algebra"}}},
      {"resolve", {{{"module", P::Module}, {"upto", P::Int}}, {"module"}}},
      {"ext", {{{"source", P::Module}, {"target", P::Module}, {"over", P::Algebra}, {"upto", P::Int}}, {"source", "target"}}},
      {"hh", {{{"algebra", P::Algebra}, {"upto", P::Int}, {"oracle", P::Word}}, {"algebra"}}},
      {"gorenstein", {{{"algebra", P::Algebra}, {"bound", P::Int}}, {"algebra"}}},
      {"mcm", {{{"module", P::Module}, {"bound", P::Int}, {"window", P::Int}}, {"module"}}},
      {"stablehom", {{{"source", P::Module}, {"target", P::Module}, {"upto", P::Int}}, {"source", "target"}}},
      {"rotate", {{{"source", P::Module}, {"target", P::Module}, {"shift", P::Int}, {"upto", P::Int}}, {"source", "target"}}},
      {"semt-check", {with_data({{"x", P::Module}, {"y", P::Module}, {"cap", P::Int}}), {}}},
      {"semtl-check", {data, {}}},
      {"lift", {with_data({{"x", P::Module}, {"y", P::Module}, {"cap", P::Int}}), {}}},
      {"bump-level", {data, {}}},
      {"ext-iso", {with_data({{"pairs", P::Modules}, {"random", P::Int}, {"upto", P::Int}, {"bound", P::Int}, {"from", P::Int}}), {}}},
      {"hh-transfer", {with_data({{"upto", P::Int}, {"samples", P::Int}, {"bound", P::Int}}), {}}},
      {"fg", {{{"algebra", P::Algebra}, {"upto", P::Int}, {"gmax", P::Int}, {"bound", P::Int}}, {"algebra"}}},
      {"fg-diagram", {with_data({{"upto", P::Int}, {"gmax", P::Int}, {"bound", P::Int}}), {}}},
  };
  return specs;
}

/// Parameters accepted by every task.
inline bool common_param(const std::string& k) { return k == "expect"; }

inline const std::set<std::string>& module_ctors() {
  static const std::set<std::string> s = {"simple", "projective", "injective", "regular", "bimodule",
                                          "top",    "syzygy",     "dual",      "sum",     "tensor",
                                          "left",   "right"};
  return s;
}

// ---------------------------------------------------------------------------
// Parser.

namespace detail {

inline bool numeric_text(const std::string& w) {
  return !w.empty() && std::all_of(w.begin(), w.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

inline bool is_tensor_sign(const std::string& s, std::size_t i) {
  return s.compare(i, 3, "\xE2\x8A\x97") == 0;
}

class Parser {
 public:
  explicit Parser(std::string text) : s_(std::move(text)) {}

  Document parse() {
    Document doc;
    for (skip(); !eof(); skip()) {
      Location loc = here();
      std::string kw = word();
      if (kw == "field") {
        if (doc.field) throw ParseError("duplicate field declaration", loc);
        doc.field_loc = loc;
        doc.field = word();
        accept(';');
      } else if (kw == "algebra") {
        doc.algebras.push_back(algebra(loc));
      } else if (kw == "module") {
        doc.modules.push_back(module(loc));
      } else if (kw == "task") {
        doc.tasks.push_back(task(loc));
      } else {
        throw ParseError(kw.empty() ? std::string("unexpected character '") + s_[pos_] + "'"
                                    : "expected field, algebra, module or task, found '" + kw + "'",
                         loc);
      }
    }
    return doc;
  }

 private:
  std::string s_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;

  bool eof() const { return pos_ >= s_.size(); }
  Location here() const { return {line_, col_}; }

  void advance(std::size_t n = 1) {
    for (; n > 0 && pos_ < s_.size(); --n, ++pos_) {
      if (s_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else if ((static_cast<unsigned char>(s_[pos_]) & 0xC0) != 0x80) {
        ++col_;
      }
    }
  }

  void skip() {
    while (!eof()) {
      char c = s_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else if (c == '#' || (c == '/' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '/')) {
        while (!eof() && s_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  char peek() {
    skip();
    return eof() ? '\0' : s_[pos_];
  }

  bool accept(char c) {
    if (peek() != c) return false;
    advance();
    return true;
  }

  void expect(char c) {
    Location loc = here();
    if (!accept(c)) {
      std::string found = eof() ? "end of input" : std::string("'") + s_[pos_] + "'";
      throw ParseError(std::string("expected '") + c + "', found " + found, loc);
    }
  }

  bool word_char(std::size_t i, bool dash, bool expr) const {
    unsigned char c = static_cast<unsigned char>(s_[i]);
    if (c >= 0x80) return expr || !is_tensor_sign(s_, i);
    if (std::isalnum(c) || c == '_' || c == '\'' || c == '|' || c == '.' || (expr && c == '^')) return true;
    return dash && c == '-' && i + 1 < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i + 1]));
  }

  /// A bare word; empty when the next character cannot start one.
  /// With expr, algebra expressions such as A⊗Bop and A^e form one word.
  std::string word(bool dash = false, bool expr = false) {
    skip();
    std::size_t start = pos_;
    while (!eof() && word_char(pos_, dash && pos_ > start, expr)) advance();
    return s_.substr(start, pos_ - start);
  }

  std::string need_word(const std::string& what, bool dash = false) {
    Location loc = here();
    auto w = word(dash);
    if (w.empty()) throw ParseError("expected " + what, loc);
    return w;
  }

  int integer(const std::string& what) {
    Location loc = here();
    auto w = word();
    if (!numeric(w))
      throw ParseError("expected " + what, loc);
    return std::stoi(w);
  }

  static bool numeric(const std::string& w) { return numeric_text(w); }

  /// [-]digits[/digits]
  std::string scalar() {
    Location loc = here();
    std::string out;
    if (accept('-')) out = "-";
    auto w = word();
    if (!numeric(w)) throw ParseError("expected a scalar", loc);
    out += w;
    if (accept('/')) {
      auto d = word();
      if (!numeric(d)) throw ParseError("expected a denominator", here());
      out += "/" + d;
    }
    return out;
  }

  AlgebraDecl algebra(Location loc) {
    AlgebraDecl a;
    a.loc = loc;
    a.name = need_word("an algebra name");
    expect('{');
    while (!accept('}')) {
      Location kl = here();
      auto kw = word();
      if (kw == "vertices") {
        for (auto v = word(); !v.empty(); v = word()) a.vertices.push_back(v);
      } else if (kw == "arrows") {
        for (auto n = word(); !n.empty(); n = word()) {
          expect(':');
          auto src = need_word("a source vertex");
          Location al = here();
          if (!(accept('-') && s_[pos_] == '>')) throw ParseError("expected '->'", al);
          advance();
          a.arrows.push_back({n, src, need_word("a target vertex")});
        }
      } else if (kw == "relations") {
        if (peek() != ';') {
          a.relations.push_back(relation());
          while (accept(',')) a.relations.push_back(relation());
        }
      } else {
        throw ParseError(kw.empty() ? "expected vertices, arrows or relations" : "unknown algebra statement '" + kw + "'", kl);
      }
      expect(';');
    }
    return a;
  }

  Relation relation() {
    Relation r;
    bool negative = false;
    if (accept('-')) negative = true;
    for (;;) {
      Term t;
      Location loc = here();
      auto w = word();
      std::string coeff = "1";
      if (numeric(w)) {
        coeff = w;
        if (accept('/')) {
          auto d = word();
          if (!numeric(d)) throw ParseError("expected a denominator", here());
          coeff += "/" + d;
        }
        accept('*');
        loc = here();
        w = word();
      }
      if (w.empty()) throw ParseError("expected a path", loc);
      t.path.push_back(w);
      while (accept('*')) t.path.push_back(need_word("an arrow"));
      t.coeff = negative ? "-" + coeff : coeff;
      r.push_back(t);
      if (accept('+')) {
        negative = false;
      } else if (peek() == '-') {
        advance();
        negative = true;
      } else {
        return r;
      }
    }
  }

  AlgebraExpr algebra_expr() {
    AlgebraExpr e;
    e.factors.push_back(need_word("an algebra"));
    skip();
    if (is_tensor_sign(s_, pos_)) {
      advance(3);
      e.factors.push_back(need_word("an algebra"));
    } else if (s_.compare(pos_, 3, "(x)") == 0) {
      advance(3);
      e.factors.push_back(need_word("an algebra"));
    } else if (accept('^')) {
      Location loc = here();
      if (word() != "e") throw ParseError("expected 'e' after '^'", loc);
      e.enveloping = true;
    }
    return e;
  }

  MatrixText matrix() {
    MatrixText m;
    expect('[');
    if (accept(']')) return m;
    do {
      std::vector<std::string> row;
      expect('[');
      if (!accept(']')) {
        do row.push_back(scalar());
        while (accept(','));
        expect(']');
      }
      m.push_back(row);
    } while (accept(','));
    expect(']');
    return m;
  }

  ModuleDecl module(Location loc) {
    ModuleDecl m;
    m.loc = loc;
    m.name = need_word("a module name");
    if (accept('=')) {
      Location cl = here();
      m.ctor = need_word("a module constructor");
      if (!module_ctors().count(m.ctor)) throw ParseError("unknown module constructor '" + m.ctor + "'", cl);
      for (auto w = word(false, true); !w.empty(); w = word(false, true)) m.args.push_back(w);
      expect(';');
      return m;
    }
    Location ol = here();
    if (word() != "over") throw ParseError("expected 'over' or '='", ol);
    m.over = algebra_expr();
    expect('{');
    while (!accept('}')) {
      Location kl = here();
      auto kw = word();
      if (kw == "dims") {
        for (auto w = word(); !w.empty(); w = word()) {
          if (accept('=')) {
            m.dims.push_back({w, integer("a dimension")});
          } else {
            if (!numeric(w)) throw ParseError("expected a dimension", kl);
            m.dims.push_back({"", std::stoi(w)});
          }
        }
      } else if (kw == "map") {
        auto a = need_word("an arrow name");
        expect('=');
        m.maps.push_back({a, matrix()});
      } else {
        throw ParseError(kw.empty() ? "expected dims or map" : "unknown module statement '" + kw + "'", kl);
      }
      expect(';');
    }
    return m;
  }

  TaskDecl task(Location loc) {
    TaskDecl t;
    t.loc = loc;
    Location cl = here();
    t.command = need_word("a task command", true);
    auto it = commands().find(t.command);
    if (it == commands().end()) throw ParseError("unknown task '" + t.command + "'", cl);
    const auto& spec = it->second;
    auto known = [&](const std::string& k) {
      if (common_param(k)) return true;
      for (const auto& [name, kind] : spec.params)
        if (name == k) return true;
      return false;
    };
    auto value = [&]() {
      skip();
      if (!eof() && s_[pos_] == '-') return scalar();
      return word(true, true);
    };
    if (accept('{')) {
      while (!accept('}')) {
        Location kl = here();
        auto key = word(true);
        if (key.empty()) throw ParseError("expected a parameter name", kl);
        if (!known(key)) throw ParseError("task " + t.command + " has no parameter '" + key + "'", kl);
        std::vector<std::string> vals;
        for (auto v = value(); !v.empty(); v = value()) vals.push_back(v);
        if (vals.empty()) throw ParseError("parameter '" + key + "' needs a value", here());
        t.params.push_back({key, vals});
        expect(';');
      }
    } else {
      // compact form: positional arguments, then key value pairs
      std::size_t next = 0;
      while (!accept(';')) {
        Location vl = here();
        auto w = value();
        if (w.empty()) throw ParseError("expected ';'", vl);
        if (known(w) && peek_value()) {
          auto v = value();
          if (v.empty()) throw ParseError("parameter '" + w + "' needs a value", here());
          t.params.push_back({w, {v}});
        } else if (next < spec.positional.size()) {
          t.params.push_back({spec.positional[next++], {w}});
        } else {
          throw ParseError("unexpected argument '" + w + "' to " + t.command, vl);
        }
      }
    }
    for (std::size_t i = 0; i < t.params.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (t.params[i].first == t.params[j].first)
          throw ParseError("parameter '" + t.params[i].first + "' given twice", t.loc);
    return t;
  }

  /// Whether another value follows before the terminating ';'.
  bool peek_value() {
    char c = peek();
    return c != ';' && c != '\0';
  }
};

}  // namespace detail

inline void validate(const Document& doc);

/// Parse and resolve a document. Throws ParseError or ResolutionError.
inline Document parse(const std::string& text) {
  auto doc = detail::Parser(text).parse();
  validate(doc);
  return doc;
}

// ---------------------------------------------------------------------------
// Name resolution.

/// The declared algebra a factor refers to, and whether it is opposite.
inline std::optional<std::pair<std::string, bool>> resolve_factor(const Document& doc, const std::string& f) {
  if (doc.algebra(f)) return std::pair{f, false};
  if (f.size() > 2 && f.compare(f.size() - 2, 2, "op") == 0) {
    auto base = f.substr(0, f.size() - 2);
    if (doc.algebra(base)) return std::pair{base, true};
  }
  return std::nullopt;
}

/// Split an algebra expression written as one word.
inline AlgebraExpr expr_from_text(const std::string& text) {
  AlgebraExpr e;
  auto t = text.find("\xE2\x8A\x97");
  if (t != std::string::npos) {
    e.factors = {text.substr(0, t), text.substr(t + 3)};
  } else if (text.size() > 2 && text.compare(text.size() - 2, 2, "^e") == 0) {
    e.factors = {text.substr(0, text.size() - 2)};
    e.enveloping = true;
  } else {
    e.factors = {text};
  }
  return e;
}

namespace detail {

inline std::vector<std::string> required_params(const std::string& command) {
  const auto& spec = commands().at(command);
  if (command == "dim") return {};
  if (!spec.positional.empty()) return spec.positional;
  std::vector<std::string> out = {"lambda", "sigma", "m", "n"};
  if (command == "semt-check" || command == "lift") {
    out.push_back("x");
    out.push_back("y");
  }
  return out;
}

/// Vertex and arrow names of the quiver a module declared `over` an expression lives on.
inline std::pair<std::set<std::string>, std::set<std::string>> carrier_names(const Document& doc, const AlgebraExpr& e) {
  auto factor = [&](const std::string& f) {
    auto r = resolve_factor(doc, f);
    const AlgebraDecl* a = doc.algebra(r->first);
    std::pair<std::vector<std::string>, std::vector<std::string>> out{a->vertices, {}};
    for (const auto& ar : a->arrows) out.second.push_back(r->second ? ar.name + "op" : ar.name);
    return out;
  };
  std::vector<std::string> fs = e.factors;
  if (e.enveloping) fs.push_back(fs[0] + "op");
  std::pair<std::set<std::string>, std::set<std::string>> out;
  if (fs.size() == 1) {
    auto [vs, as] = factor(fs[0]);
    out.first.insert(vs.begin(), vs.end());
    out.second.insert(as.begin(), as.end());
    return out;
  }
  auto [lv, la] = factor(fs[0]);
  auto [rv, ra] = factor(fs[1]);
  for (const auto& i : lv)
    for (const auto& j : rv) out.first.insert(i + "|" + j);
  for (const auto& a : la)
    for (const auto& j : rv) out.second.insert(a + "|" + j);
  for (const auto& i : lv)
    for (const auto& b : ra) out.second.insert(i + "|" + b);
  return out;
}

inline void check_module_names(const Document& doc, const ModuleDecl& m) {
  auto [vs, as] = carrier_names(doc, *m.over);
  for (const auto& [v, d] : m.dims)
    if (!v.empty() && !vs.count(v)) throw ResolutionError(v, "module " + m.name + " uses unknown vertex '" + v + "'", m.loc);
  for (const auto& [a, mat] : m.maps)
    if (!as.count(a)) throw ResolutionError(a, "module " + m.name + " maps unknown arrow '" + a + "'", m.loc);
}

}  // namespace detail

inline void validate(const Document& doc) {
  std::set<std::string> names;
  for (const auto& a : doc.algebras) {
    if (!names.insert(a.name).second) throw ParseError("duplicate algebra '" + a.name + "'", a.loc);
    std::set<std::string> vs(a.vertices.begin(), a.vertices.end());
    if (vs.size() != a.vertices.size()) throw ParseError("duplicate vertex in algebra " + a.name, a.loc);
    std::set<std::string> as;
    for (const auto& ar : a.arrows) {
      if (!as.insert(ar.name).second) throw ParseError("duplicate arrow '" + ar.name + "' in " + a.name, a.loc);
      for (const auto& v : {ar.source, ar.target})
        if (!vs.count(v)) throw ResolutionError(v, "arrow " + ar.name + " uses unknown vertex '" + v + "'", a.loc);
    }
    for (const auto& r : a.relations)
      for (const auto& t : r)
        for (const auto& x : t.path)
          if (!as.count(x)) throw ResolutionError(x, "relation in " + a.name + " uses unknown arrow '" + x + "'", a.loc);
  }
  std::set<std::string> mods;
  for (const auto& m : doc.modules) {
    if (!mods.insert(m.name).second) throw ParseError("duplicate module '" + m.name + "'", m.loc);
    if (m.over) {
      for (const auto& f : m.over->factors)
        if (!resolve_factor(doc, f)) throw ResolutionError(f, "module " + m.name + " is over unknown algebra '" + f + "'", m.loc);
    }
  }
  auto module_ref = [&](const std::string& n, Location loc, const std::string& ctx) {
    if (!doc.module(n)) throw ResolutionError(n, ctx + " refers to unknown module '" + n + "'", loc);
  };
  auto algebra_ref = [&](const std::string& n, Location loc, const std::string& ctx) {
    for (const auto& f : expr_from_text(n).factors)
      if (!resolve_factor(doc, f)) throw ResolutionError(f, ctx + " refers to unknown algebra '" + f + "'", loc);
  };
  for (const auto& m : doc.modules) {
    if (m.ctor.empty()) continue;
    const std::string ctx = "module " + m.name;
    auto arity = [&](std::size_t lo, std::size_t hi) {
      if (m.args.size() < lo || m.args.size() > hi) throw ParseError(ctx + ": wrong number of arguments to " + m.ctor, m.loc);
    };
    if (m.ctor == "simple" || m.ctor == "projective" || m.ctor == "injective") {
      arity(2, 2);
      algebra_ref(m.args[0], m.loc, ctx);
      auto f = resolve_factor(doc, m.args[0]);
      const auto* vs = f ? &doc.algebra(f->first)->vertices : nullptr;
      if (vs && std::find(vs->begin(), vs->end(), m.args[1]) == vs->end())
        throw ResolutionError(m.args[1], ctx + " uses unknown vertex '" + m.args[1] + "'", m.loc);
    } else if (m.ctor == "regular" || m.ctor == "bimodule" || m.ctor == "top") {
      arity(1, 1);
      algebra_ref(m.args[0], m.loc, ctx);
    } else if (m.ctor == "syzygy") {
      arity(2, 2);
      module_ref(m.args[0], m.loc, ctx);
      if (!detail::numeric_text(m.args[1])) throw ParseError(ctx + ": syzygy degree must be an integer", m.loc);
    } else if (m.ctor == "dual" || m.ctor == "left" || m.ctor == "right") {
      arity(1, 1);
      module_ref(m.args[0], m.loc, ctx);
    } else {
      arity(2, 2);
      module_ref(m.args[0], m.loc, ctx);
      module_ref(m.args[1], m.loc, ctx);
    }
  }
  for (const auto& m : doc.modules)
    if (m.over) detail::check_module_names(doc, m);
  for (const auto& t : doc.tasks) {
    const auto& spec = commands().at(t.command);
    const std::string ctx = "task " + t.command;
    for (const auto& k : detail::required_params(t.command))
      if (!t.find(k)) throw ParseError(ctx + ": missing parameter '" + k + "'", t.loc);
    if (t.command == "dim" && !t.find("algebra") == !t.find("module"))
      throw ParseError(ctx + ": give exactly one of algebra, module", t.loc);
    for (const auto& [k, vals] : t.params) {
      if (common_param(k)) {
        if (vals.size() != 1 || (vals[0] != "pass" && vals[0] != "fail"))
          throw ParseError(ctx + ": expect takes pass or fail", t.loc);
        continue;
      }
      ParamKind kind = std::find_if(spec.params.begin(), spec.params.end(), [&](const auto& p) { return p.first == k; })->second;
      if (kind != ParamKind::Modules && vals.size() != 1) throw ParseError(ctx + ": parameter '" + k + "' takes one value", t.loc);
      for (const auto& v : vals) {
        switch (kind) {
          case ParamKind::Algebra: algebra_ref(v, t.loc, ctx); break;
          case ParamKind::Module:
          case ParamKind::Modules: module_ref(v, t.loc, ctx); break;
          case ParamKind::Int:
            if (!detail::numeric_text(v)) throw ParseError(ctx + ": parameter '" + k + "' must be a non-negative integer", t.loc);
            break;
          case ParamKind::Word: break;
        }
      }
      if (kind == ParamKind::Modules && vals.size() % 2 != 0)
        throw ParseError(ctx + ": '" + k + "' takes source/target pairs", t.loc);
    }
  }
}

// ---------------------------------------------------------------------------
// Printer (canonical form; parse(print(d)) == d).

namespace detail {

inline std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

inline std::string relation_text(const Relation& r) {
  std::string out;
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::string c = r[i].coeff;
    bool neg = !c.empty() && c[0] == '-';
    if (neg) c = c.substr(1);
    if (i == 0) out += neg ? "-" : "";
    else out += neg ? " - " : " + ";
    if (c != "1") out += c + " ";
    out += join(r[i].path, "*");
  }
  return out;
}

inline std::string matrix_text(const MatrixText& m) {
  std::vector<std::string> rows;
  for (const auto& r : m) rows.push_back("[" + join(r, ",") + "]");
  return "[" + join(rows, ",") + "]";
}

}  // namespace detail

inline std::string print(const Document& doc) {
  std::ostringstream out;
  if (doc.field) out << "field " << *doc.field << "\n";
  for (const auto& a : doc.algebras) {
    out << "\nalgebra " << a.name << " {\n  vertices " << detail::join(a.vertices, " ") << ";\n  arrows";
    for (const auto& ar : a.arrows) out << " " << ar.name << ":" << ar.source << "->" << ar.target;
    out << ";\n";
    if (!a.relations.empty()) {
      std::vector<std::string> rs;
      for (const auto& r : a.relations) rs.push_back(detail::relation_text(r));
      out << "  relations " << detail::join(rs, ", ") << ";\n";
    }
    out << "}\n";
  }
  if (!doc.modules.empty()) out << "\n";
  for (const auto& m : doc.modules) {
    if (!m.ctor.empty()) {
      out << "module " << m.name << " = " << m.ctor;
      for (const auto& x : m.args) out << " " << x;
      out << ";\n";
      continue;
    }
    out << "module " << m.name << " over " << m.over->to_string() << " {\n  dims";
    for (const auto& [v, d] : m.dims) out << " " << (v.empty() ? "" : v + "=") << d;
    out << ";\n";
    for (const auto& [a, mat] : m.maps) out << "  map " << a << " = " << detail::matrix_text(mat) << ";\n";
    out << "}\n";
  }
  if (!doc.tasks.empty()) out << "\n";
  for (const auto& t : doc.tasks) {
    out << "task " << t.command << " {";
    for (const auto& [k, v] : t.params) out << " " << k << " " << detail::join(v, " ") << ";";
    out << " }\n";
  }
  return out.str();
}

}  // namespace fdhom::fdh
