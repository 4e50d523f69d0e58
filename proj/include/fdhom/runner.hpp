#pragma once

// Executes the task blocks of a parsed .fdh document and assembles reports.

#include <chrono>
#include <functional>
#include <future>
#include <iomanip>
#include <mutex>
#include <random>
#include <set>

#include "fdhom/fdh.hpp"
#include "fdhom/fixtures.hpp"
#include "json.hpp"

namespace fdhom::fdh {

using json = nlohmann::ordered_json;

struct RunOptions {
  std::uint64_t seed = 0;
  int cap_paths = 32;
  int cap_degree = -1;  // default degree for tasks without `upto`
  bool parallel = false;
  bool verbose = false;
};

struct TaskReport {
  int index = 0;
  std::string command;
  json params = json::object();
  std::string status = "ok";  // ok | unexpected | error
  std::optional<bool> verdict;
  std::string error;
  json result = json::object();
  json witness;
  std::vector<std::string> lines;
  double seconds = 0;
};

struct RunReport {
  std::string field;
  std::uint64_t seed = 0;
  std::vector<TaskReport> tasks;

  int count(const std::string& status) const {
    return static_cast<int>(std::count_if(tasks.begin(), tasks.end(), [&](const auto& t) { return t.status == status; }));
  }
  bool ok() const { return count("ok") == static_cast<int>(tasks.size()); }
  int exit_code() const { return ok() ? 0 : 1; }

  json to_json(bool verbose) const {
    json j;
    j["format"] = "fdhom-report";
    j["version"] = 1;
    j["field"] = field;
    j["seed"] = seed;
    json ts = json::array();
    for (const auto& t : tasks) {
      json x;
      x["index"] = t.index;
      x["command"] = t.command;
      x["params"] = t.params;
      x["status"] = t.status;
      x["verdict"] = t.verdict ? json(*t.verdict ? "pass" : "fail") : json(nullptr);
      if (t.status == "error") x["error"] = t.error;
      x["result"] = t.result;
      if (verbose && !t.witness.is_null()) x["witness"] = t.witness;
      if (verbose) x["seconds"] = std::round(t.seconds * 1000) / 1000;
      ts.push_back(x);
    }
    j["tasks"] = ts;
    j["summary"] = {{"tasks", tasks.size()}, {"ok", count("ok")}, {"unexpected", count("unexpected")},
                    {"errors", count("error")}, {"exit_code", exit_code()}};
    return j;
  }

  std::string table(bool verbose) const {
    std::ostringstream out;
    out << "field " << field << ", seed " << seed << ", " << tasks.size() << " task" << (tasks.size() == 1 ? "" : "s")
        << "\n";
    for (const auto& t : tasks) {
      std::string head = "[" + std::to_string(t.index) + "] " + t.command;
      for (const auto& [k, v] : t.params.items()) {
        head += " " + k + "=";
        if (v.is_array()) {
          std::vector<std::string> xs;
          for (const auto& e : v) xs.push_back(e.get<std::string>());
          head += detail::join(xs, ",");
        } else {
          head += v.get<std::string>();
        }
      }
      std::string tail = t.status;
      if (t.verdict) tail = (*t.verdict ? "pass" : "fail") + (t.status == "ok" ? "" : " (" + t.status + ")");
      if (t.status == "error") tail = "error";
      // pad by code points so that names such as A⊗Bop line up
      int width = static_cast<int>(std::count_if(head.begin(), head.end(), [](char c) { return (c & 0xC0) != 0x80; }));
      out << head << std::string(std::max(56 - width, 2), ' ') << tail;
      if (verbose) out << "  " << std::fixed << std::setprecision(3) << t.seconds << "s";
      out << "\n";
      if (t.status == "error") out << "    " << t.error << "\n";
      for (const auto& l : t.lines) out << "    " << l << "\n";
    }
    out << "summary: " << count("ok") << " ok, " << count("unexpected") << " unexpected, " << count("error")
        << " errors\n";
    return out.str();
  }
};

namespace detail {

inline std::string ints(const std::vector<int>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? " " : "") + std::to_string(xs[i]);
  return out;
}

template <class K>
K scalar_value(const std::string& text) {
  auto slash = text.find('/');
  long long num = std::stoll(text.substr(0, slash));
  long long den = slash == std::string::npos ? 1 : std::stoll(text.substr(slash + 1));
  return K::from_fraction(num, den);
}

template <class K>
class Context {
 public:
  Context(const Document& doc, const RunOptions& opt) : doc_(doc), opt_(opt) {}

  const RunOptions& options() const { return opt_; }

  AlgebraPtr<K> algebra(const std::string& text) {
    std::lock_guard lock(mu_);
    return algebra_expr(expr_from_text(text));
  }

  RepPtr<K> module(const std::string& name) {
    std::lock_guard lock(mu_);
    return module_locked(name);
  }

 private:
  const Document& doc_;
  RunOptions opt_;
  std::recursive_mutex mu_;
  std::map<std::string, AlgebraPtr<K>> algebras_;
  std::map<std::string, RepPtr<K>> modules_;
  std::set<std::string> building_;

  AlgebraPtr<K> base(const std::string& name) {
    auto it = algebras_.find(name);
    if (it != algebras_.end()) return it->second;
    const AlgebraDecl* d = doc_.algebra(name);
    if (!d) throw ResolutionError(name, "unknown algebra '" + name + "'", {});
    std::vector<Arrow> arrows;
    for (const auto& a : d->arrows) {
      auto idx = [&](const std::string& v) {
        return static_cast<int>(std::find(d->vertices.begin(), d->vertices.end(), v) - d->vertices.begin());
      };
      arrows.push_back({a.name, idx(a.source), idx(a.target)});
    }
    Quiver q(d->vertices, arrows);
    std::vector<Poly<K>> rels;
    for (const auto& r : d->relations) {
      std::vector<std::pair<K, std::string>> terms;
      for (const auto& t : r) terms.push_back({scalar_value<K>(t.coeff), join(t.path, "*")});
      rels.push_back(make_relation<K>(q, terms));
    }
    auto a = build_algebra<K>(name, q, rels, opt_.cap_paths);
    algebras_[name] = a;
    return a;
  }

  AlgebraPtr<K> factor(const std::string& f) {
    auto r = resolve_factor(doc_, f);
    if (!r) throw ResolutionError(f, "unknown algebra '" + f + "'", {});
    auto a = base(r->first);
    return r->second ? opposite(a) : a;
  }

  AlgebraPtr<K> algebra_expr(const AlgebraExpr& e) {
    const std::string key = e.to_string();
    auto it = algebras_.find(key);
    if (it != algebras_.end()) return it->second;
    AlgebraPtr<K> a;
    if (e.enveloping) a = tensor_algebra(factor(e.factors[0]), opposite(factor(e.factors[0])));
    else if (e.factors.size() == 2) a = tensor_algebra(factor(e.factors[0]), factor(e.factors[1]));
    else a = factor(e.factors[0]);
    algebras_[key] = a;
    return a;
  }

  int vertex(const AlgebraPtr<K>& a, const std::string& v, const ModuleDecl& m) {
    int i = a->quiver().vertex_index(v);
    if (i < 0) throw ResolutionError(v, "module " + m.name + " uses unknown vertex '" + v + "'", m.loc);
    return i;
  }

  RepPtr<K> module_locked(const std::string& name) {
    auto it = modules_.find(name);
    if (it != modules_.end()) return it->second;
    const ModuleDecl* m = doc_.module(name);
    if (!m) throw ResolutionError(name, "unknown module '" + name + "'", {});
    if (!building_.insert(name).second) throw ResolutionError(name, "module '" + name + "' is defined in terms of itself", m->loc);
    RepPtr<K> r;
    try {
      r = m->ctor.empty() ? explicit_module(*m) : constructed(*m);
    } catch (...) {
      building_.erase(name);
      throw;
    }
    building_.erase(name);
    modules_[name] = r;
    return r;
  }

  RepPtr<K> explicit_module(const ModuleDecl& m) {
    auto a = algebra_expr(*m.over);
    const Quiver& q = a->quiver();
    std::vector<int> dims(q.num_vertices(), 0);
    bool named = !m.dims.empty() && !m.dims.front().first.empty();
    if (!named && !m.dims.empty() && static_cast<int>(m.dims.size()) != q.num_vertices())
      throw ParseError("module " + m.name + " lists " + std::to_string(m.dims.size()) + " dimensions for " +
                           std::to_string(q.num_vertices()) + " vertices",
                       m.loc);
    for (std::size_t i = 0; i < m.dims.size(); ++i) {
      if (m.dims[i].first.empty() == named) throw ParseError("module " + m.name + " mixes named and positional dims", m.loc);
      dims[named ? vertex(a, m.dims[i].first, m) : static_cast<int>(i)] = m.dims[i].second;
    }
    std::vector<Matrix<K>> maps;
    for (int i = 0; i < q.num_arrows(); ++i) maps.emplace_back(dims[q.arrow(i).target], dims[q.arrow(i).source]);
    std::set<int> seen;
    for (const auto& [an, text] : m.maps) {
      int i = q.arrow_index(an);
      if (i < 0) throw ResolutionError(an, "module " + m.name + " maps unknown arrow '" + an + "'", m.loc);
      if (!seen.insert(i).second) throw ParseError("module " + m.name + " maps arrow " + an + " twice", m.loc);
      std::size_t rows = dims[q.arrow(i).target], cols = dims[q.arrow(i).source];
      bool shape = text.size() == rows;
      for (const auto& row : text) shape = shape && row.size() == cols;
      if (!shape)
        throw ParseError("matrix of arrow " + an + " in module " + m.name + " must be " + std::to_string(rows) + "x" +
                             std::to_string(cols),
                         m.loc);
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) maps[i](r, c) = scalar_value<K>(text[r][c]);
    }
    return make_rep(a, dims, maps);
  }

  RepPtr<K> constructed(const ModuleDecl& m) {
    const auto& c = m.ctor;
    const auto& x = m.args;
    if (c == "simple" || c == "projective" || c == "injective") {
      auto a = algebra_expr(expr_from_text(x[0]));
      int v = vertex(a, x[1], m);
      if (c == "simple") return simple(a, v);
      if (c == "projective") return projective(a, v);
      return dual(projective(opposite(a), v));
    }
    if (c == "regular") return regular(algebra_expr(expr_from_text(x[0])));
    if (c == "bimodule") return regular_bimodule(factor(x[0]));
    if (c == "top") return semisimple_top(algebra_expr(expr_from_text(x[0])));
    if (c == "syzygy") return syzygy(module_locked(x[0]), std::stoi(x[1]));
    if (c == "dual") return dual(module_locked(x[0]));
    if (c == "left") return restrict_left(module_locked(x[0]));
    if (c == "right") return restrict_right(module_locked(x[0]));
    if (c == "sum") return direct_sum(module_locked(x[0]), module_locked(x[1]));
    return tensor_over(module_locked(x[0]), module_locked(x[1])).rep;
  }
};

/// Per-task parameter access.
template <class K>
struct Task {
  const TaskDecl& decl;
  Context<K>& ctx;
  TaskReport& out;

  bool has(const std::string& k) const { return decl.find(k) != nullptr; }
  std::string word(const std::string& k) const {
    auto v = decl.get(k);
    if (!v) throw HypothesisFailed("task " + decl.command + " needs parameter '" + k + "'");
    return *v;
  }
  int integer(const std::string& k, int def) const {
    auto v = decl.get(k);
    return v ? std::stoi(*v) : def;
  }
  int degree(int def) const { return integer("upto", ctx.options().cap_degree >= 0 ? ctx.options().cap_degree : def); }
  AlgebraPtr<K> algebra(const std::string& k) const { return ctx.algebra(word(k)); }
  RepPtr<K> module(const std::string& k) const { return ctx.module(word(k)); }
  SearchOptions search() const {
    SearchOptions o;
    o.seed = ctx.options().seed;
    return o;
  }
  SemtlData<K> data() const {
    return {algebra("lambda"), algebra("sigma"), module("m"), module("n"), integer("level", 0)};
  }
  void line(const std::string& s) { out.lines.push_back(s); }
};

inline json semtl_json(const SemtlReport& r, bool with_witness, json* witness) {
  json conds = json::array();
  json w = json::array();
  for (int i = 0; i < 4; ++i) {
    conds.push_back({{"condition", i + 1}, {"verdict", to_string(r.cond[i].verdict)}, {"detail", r.cond[i].detail}});
    if (i >= 2)
      w.push_back({{"condition", i + 1},
                   {"stripped_tensor_dims", r.cond[i].lhs_dims},
                   {"stripped_syzygy_dims", r.cond[i].rhs_dims},
                   {"removed_projectives", r.cond[i].removed}});
  }
  if (with_witness && witness) *witness = w;
  return {{"level", r.level}, {"pass", r.pass()}, {"conditions", conds}};
}

inline void semtl_lines(const SemtlReport& r, std::vector<std::string>& lines) {
  std::string s = "level " + std::to_string(r.level) + ":";
  for (int i = 0; i < 4; ++i) s += " (" + std::to_string(i + 1) + ") " + to_string(r.cond[i].verdict);
  lines.push_back(s);
  for (int i = 0; i < 4; ++i)
    if (r.cond[i].verdict != Verdict::Pass) lines.push_back("(" + std::to_string(i + 1) + ") " + r.cond[i].detail);
}

inline json gorenstein_json(const GorensteinReport& g) {
  return {{"verdict", g.verdict()}, {"left_id", g.left_id.to_string()}, {"right_id", g.right_id.to_string()}};
}

template <class K>
GorensteinReport gor(const AlgebraPtr<K>& a, int bound) {
  return gorenstein_report(a, bound);
}

// ---------------------------------------------------------------------------
// Task handlers.

template <class K>
void task_dim(Task<K>& t) {
  if (t.has("module")) {
    auto m = t.module("module");
    t.out.result = {{"module", t.word("module")}, {"algebra", m->algebra()->name()}, {"dims", m->dims()},
                    {"total", m->total_dim()}};
    t.line("dims " + ints(m->dims()) + " (total " + std::to_string(m->total_dim()) + ")");
    return;
  }
  auto a = t.algebra("algebra");
  t.out.result = {{"algebra", t.word("algebra")},
                  {"dim", a->dim()},
                  {"vertices", a->num_vertices()},
                  {"arrows", a->quiver().num_arrows()}};
  t.line("dim " + std::to_string(a->dim()) + ", " + std::to_string(a->num_vertices()) + " vertices, " +
         std::to_string(a->quiver().num_arrows()) + " arrows");
}

template <class K>
void task_basis(Task<K>& t) {
  auto a = t.algebra("algebra");
  std::vector<std::string> b;
  for (int i = 0; i < a->dim(); ++i) b.push_back(a->basis_label(i));
  t.out.result = {{"algebra", t.word("algebra")}, {"dim", a->dim()}, {"basis", b}};
  t.line("basis " + join(b, ", "));
}

template <class K>
void task_resolve(Task<K>& t) {
  auto m = t.module("module");
  const int upto = t.degree(6);
  auto res = resolve(m, upto);
  const auto& verts = m->algebra()->quiver().vertices();
  json terms = json::array();
  for (int i = 0; i <= upto && res->has_term(i); ++i) {
    json tops = json::object();
    std::vector<int> mult(verts.size(), 0);
    for (int v : res->term(i).gens) ++mult[v];
    std::string s;
    for (std::size_t v = 0; v < verts.size(); ++v)
      if (mult[v]) {
        tops[verts[v]] = mult[v];
        s += (s.empty() ? "" : " + ") + (mult[v] > 1 ? std::to_string(mult[v]) + "*" : "") + "P(" + verts[v] + ")";
      }
    int syz = static_cast<int>(res->syzygies.size()) > i ? res->syzygy(i)->total_dim() : 0;
    terms.push_back({{"degree", i}, {"tops", tops}, {"syzygy_dim", syz}});
    t.line("P" + std::to_string(i) + " = " + (s.empty() ? "0" : s) + ", dim Omega^" + std::to_string(i) + " = " +
           std::to_string(syz));
  }
  t.out.result = {{"module", t.word("module")},
                  {"upto", upto},
                  {"terms", terms},
                  {"pd", res->terminated ? json(std::max(res->pd, 0)) : json(nullptr)}};
  if (res->terminated) t.line("pd " + std::to_string(std::max(res->pd, 0)));
}

template <class K>
void task_ext(Task<K>& t) {
  auto x = t.module("source");
  auto y = t.module("target");
  if (t.has("over")) {
    auto a = t.algebra("over");
    require_same(x->algebra(), a, "ext source");
    require_same(y->algebra(), a, "ext target");
  }
  const int upto = t.degree(6);
  auto res = resolve(x, upto + 1);
  std::vector<int> dims;
  for (int n = 0; n <= upto; ++n) dims.push_back(ext(res, y, n)->dim());
  t.out.result = {{"source", t.word("source")}, {"target", t.word("target")}, {"upto", upto}, {"dims", dims}};
  t.line("dim Ext^n, n = 0.." + std::to_string(upto) + ": " + ints(dims));
}

template <class K>
void task_hh(Task<K>& t) {
  auto a = t.algebra("algebra");
  const int upto = t.degree(6);
  auto h = hochschild(a);
  h->prepare(upto);
  std::vector<int> dims;
  for (int n = 0; n <= upto; ++n) dims.push_back(h->group(n)->dim());
  t.out.result = {{"algebra", t.word("algebra")}, {"upto", upto}, {"dims", dims}, {"center", center_dim(a)}};
  t.line("dim HH^n, n = 0.." + std::to_string(upto) + ": " + ints(dims) + "; center " + std::to_string(center_dim(a)));
  if (t.decl.get("oracle") == "yes") {
    std::vector<int> oracle;
    for (int n = 0; n <= std::min(upto, 4); ++n) oracle.push_back(bar_cochain_oracle(a, n));
    bool agree = std::equal(oracle.begin(), oracle.end(), dims.begin());
    t.out.result["oracle"] = oracle;
    t.out.verdict = agree;
    t.line("bar complex: " + ints(oracle) + (agree ? " (agrees)" : " (DISAGREES)"));
  }
}

template <class K>
void task_gorenstein(Task<K>& t) {
  auto g = gor(t.algebra("algebra"), t.integer("bound", 10));
  t.out.result = gorenstein_json(g);
  t.out.result["bound"] = g.bound;
  t.out.verdict = g.gorenstein;
  t.line(g.verdict() + ": id of the regular module " + g.left_id.to_string() + " (left), " + g.right_id.to_string() +
         " (right)");
}

template <class K>
void task_mcm(Task<K>& t) {
  auto c = t.module("module");
  auto g = gor(c->algebra(), t.integer("bound", 10));
  const int window = t.integer("window", -1);
  bool mcm = is_mcm(c, g, window);
  t.out.result = {{"module", t.word("module")}, {"gorenstein", g.verdict()}, {"mcm", mcm}};
  t.out.verdict = mcm;
  t.line(std::string(mcm ? "maximal Cohen-Macaulay" : "not maximal Cohen-Macaulay") + " (" + g.verdict() + ")");
}

template <class K>
void task_stablehom(Task<K>& t) {
  auto c = t.module("source");
  auto a = t.module("target");
  const int upto = t.degree(6);
  json degs = json::array();
  bool all = true;
  for (int n = 1; n <= upto; ++n) {
    try {
      auto b = sthom_to_ext(c, a, n);
      int r = rank(b.matrix);
      degs.push_back({{"degree", n}, {"sthom_dim", b.sthom.dim()}, {"ext_dim", b.ext->dim()}, {"rank", r}, {"bijective", b.bijective}});
      all = all && b.bijective;
      t.line("n=" + std::to_string(n) + ": stHom " + std::to_string(b.sthom.dim()) + ", Ext " +
             std::to_string(b.ext->dim()) + ", rank " + std::to_string(r));
    } catch (const HypothesisFailed&) {
      degs.push_back({{"degree", n}, {"skipped", "Ext^n(C, regular) is nonzero"}});
      t.line("n=" + std::to_string(n) + ": skipped, Ext^n(C, regular) is nonzero");
    }
  }
  t.out.result = {{"source", t.word("source")}, {"target", t.word("target")}, {"degrees", degs}};
  t.out.verdict = all;
}

template <class K>
void task_rotate(Task<K>& t) {
  auto u = t.module("source");
  auto v = t.module("target");
  const int i = t.integer("shift", 1);
  const int upto = t.degree(6);
  auto ru = resolve(u), rv = resolve(v);
  json degs = json::array();
  bool all = true;
  for (int n = std::max(i, 0) + 1; n <= upto; ++n) {
    auto m = rotation_matrix(ru, rv, n, i);
    degs.push_back({{"degree", n}, {"source_dim", m.source->dim()}, {"target_dim", m.target->dim()}, {"rank", m.rank()},
                    {"bijective", m.bijective()}});
    all = all && m.bijective();
    t.line("n=" + std::to_string(n) + ": " + std::to_string(m.source->dim()) + " -> " + std::to_string(m.target->dim()) +
           ", rank " + std::to_string(m.rank()));
  }
  t.out.result = {{"source", t.word("source")}, {"target", t.word("target")}, {"shift", i}, {"degrees", degs}};
  t.out.verdict = all;
}

inline json semt_json(const SemtReport& r) {
  return {{"pass", r.pass()},
          {"lambda_split", r.lambda_split},
          {"sigma_split", r.sigma_split},
          {"lambda_remainder", to_string(r.lambda_rest)},
          {"sigma_remainder", to_string(r.sigma_rest)},
          {"pd_x", r.pd_x},
          {"pd_y", r.pd_y}};
}

template <class K>
void task_semt(Task<K>& t) {
  auto r = check_semt(t.data(), t.module("x"), t.module("y"), t.integer("cap", 16), t.search());
  t.out.result = semt_json(r);
  t.out.verdict = r.pass();
  t.line("M(x)N = Lambda + X: " + to_string(r.lambda_rest) + ", N(x)M = Sigma + Y: " + to_string(r.sigma_rest) +
         ", pd X = " + std::to_string(r.pd_x) + ", pd Y = " + std::to_string(r.pd_y));
}

template <class K>
void task_semtl(Task<K>& t) {
  auto r = check_semtl(t.data(), t.search());
  t.out.result = semtl_json(r, true, &t.out.witness);
  t.out.verdict = r.pass();
  semtl_lines(r, t.out.lines);
}

template <class K>
void task_lift(Task<K>& t) {
  auto d = t.data();
  auto s = check_semt(d, t.module("x"), t.module("y"), t.integer("cap", 16), t.search());
  t.out.result = {{"semt", semt_json(s)}};
  if (!s.pass()) {
    t.out.verdict = false;
    t.line("not a stable equivalence of Morita type with the given X, Y");
    return;
  }
  auto l = lift_semt_to_semtl(d, s);
  auto r = check_semtl(l, t.search());
  t.out.result["level"] = l.level;
  t.out.result["m_dims"] = l.m->dims();
  t.out.result["check"] = semtl_json(r, true, &t.out.witness);
  t.out.verdict = r.pass();
  t.line("lifted to level " + std::to_string(l.level) + ", M' dims " + ints(l.m->dims()));
  semtl_lines(r, t.out.lines);
}

template <class K>
void task_bump(Task<K>& t) {
  auto l = increase_level(t.data());
  auto r = check_semtl(l, t.search());
  t.out.result = {{"level", l.level}, {"m_dims", l.m->dims()}, {"check", semtl_json(r, true, &t.out.witness)}};
  t.out.verdict = r.pass();
  t.line("M' = Omega(M), dims " + ints(l.m->dims()));
  semtl_lines(r, t.out.lines);
}

template <class K>
void task_ext_iso(Task<K>& t) {
  auto d = t.data();
  const int bound = t.integer("bound", 10);
  auto gl = gor(d.lambda, bound), gs = gor(d.sigma, bound);
  const int upto = t.degree(6);
  const int from = t.integer("from", -1);
  std::vector<std::pair<std::string, std::pair<RepPtr<K>, RepPtr<K>>>> pairs;
  if (auto p = t.decl.find("pairs"))
    for (std::size_t i = 0; i + 1 < p->size(); i += 2)
      pairs.push_back({(*p)[i] + "," + (*p)[i + 1], {t.ctx.module((*p)[i]), t.ctx.module((*p)[i + 1])}});
  std::mt19937_64 rng(t.ctx.options().seed);
  for (int k = 0; k < t.integer("random", 0); ++k) {
    auto a = random_module(d.lambda, rng), b = random_module(d.lambda, rng);
    pairs.push_back({"random" + std::to_string(k + 1), {a, b}});
  }
  json out = json::array();
  bool all = true;
  int d_val = std::max(gl.dimension, gs.dimension);
  for (const auto& [label, ab] : pairs) {
    auto r = verify_ext_iso(d, gl, gs, ab.first, ab.second, upto, from);
    d_val = r.d;
    json degs = json::array();
    std::vector<int> ranks;
    for (const auto& c : r.degrees) {
      degs.push_back({{"degree", c.degree}, {"lambda_dim", c.lhs_dim}, {"sigma_dim", c.rhs_dim}, {"rank", c.rank},
                      {"in_window", c.in_window}, {"bijective", c.ok}});
      if (c.in_window) ranks.push_back(c.rank);
    }
    out.push_back({{"pair", label}, {"pass", r.pass()}, {"degrees", degs}});
    all = all && r.pass();
    t.line(label + ": " + (r.pass() ? "bijective" : "NOT bijective") + " on the window, ranks " + ints(ranks));
  }
  t.out.result = {{"d", d_val}, {"upto", upto}, {"pairs", out}};
  t.out.verdict = all;
}

template <class K>
void task_hh_transfer(Task<K>& t) {
  auto d = t.data();
  const int bound = t.integer("bound", 10);
  auto r = verify_hh_transfer(d, gor(d.lambda, bound), gor(d.sigma, bound), t.degree(6), t.integer("samples", 4),
                              t.ctx.options().seed, t.search());
  json degs = json::array();
  std::vector<int> dl, ds;
  for (const auto& x : r.degrees) {
    degs.push_back({{"degree", x.degree}, {"lambda_dim", x.dim_lambda}, {"sigma_dim", x.dim_sigma},
                    {"in_window", x.in_window}, {"forward_injective", x.forward_injective},
                    {"backward_injective", x.backward_injective}, {"bijective", x.bijective}});
    dl.push_back(x.dim_lambda);
    ds.push_back(x.dim_sigma);
  }
  t.out.result = {{"d", r.d}, {"degrees", degs}, {"pairs_checked", r.pairs_checked}, {"multiplicative", r.multiplicative}};
  t.out.verdict = r.pass();
  t.line("d = " + std::to_string(r.d) + "; dim HH(Lambda) " + ints(dl) + "; dim HH(Sigma) " + ints(ds));
  t.line("products checked " + std::to_string(r.pairs_checked) + (r.multiplicative ? ", multiplicative" : ", NOT multiplicative"));
}

inline json fg_json(const FgReport& r) {
  return {{"verdict", r.verdict_string()},       {"hh_dims", r.hh_dims},
          {"ext_dims", r.ext_dims},             {"phi_ranks", r.phi_ranks},
          {"hh_generators", r.hh_generators},   {"generation_degree", r.generation_degree},
          {"gorenstein_precheck", r.precheck.verdict()}};
}

template <class K>
void task_fg(Task<K>& t) {
  auto r = fg_check(t.algebra("algebra"), t.degree(8), t.integer("gmax", 1), t.integer("bound", -1));
  t.out.result = fg_json(r);
  t.out.verdict = r.verdict == FgVerdict::ConsistentUpTo;
  t.line(r.verdict_string() + " (Gorenstein precheck " + r.precheck.verdict() + ")");
  t.line("dim HH^n " + ints(r.hh_dims) + "; dim Ext^n(S,S) " + ints(r.ext_dims) + "; rank phi " + ints(r.phi_ranks));
  if (r.generation_degree >= 0) t.line("generated in degrees <= " + std::to_string(r.generation_degree));
}

template <class K>
void task_fg_diagram(Task<K>& t) {
  auto d = t.data();
  const int bound = t.integer("bound", 10);
  auto r = verify_fg_transfer_diagram(d, gor(d.lambda, bound), gor(d.sigma, bound), t.degree(6), t.integer("gmax", 1),
                                      t.search());
  json degs = json::array();
  for (const auto& x : r.degrees)
    degs.push_back({{"degree", x.degree}, {"top_square", x.top_square}, {"bottom_square", x.bottom_square},
                    {"outer_square", x.outer}, {"f_iso", x.f_iso}, {"g_iso", x.g_iso}});
  t.out.result = {{"d", r.d}, {"degrees", degs}, {"fg_lambda", r.fg_lambda}, {"fg_sigma", r.fg_sigma},
                  {"verdicts_agree", r.verdicts_agree}};
  t.out.verdict = r.pass();
  t.line("squares commute in degrees " + std::to_string(r.d + 1) + ".." + std::to_string(r.d + static_cast<int>(r.degrees.size())) +
         ": " + (r.pass() ? "yes" : "no"));
  t.line("fg: " + r.fg_lambda + " | " + r.fg_sigma);
}

template <class K>
void dispatch(Task<K>& t) {
  static const std::map<std::string, std::function<void(Task<K>&)>> handlers = {
      {"dim", task_dim<K>},
      {"basis", task_basis<K>},
      {"resolve", task_resolve<K>},
      {"ext", task_ext<K>},
      {"hh", task_hh<K>},
      {"gorenstein", task_gorenstein<K>},
      {"mcm", task_mcm<K>},
      {"stablehom", task_stablehom<K>},
      {"rotate", task_rotate<K>},
      {"semt-check", task_semt<K>},
      {"semtl-check", task_semtl<K>},
      {"lift", task_lift<K>},
      {"bump-level", task_bump<K>},
      {"ext-iso", task_ext_iso<K>},
      {"hh-transfer", task_hh_transfer<K>},
      {"fg", task_fg<K>},
      {"fg-diagram", task_fg_diagram<K>},
  };
  handlers.at(t.decl.command)(t);
}

template <class K>
TaskReport run_task(const TaskDecl& decl, int index, Context<K>& ctx) {
  TaskReport rep;
  rep.index = index;
  rep.command = decl.command;
  for (const auto& [k, v] : decl.params) rep.params[k] = v.size() == 1 ? json(v[0]) : json(v);
  auto start = std::chrono::steady_clock::now();
  try {
    Task<K> t{decl, ctx, rep};
    dispatch(t);
    if (auto e = decl.get("expect")) {
      if (!rep.verdict) throw HypothesisFailed("task " + decl.command + " has no verdict to compare with expect");
      if (*rep.verdict != (*e == "pass")) rep.status = "unexpected";
    }
  } catch (const std::exception& e) {
    rep.status = "error";
    rep.error = e.what();
    rep.lines.clear();
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

template <class K>
RunReport run_in(const Document& doc, const RunOptions& opt) {
  RunReport out;
  out.field = K::name();
  out.seed = opt.seed;
  Context<K> ctx(doc, opt);
  const int n = static_cast<int>(doc.tasks.size());
  if (opt.parallel) {
    std::vector<std::future<TaskReport>> fs;
    for (int i = 0; i < n; ++i)
      fs.push_back(std::async(std::launch::async, [&, i] { return run_task(doc.tasks[i], i + 1, ctx); }));
    for (auto& f : fs) out.tasks.push_back(f.get());
  } else {
    for (int i = 0; i < n; ++i) out.tasks.push_back(run_task(doc.tasks[i], i + 1, ctx));
  }
  return out;
}

}  // namespace detail

/// Fields a document may declare; F101 when none is declared.
inline const std::vector<std::string>& supported_fields() {
  static const std::vector<std::string> f = {"F2", "F3", "F101", "Q"};
  return f;
}

inline RunReport run(const Document& doc, const RunOptions& opt = {}) {
  const std::string f = doc.field.value_or("F101");
  if (f == "F2") return detail::run_in<F2>(doc, opt);
  if (f == "F3") return detail::run_in<F3>(doc, opt);
  if (f == "F101") return detail::run_in<F101>(doc, opt);
  if (f == "Q") return detail::run_in<Q>(doc, opt);
  throw ParseError("unsupported field '" + f + "' (supported: F2 F3 F101 Q)", doc.field_loc);
}

}  // namespace fdhom::fdh
