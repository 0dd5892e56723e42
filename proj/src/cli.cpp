#include "selberg/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "selberg/crux.hpp"
#include "selberg/dag.hpp"
#include "selberg/errors.hpp"
#include "selberg/matrix.hpp"
#include "selberg/selberg.hpp"

namespace selberg {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<int> parse_ints(const std::string& flag, const std::string& text) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError(flag + ": expected comma-separated integers, got '" + text + "'");
    }
  }
  return out;
}

std::map<VertexName, int> parse_fix(const std::string& text) {
  std::map<VertexName, int> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    auto eq = part.find('=');
    if (eq == std::string::npos) throw UsageError("--fix: expected vertex=rank, got '" + part + "'");
    VertexName v;
    try {
      v = VertexName::parse(part.substr(0, eq));
    } catch (const std::exception&) {
      throw UsageError("--fix: bad vertex name '" + part.substr(0, eq) + "'");
    }
    out[v] = parse_ints("--fix", part.substr(eq + 1)).at(0);
  }
  return out;
}

std::vector<int> need(const std::string& flag, const std::vector<int>& v, std::size_t size) {
  if (v.size() != size) throw UsageError(flag + ": expected " + std::to_string(size) + " integers");
  return v;
}

std::vector<VarId> xs_for(std::size_t n) {
  std::vector<VarId> xs;
  for (std::size_t i = 1; i <= n; ++i) xs.push_back(VarId::x(static_cast<int>(i)));
  return xs;
}

std::vector<VarId> ys_for(int k) {
  std::vector<VarId> ys;
  for (int i = 1; i <= k; ++i) ys.push_back(VarId::y(i));
  return ys;
}

void write_json(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

void write_file(const std::string& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw UsageError("--out: cannot open '" + path + "'");
  f << j.dump(2) << "\n";
}

std::vector<std::vector<int>> increasing_tuples(std::size_t len, int max) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int from) -> void {
    if (cur.size() == len) {
      out.push_back(cur);
      return;
    }
    for (int v = from; v <= max; ++v) {
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

struct Opts {
  std::string format = "text";
  // count
  std::string graph, params, alpha, fix, dot, method = "dp";
  // formula / verify
  std::string kind, methods = "dp,formula", p, series;
  int n = -1, a = -1, b = -1, c = -1, t = -1, ys = 0;
  bool check = false, all = false;
  std::string out_path;
};

std::vector<int> nabc(const Opts& o) {
  if (!o.params.empty()) return need("--params", parse_ints("--params", o.params), 4);
  if (o.n < 0 || o.a < 0 || o.b < 0 || o.c < 0) throw UsageError("--n, --a, --b, --c (or --params) are required");
  return {o.n, o.a, o.b, o.c};
}

int do_count(const Opts& o, std::ostream& out) {
  GraphFamily fam;
  try {
    fam = parse_family(o.graph);
  } catch (const std::exception&) {
    throw UsageError("--graph: unknown family '" + o.graph + "'");
  }
  std::vector<int> params = parse_ints("--params", o.params.empty() ? o.alpha : o.params);
  Dag g = build_graph(fam, params);
  Fixing fixing = resolve_fixing(g, parse_fix(o.fix));
  if (!o.dot.empty()) {
    std::ofstream f(o.dot);
    if (!f) throw UsageError("--emit-dot: cannot open '" + o.dot + "'");
    f << g.to_dot();
  }
  mpz_class count;
  if (o.method == "dp") {
    count = count_topo(g, fixing);
  } else if (o.method == "brute") {
    if (g.size() > brute_vertex_cap()) throw LimitExceeded("brute force is limited to 10 vertices");
    count = static_cast<unsigned long>(enumerate_topo(g, fixing).size());
  } else {
    throw UsageError("--method: expected dp or brute");
  }
  if (o.format == "json") {
    json fx = json::object();
    for (const auto& [v, r] : fixing) fx[g.vertices()[static_cast<std::size_t>(v)].text()] = r;
    write_json(out, {{"graph", family_name(fam)},
                     {"params", params},
                     {"vertices", g.size()},
                     {"fixing", fx},
                     {"count", count.get_str()}});
  } else {
    out << count.get_str() << "\n";
  }
  return kExitOk;
}

int do_formula(const Opts& o, std::ostream& out) {
  FormulaKind kind;
  try {
    kind = parse_formula_kind(o.kind);
  } catch (const std::exception&) {
    throw UsageError("--kind: expected combSelberg or intro");
  }
  std::vector<int> params;
  if (kind == FormulaKind::kIntro) {
    params = o.params.empty() ? std::vector<int>{o.n, o.t} : need("--params", parse_ints("--params", o.params), 2);
    if (params[0] < 0 || params[1] < 0) throw UsageError("--n and --t are required for intro");
  } else {
    params = nabc(o);
  }
  mpz_class v = product_formula(kind, params);
  bool outside = kind == FormulaKind::kIntro && params[1] == 0;
  if (o.format == "json") {
    json j{{"kind", o.kind}, {"params", params}, {"value", v.get_str()}};
    if (kind == FormulaKind::kIntro) j["outside_derivation"] = outside;
    write_json(out, j);
  } else {
    out << v.get_str() << "\n";
    if (outside) out << "note: t = 0 lies outside the displayed derivation\n";
  }
  return kExitOk;
}

int do_verify_selberg(const Opts& o, std::ostream& out) {
  std::vector<int> p = nabc(o);
  std::vector<CountMethod> ms;
  std::stringstream ss(o.methods);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      ms.push_back(parse_method(part));
    } catch (const std::exception&) {
      throw UsageError("--methods: unknown method '" + part + "'");
    }
  }
  SelbergReport r = verify_selberg(p[0], p[1], p[2], p[3], ms);
  if (o.format == "json")
    write_json(out, r.to_json());
  else
    out << r.table();
  return r.equal ? kExitOk : kExitVerifyFailed;
}

int do_verify_crux_prime(const Opts& o, std::ostream& out) {
  std::vector<int> alpha = parse_ints("--alpha", o.alpha);
  std::vector<int> odd = crux_odd_part(alpha);
  std::vector<std::vector<int>> ps;
  if (o.all) {
    ps = increasing_tuples(odd.size(), static_cast<int>(graph_ga(odd).size()));
  } else {
    ps.push_back(need("--p", parse_ints("--p", o.p), odd.size()));
  }
  bool ok = true;
  json rows = json::array();
  for (const auto& p : ps) {
    CruxPrimeReport r = crux_prime_check(alpha, p);
    ok = ok && r.ok;
    rows.push_back({{"p", p},
                    {"count_a", r.count_a.get_str()},
                    {"count_b", r.count_b.get_str()},
                    {"lhs", r.lhs.get_str()},
                    {"rhs", r.rhs.get_str()},
                    {"ok", r.ok}});
    if (o.format != "json") {
      out << "p=";
      for (std::size_t i = 0; i < p.size(); ++i) out << (i ? "," : "") << p[i];
      out << "  lhs=" << r.lhs.get_str() << "  rhs=" << r.rhs.get_str() << "  ok=" << (r.ok ? "true" : "false")
          << "\n";
    }
  }
  if (o.format == "json") write_json(out, {{"alpha", alpha}, {"checks", rows}, {"ok", ok}});
  return ok ? kExitOk : kExitVerifyFailed;
}

int do_verify_gk(const Opts& o, std::ostream& out) {
  std::vector<int> p = nabc(o);
  GkReport r = gk_reduction(p[0], p[1], p[2], p[3], o.check);
  ExactFraction rec = r.factor_reduce / r.factor_same;
  bool ok = !o.check || (*r.same_ok && *r.reduce_ok);
  if (o.format == "json") {
    json j{{"params", p},
           {"factor_same", r.factor_same.text()},
           {"factor_reduce", r.factor_reduce.text()},
           {"recurrence_factor", rec.text()}};
    if (o.check) {
      j["topo_gk"] = r.topo_gk->get_str();
      j["same_ok"] = *r.same_ok;
      j["reduce_ok"] = *r.reduce_ok;
    }
    write_json(out, j);
  } else {
    out << "factor_same: " << r.factor_same.text() << "\n"
        << "factor_reduce: " << r.factor_reduce.text() << "\n"
        << "recurrence_factor: " << rec.text() << "\n";
    if (o.check)
      out << "topo_gk: " << r.topo_gk->get_str() << "\n"
          << "same_ok: " << (*r.same_ok ? "true" : "false") << "\n"
          << "reduce_ok: " << (*r.reduce_ok ? "true" : "false") << "\n";
  }
  return ok ? kExitOk : kExitVerifyFailed;
}

json report_json(const VerifyReport& v) { return {{"ok", v.ok}, {"violations", v.violations}}; }

int do_certify_crux(const Opts& o, std::ostream& out, bool export_pairs) {
  std::vector<int> alpha = parse_ints("--alpha", o.alpha);
  std::vector<int> odd = crux_odd_part(alpha);
  std::vector<int> p = need("--p", parse_ints("--p", o.p), odd.size());
  CruxCertificate cert = crux_sijection(alpha, DiagonalFixing(p));
  VerifyReport v = sij_verify(cert.sij);
  bool ok = v.ok && cert.sij.is_bijection();
  json summary = cert.summary();
  if (export_pairs && !o.out_path.empty()) {
    json full{{"alpha", alpha}, {"p_odd", p}, {"summary", summary}, {"verify", report_json(v)},
              {"sijection", cert.sij.to_json()}};
    write_file(o.out_path, full);
  }
  if (o.format == "json") {
    write_json(out, {{"alpha", alpha}, {"p_odd", p}, {"summary", summary}, {"verify", report_json(v)}});
  } else {
    out << "left: " << cert.sij.left().size() << "  right: " << cert.sij.right().size() << "\n";
    for (const auto& s : cert.stages) out << "  " << s.stage << ": " << s.left << " -> " << s.right << "\n";
    out << "verified: " << (ok ? "true" : "false") << "\n";
  }
  return ok ? kExitOk : kExitVerifyFailed;
}

int do_certify_vandermonde(const Opts& o, std::ostream& out) {
  std::vector<int> alpha = parse_ints("--alpha", o.alpha);
  std::vector<VarId> xs = xs_for(alpha.size()), ys = ys_for(o.ys);
  std::vector<GvTraceEntry> trace;
  Sijection s = gv_sijection(ys, xs, alpha, &trace);
  VerifyReport v = sij_verify(s);
  IntPolynomial expect = expand_signed_product(alpha, xs);
  bool weights = ss_weight(s.left()) == expect && ss_weight(s.right()) == expect;
  bool ok = v.ok && weights;
  json tr = json::array();
  for (const auto& t : trace) tr.push_back({{"step", t.step}, {"size", t.size}});
  if (!o.out_path.empty())
    write_file(o.out_path, {{"alpha", alpha}, {"ys", o.ys}, {"trace", tr}, {"verify", report_json(v)},
                            {"sijection", s.to_json()}});
  if (o.format == "json") {
    write_json(out, {{"alpha", alpha}, {"ys", o.ys}, {"left", s.left().size()}, {"right", s.right().size()},
                     {"weights_match", weights}, {"trace", tr}, {"verify", report_json(v)}});
  } else {
    out << "left: " << s.left().size() << "  right: " << s.right().size() << "\n";
    for (const auto& t : trace) out << "  " << t.step << ": " << t.size << "\n";
    out << "weights match: " << (weights ? "true" : "false") << "\n"
        << "verified: " << (ok ? "true" : "false") << "\n";
  }
  return ok ? kExitOk : kExitVerifyFailed;
}

int do_vandermonde(const Opts& o, std::ostream& out) {
  std::vector<int> alpha = parse_ints("--alpha", o.alpha);
  std::vector<VarId> xs = xs_for(alpha.size());
  if (!o.series.empty()) {
    std::vector<int> c = parse_ints("--series", o.series);
    std::vector<long> cl(c.begin(), c.end());
    int m = 0;
    for (int a : alpha) m += a;
    // Coefficients past t^m never reach an entry but are accepted.
    int order = std::max(m, static_cast<int>(cl.size()) - 1);
    SeriesDetReport r = appendix_det_check(SeriesTrunc::from_integers(cl, order), xs, alpha);
    if (o.format == "json")
      write_json(out, {{"alpha", alpha}, {"series", c}, {"det", r.lhs.text()}, {"product", r.rhs.text()},
                       {"ok", r.ok}});
    else
      out << "det: " << r.lhs.text() << "\nproduct: " << r.rhs.text() << "\nequal: " << (r.ok ? "true" : "false")
          << "\n";
    return r.ok ? kExitOk : kExitVerifyFailed;
  }
  SignedSetMatrix h = build_H(ys_for(o.ys), xs, alpha);
  IntPolynomial det = permutation_determinant(weight_matrix(h));
  IntPolynomial prod = expand_signed_product(alpha, xs);
  bool ok = det == prod;
  if (o.format == "json")
    write_json(out, {{"alpha", alpha}, {"ys", o.ys}, {"det", det.text()}, {"product", prod.text()}, {"ok", ok}});
  else
    out << "det: " << det.text() << "\nproduct: " << prod.text() << "\nequal: " << (ok ? "true" : "false") << "\n";
  return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact counts, formulas and sijection certificates for the Selberg graph families", "selberg"};
  app.require_subcommand(1);
  Opts o;
  auto fmt = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  };
  auto abcn = [&](CLI::App* sub) {
    sub->add_option("--n", o.n);
    sub->add_option("--a", o.a);
    sub->add_option("--b", o.b);
    sub->add_option("--c", o.c);
    sub->add_option("--params", o.params, "n,a,b,c");
  };

  CLI::App* count = app.add_subcommand("count", "count topological orders of a graph family");
  count->add_option("--graph", o.graph, "GS, GX, GA, GB or GK")->required();
  count->add_option("--params", o.params, "family parameters");
  count->add_option("--alpha", o.alpha, "alpha for GX, GA, GB");
  count->add_option("--fix", o.fix, "fixed ranks, e.g. u1=1,u3=6");
  count->add_option("--emit-dot", o.dot, "write the graph in DOT format to this file");
  count->add_option("--method", o.method, "dp or brute");
  fmt(count);

  CLI::App* formula = app.add_subcommand("formula", "evaluate a closed-form product");
  formula->add_option("--kind", o.kind, "combSelberg or intro")->required();
  abcn(formula);
  formula->add_option("--t", o.t);
  fmt(formula);

  CLI::App* verify = app.add_subcommand("verify", "cross-check identities");
  verify->require_subcommand(1);
  CLI::App* v_sel = verify->add_subcommand("selberg", "compare counting methods on G_S");
  abcn(v_sel);
  v_sel->add_option("--methods", o.methods, "comma list of brute, dp, recurrence, formula");
  fmt(v_sel);
  CLI::App* v_cp = verify->add_subcommand("crux-prime", "compare G_A' and G_B' counts with fixed odd ranks");
  v_cp->add_option("--alpha", o.alpha)->required();
  v_cp->add_option("--p", o.p, "ranks of u1,u3,...");
  v_cp->add_flag("--all", o.all, "every increasing choice of ranks");
  fmt(v_cp);
  CLI::App* v_gk = verify->add_subcommand("gk", "the two G_K reduction factors");
  abcn(v_gk);
  v_gk->add_flag("--check", o.check, "compare against direct counts");
  fmt(v_gk);
  CLI::App* v_crux = verify->add_subcommand("crux", "build and verify the crux bijection");
  v_crux->add_option("--alpha", o.alpha)->required();
  v_crux->add_option("--p", o.p, "ranks of u1,u3,...")->required();
  fmt(v_crux);

  CLI::App* certify = app.add_subcommand("certify", "export sijection certificates");
  certify->require_subcommand(1);
  CLI::App* c_crux = certify->add_subcommand("crux", "the crux bijection");
  c_crux->add_option("--alpha", o.alpha)->required();
  c_crux->add_option("--p", o.p)->required();
  c_crux->add_option("--out", o.out_path, "certificate file");
  fmt(c_crux);
  CLI::App* c_vdm = certify->add_subcommand("vandermonde", "the generalized Vandermonde sijection");
  c_vdm->add_option("--alpha", o.alpha)->required();
  c_vdm->add_option("--y", o.ys, "number of extra y variables");
  c_vdm->add_option("--out", o.out_path, "certificate file");
  fmt(c_vdm);

  CLI::App* vdm = app.add_subcommand("vandermonde", "determinant of H against the signed product");
  vdm->add_option("--alpha", o.alpha)->required();
  vdm->add_option("--y", o.ys, "number of extra y variables");
  vdm->add_option("--series", o.series, "integer coefficients of f(t), constant first");
  fmt(vdm);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (count->parsed()) return do_count(o, out);
    if (formula->parsed()) return do_formula(o, out);
    if (v_sel->parsed()) return do_verify_selberg(o, out);
    if (v_cp->parsed()) return do_verify_crux_prime(o, out);
    if (v_gk->parsed()) return do_verify_gk(o, out);
    if (v_crux->parsed()) return do_certify_crux(o, out, false);
    if (c_crux->parsed()) return do_certify_crux(o, out, true);
    if (c_vdm->parsed()) return do_certify_vandermonde(o, out);
    if (vdm->parsed()) return do_vandermonde(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const LimitExceeded& e) {
    err << "limit exceeded: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerifyFailed;
  }
  err << "usage error: no command\n";
  return kExitUsage;
}

}  // namespace selberg
