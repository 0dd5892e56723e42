#include "selberg/selberg.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <deque>
#include <future>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "selberg/crux.hpp"
#include "selberg/dag.hpp"
#include "selberg/errors.hpp"

namespace selberg {

ExactFraction::ExactFraction(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw PreconditionError("zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

ExactFraction ExactFraction::from(const mpq_class& q) {
  ExactFraction f;
  f.v_ = q;
  f.v_.canonicalize();
  return f;
}

ExactFraction ExactFraction::operator/(const ExactFraction& o) const {
  if (o.v_ == 0) throw PreconditionError("division by zero");
  return from(v_ / o.v_);
}

mpz_class ExactFraction::to_integer(const char* what) const {
  if (!is_integer()) throw InternalError(std::string(what) + " is not an integer: " + text());
  return v_.get_num();
}

std::string ExactFraction::text() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

const mpz_class& fact(unsigned long k) {
  static std::mutex mu;
  static std::deque<mpz_class> memo{1};  // stable references across growth
  std::lock_guard<std::mutex> lock(mu);
  while (memo.size() <= k) memo.push_back(memo.back() * static_cast<unsigned long>(memo.size()));
  return memo[k];
}

namespace {

unsigned long nonneg(long v) {
  if (v < 0) throw InternalError("negative factorial argument");
  return static_cast<unsigned long>(v);
}

ExactFraction ffrac(long k) { return ExactFraction(fact(nonneg(k))); }

ExactFraction ipow(const ExactFraction& b, long e) {
  ExactFraction r(1);
  for (long i = 0; i < e; ++i) r = r * b;
  return r;
}

}  // namespace

FormulaKind parse_formula_kind(const std::string& s) {
  if (s == "combSelberg") return FormulaKind::kCombSelberg;
  if (s == "intro") return FormulaKind::kIntro;
  throw PreconditionError("unknown formula kind: " + s);
}

mpz_class comb_selberg_formula(int n, int a, int b, int c) {
  if (n < 0 || a < 1 || b < 1 || c < 1) throw PreconditionError("need n >= 0 and a, b, c >= 1");
  long ln = n, la = a, lb = b, lc = c;
  ExactFraction v = ffrac(ln * (la + lb - 1) + ln * (ln - 1) * lc);
  for (long j = 0; j < ln; ++j) {
    ExactFraction num = ffrac(la + lc * j - 1) * ffrac(lb + lc * j - 1) * ffrac(lc + lc * j - 1);
    ExactFraction den = ffrac(lc - 1) * ffrac(la + lb + (j + ln - 1) * lc - 1);
    v = v * (num / den);
  }
  return v.to_integer("combSelberg product");
}

mpz_class intro_formula(int n, int t) {
  if (n < 2 || t < 0) throw PreconditionError("need n >= 2 and t >= 0");
  long ln = n, lt = t, pairs = ln * (ln - 1) / 2;
  ExactFraction v = ffrac(ln + 2 * lt * pairs) / (ffrac(ln) * ipow(ffrac(2 * lt), pairs));
  for (long j = 1; j <= ln; ++j) {
    ExactFraction num = ipow(ffrac((j - 1) * lt), 2) * ffrac(j * lt);
    ExactFraction den = ffrac(lt) * ffrac(1 + (ln + j - 2) * lt);
    v = v * (num / den);
  }
  return v.to_integer("intro product");
}

mpz_class product_formula(FormulaKind kind, const std::vector<int>& params) {
  if (kind == FormulaKind::kCombSelberg) {
    if (params.size() != 4) throw PreconditionError("combSelberg takes n,a,b,c");
    return comb_selberg_formula(params[0], params[1], params[2], params[3]);
  }
  if (params.size() != 2) throw PreconditionError("intro takes n,t");
  return intro_formula(params[0], params[1]);
}

CruxPrimeReport crux_prime_check(const std::vector<int>& alpha, const std::vector<int>& p_odd) {
  std::vector<int> odd = crux_odd_part(alpha);
  if (p_odd.size() != odd.size()) throw PreconditionError("need one rank per odd position");
  Dag ga = graph_ga(odd), gb = graph_gb(odd);
  std::map<VertexName, int> fa, fb;
  for (std::size_t i = 0; i < odd.size(); ++i) {
    int p = p_odd[i];
    if (p < 1 || static_cast<std::size_t>(p) > ga.size()) throw PreconditionError("rank outside [N]");
    fa[vname('u', {static_cast<int>(2 * i + 1)})] = p;
    fb[vname('u', {static_cast<int>(2 * i + 1)})] = p;
  }
  CruxPrimeReport r;
  r.count_a = count_topo(ga, resolve_fixing(ga, fa));
  r.count_b = count_topo(gb, resolve_fixing(gb, fb));
  unsigned long sum = 0;
  mpz_class prod = 1;
  for (int a : alpha) sum += static_cast<unsigned long>(a);
  for (int a : odd) prod *= fact(static_cast<unsigned long>(a));
  r.lhs = fact(sum) * r.count_a;
  r.rhs = prod * r.count_b;
  r.ok = r.lhs == r.rhs;
  return r;
}

GkReport gk_reduction(int n, int a, int b, int c, bool check) {
  if (n < 1 || a < 1 || b < 1 || c < 1) throw PreconditionError("need n, a, b, c >= 1");
  long ln = n, la = a, lb = b, lc = c;
  GkReport r;
  r.factor_same = ipow(ffrac(lc - 1), ln) / ffrac(ln * lc - 1);
  // Labels for the a + b - 1 vertices left isolated, times the G_A' / G_B' count ratio.
  r.factor_reduce = ffrac(ln * (la + lb + lc * (ln - 1) - 1)) / ffrac((ln - 1) * (la + lb + lc * ln - 1)) *
                    (ffrac(la - 1) * ffrac(lb - 1) * ipow(ffrac(lc - 1), ln - 1)) /
                    ffrac(la + lb + (ln - 1) * lc - 1);
  if (!check) return r;
  Dag gk = graph_gk(n, a, b, c);
  if (gk.size() > gk_check_vertex_cap()) throw LimitExceeded("G_K too large for the check mode");
  Dag gs = graph_gs(n, a, b, c), gs2 = graph_gs(n - 1, a + c, b + c, c);
  r.topo_gk = count_topo(gk);
  r.topo_gs_same = count_topo(gs);
  r.topo_gs_reduced = count_topo(gs2);
  r.same_ok = ExactFraction(*r.topo_gk) == r.factor_same * ExactFraction(*r.topo_gs_same);
  r.reduce_ok = ExactFraction(*r.topo_gk) == r.factor_reduce * ExactFraction(*r.topo_gs_reduced);
  return r;
}

ExactFraction recurrence_factor(int n, int a, int b, int c) {
  GkReport r = gk_reduction(n, a, b, c);
  return r.factor_reduce / r.factor_same;
}

mpz_class topo_gs_via_recurrence(int n, int a, int b, int c) {
  if (n < 0 || a < 1 || b < 1 || c < 1) throw PreconditionError("need n >= 0 and a, b, c >= 1");
  // Bottom of the chain is G_S(0, a + nc, b + nc, c), which has no vertices.
  mpz_class v = 1;
  for (int k = 1; k <= n; ++k) {
    int shift = (n - k) * c;
    ExactFraction next = recurrence_factor(k, a + shift, b + shift, c) * ExactFraction(v);
    v = next.to_integer("recurrence step");
  }
  return v;
}

CountMethod parse_method(const std::string& s) {
  if (s == "brute") return CountMethod::kBrute;
  if (s == "dp") return CountMethod::kDp;
  if (s == "recurrence") return CountMethod::kRecurrence;
  if (s == "formula") return CountMethod::kFormula;
  throw PreconditionError("unknown method: " + s);
}

std::string method_name(CountMethod m) {
  switch (m) {
    case CountMethod::kBrute: return "brute";
    case CountMethod::kDp: return "dp";
    case CountMethod::kRecurrence: return "recurrence";
    case CountMethod::kFormula: return "formula";
  }
  return "?";
}

namespace {

std::size_t env_cap(std::size_t fallback) {
  const char* s = std::getenv("SELBERG_MAX_VERTICES");
  if (!s || !*s) return fallback;
  char* end = nullptr;
  unsigned long v = std::strtoul(s, &end, 10);
  if (*end != '\0' || v == 0) throw PreconditionError("SELBERG_MAX_VERTICES must be a positive integer");
  return std::min<std::size_t>(v, Dag::kMaxVertices);
}

}  // namespace

std::size_t brute_vertex_cap() { return 10; }
std::size_t dp_vertex_cap() { return env_cap(20); }
std::size_t gk_check_vertex_cap() { return env_cap(24); }

int gs_vertex_count(int n, int a, int b, int c) { return n * (a + b - 1) + n * (n - 1) * c; }

nlohmann::json SelbergReport::to_json() const {
  nlohmann::json mv = nlohmann::json::object();
  for (const auto& [m, v] : values) mv[method_name(m)] = v.get_str();
  return {{"params", params}, {"method_values", mv}, {"equal", equal}};
}

std::string SelbergReport::table() const {
  std::ostringstream os;
  os << "params: " << params[0] << "," << params[1] << "," << params[2] << "," << params[3] << "\n";
  for (const auto& [m, v] : values) os << "  " << method_name(m) << ": " << v.get_str() << "\n";
  os << "equal: " << (equal ? "true" : "false") << "\n";
  return os.str();
}

SelbergReport verify_selberg(int n, int a, int b, int c, const std::vector<CountMethod>& methods) {
  if (n < 0 || a < 1 || b < 1 || c < 1) throw PreconditionError("need n >= 0 and a, b, c >= 1");
  if (methods.empty()) throw PreconditionError("no methods requested");
  SelbergReport r;
  r.params = {n, a, b, c};
  auto vertices = static_cast<std::size_t>(gs_vertex_count(n, a, b, c));
  for (CountMethod m : methods) {
    mpz_class v;
    switch (m) {
      case CountMethod::kBrute:
        if (vertices > brute_vertex_cap()) throw LimitExceeded("brute force is limited to 10 vertices");
        v = static_cast<unsigned long>(enumerate_topo(graph_gs(n, a, b, c)).size());
        break;
      case CountMethod::kDp:
        if (vertices > dp_vertex_cap()) throw LimitExceeded("downset DP is over the vertex cap");
        v = count_topo(graph_gs(n, a, b, c));
        break;
      case CountMethod::kRecurrence:
        v = topo_gs_via_recurrence(n, a, b, c);
        break;
      case CountMethod::kFormula:
        v = comb_selberg_formula(n, a, b, c);
        break;
    }
    r.values.emplace_back(m, v);
  }
  r.equal = std::all_of(r.values.begin(), r.values.end(),
                        [&](const auto& mv) { return mv.second == r.values.front().second; });
  return r;
}

std::vector<SelbergReport> verify_selberg_many(const std::vector<std::vector<int>>& tuples,
                                               const std::vector<CountMethod>& methods) {
  for (const auto& t : tuples)
    if (t.size() != 4) throw PreconditionError("tuples are n,a,b,c");
  std::vector<SelbergReport> out(tuples.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tuples.size(); i = next++) {
      const auto& t = tuples[i];
      out[i] = verify_selberg(t[0], t[1], t[2], t[3], methods);
    }
  };
  std::size_t workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) jobs.push_back(std::async(std::launch::async, worker));
  for (auto& j : jobs) j.get();
  return out;
}

}  // namespace selberg
