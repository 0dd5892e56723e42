#include "selberg/dag.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <unordered_map>

#include "selberg/errors.hpp"

namespace selberg {

std::string VertexName::text() const {
  std::string s(1, tag);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i) s += '_';
    s += std::to_string(indices[i]);
  }
  return s;
}

VertexName VertexName::parse(const std::string& s) {
  static const std::string kTags = "xuypqrvw";
  if (s.size() < 2 || kTags.find(s[0]) == std::string::npos) throw PreconditionError("bad vertex name: " + s);
  VertexName v{s[0], {}};
  std::stringstream ss(s.substr(1));
  std::string part;
  while (std::getline(ss, part, '_')) {
    if (part.empty() || !std::all_of(part.begin(), part.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw PreconditionError("bad vertex name: " + s);
    v.indices.push_back(std::stoi(part));
  }
  if (v.indices.empty() || v.indices.size() > 3) throw PreconditionError("bad vertex name: " + s);
  return v;
}

VertexName vname(char tag, std::initializer_list<int> idx) { return {tag, std::vector<int>(idx)}; }

Dag::Dag(std::vector<VertexName> vertices, const std::vector<std::pair<VertexName, VertexName>>& edges)
    : names_(std::move(vertices)) {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (!index_.emplace(names_[i], static_cast<int>(i)).second)
      throw PreconditionError("duplicate vertex " + names_[i].text());
  out_.resize(names_.size());
  std::set<std::pair<int, int>> seen;
  for (const auto& [a, b] : edges) {
    int i = require(a), j = require(b);
    if (i == j) throw PreconditionError("self loop at " + a.text());
    if (!seen.emplace(i, j).second) throw PreconditionError("duplicate edge " + a.text() + "->" + b.text());
    edges_.emplace_back(i, j);
    out_[static_cast<std::size_t>(i)].push_back(j);
  }
  // Kahn's algorithm for the acyclicity check.
  std::vector<int> indeg(names_.size(), 0);
  for (const auto& [i, j] : edges_) ++indeg[static_cast<std::size_t>(j)];
  std::vector<int> stack;
  for (std::size_t v = 0; v < names_.size(); ++v)
    if (indeg[v] == 0) stack.push_back(static_cast<int>(v));
  std::size_t visited = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    ++visited;
    for (int w : out_[static_cast<std::size_t>(v)])
      if (--indeg[static_cast<std::size_t>(w)] == 0) stack.push_back(w);
  }
  if (visited != names_.size()) throw PreconditionError("graph has a directed cycle");
}

std::optional<int> Dag::index_of(const VertexName& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int Dag::require(const VertexName& v) const {
  auto i = index_of(v);
  if (!i) throw PreconditionError("unknown vertex " + v.text());
  return *i;
}

bool Dag::has_edge(int from, int to) const {
  const auto& o = out_[static_cast<std::size_t>(from)];
  return std::find(o.begin(), o.end(), to) != o.end();
}

bool Dag::reaches(int from, int to) const {
  std::vector<char> seen(size(), 0);
  std::vector<int> stack{from};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (v == to) return true;
    for (int w : out_[static_cast<std::size_t>(v)])
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        stack.push_back(w);
      }
  }
  return false;
}

std::vector<std::pair<VertexName, VertexName>> Dag::named_edges() const {
  std::vector<std::pair<VertexName, VertexName>> out;
  for (const auto& [i, j] : edges_)
    out.emplace_back(names_[static_cast<std::size_t>(i)], names_[static_cast<std::size_t>(j)]);
  return out;
}

Dag Dag::without_edges(const std::vector<std::pair<VertexName, VertexName>>& drop,
                       const std::vector<std::pair<VertexName, VertexName>>& add) const {
  auto e = named_edges();
  for (const auto& d : drop) {
    auto it = std::find(e.begin(), e.end(), d);
    if (it == e.end()) throw PreconditionError("edge " + d.first.text() + "->" + d.second.text() + " not present");
    e.erase(it);
  }
  e.insert(e.end(), add.begin(), add.end());
  return Dag(names_, e);
}

nlohmann::json Dag::to_json() const {
  auto verts = nlohmann::json::array();
  for (std::size_t i = 0; i < names_.size(); ++i) {
    auto outs = nlohmann::json::array();
    for (int j : out_[i]) outs.push_back(names_[static_cast<std::size_t>(j)].text());
    verts.push_back({{"name", names_[i].text()},
                     {"tag", std::string(1, names_[i].tag)},
                     {"indices", names_[i].indices},
                     {"out", outs}});
  }
  return {{"vertices", verts}, {"edge_count", edges_.size()}};
}

std::string Dag::to_dot() const {
  std::ostringstream os;
  os << "digraph G {\n";
  for (const auto& v : names_) os << "  \"" << v.text() << "\";\n";
  for (const auto& [i, j] : edges_)
    os << "  \"" << names_[static_cast<std::size_t>(i)].text() << "\" -> \""
       << names_[static_cast<std::size_t>(j)].text() << "\";\n";
  os << "}\n";
  return os.str();
}

GraphFamily parse_family(const std::string& s) {
  if (s == "GS") return GraphFamily::kGS;
  if (s == "GX") return GraphFamily::kGX;
  if (s == "GA") return GraphFamily::kGA;
  if (s == "GB") return GraphFamily::kGB;
  if (s == "GK") return GraphFamily::kGK;
  throw PreconditionError("unknown graph family " + s);
}

std::string family_name(GraphFamily f) {
  switch (f) {
    case GraphFamily::kGS:
      return "GS";
    case GraphFamily::kGX:
      return "GX";
    case GraphFamily::kGA:
      return "GA";
    case GraphFamily::kGB:
      return "GB";
    case GraphFamily::kGK:
      return "GK";
  }
  return "?";
}

namespace {

using Edges = std::vector<std::pair<VertexName, VertexName>>;

void check_nonneg(const std::vector<int>& v, const char* what) {
  for (int a : v)
    if (a < 0) throw PreconditionError(std::string(what) + " entries must be nonnegative");
}

}  // namespace

Dag graph_gs(int n, int a, int b, int c) {
  if (n < 0 || a < 1 || b < 1 || c < 1) throw PreconditionError("GS needs n >= 0 and a, b, c >= 1");
  std::vector<VertexName> v;
  Edges e;
  for (int i = 1; i <= n; ++i) v.push_back(vname('x', {i}));
  for (int i = 1; i < n; ++i) e.emplace_back(vname('x', {i + 1}), vname('x', {i}));
  for (int i = 1; i <= n; ++i)
    for (int k = 1; k < a; ++k) {
      v.push_back(vname('p', {i, k}));
      e.emplace_back(vname('x', {i}), vname('p', {i, k}));
    }
  for (int i = 1; i <= n; ++i)
    for (int k = 1; k < b; ++k) {
      v.push_back(vname('q', {i, k}));
      e.emplace_back(vname('q', {i, k}), vname('x', {i}));
    }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = 1; k <= 2 * c; ++k) {
        v.push_back(vname('r', {i, j, k}));
        e.emplace_back(vname('x', {j}), vname('r', {i, j, k}));
        e.emplace_back(vname('r', {i, j, k}), vname('x', {i}));
      }
  return Dag(std::move(v), e);
}

Dag graph_gx(const std::vector<int>& alpha) {
  check_nonneg(alpha, "alpha");
  int n = static_cast<int>(alpha.size());
  std::vector<VertexName> v;
  Edges e;
  for (int i = 1; i <= n; ++i) v.push_back(vname('u', {i}));
  for (int i = 1; i < n; ++i) e.emplace_back(vname('u', {i + 1}), vname('u', {i}));
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = 1; k <= alpha[static_cast<std::size_t>(i - 1)] * alpha[static_cast<std::size_t>(j - 1)]; ++k) {
        v.push_back(vname('w', {i, j, k}));
        e.emplace_back(vname('u', {j}), vname('w', {i, j, k}));
        e.emplace_back(vname('w', {i, j, k}), vname('u', {i}));
      }
  return Dag(std::move(v), e);
}

Dag graph_ga(const std::vector<int>& alpha_odd) {
  check_nonneg(alpha_odd, "alpha");
  if (alpha_odd.empty()) throw PreconditionError("GA needs at least one block");
  int m = 2 * static_cast<int>(alpha_odd.size()) - 1;
  auto al = [&](int i) { return i % 2 == 1 ? alpha_odd[static_cast<std::size_t>((i - 1) / 2)] : 1; };
  std::vector<VertexName> v;
  Edges e;
  for (int i = 1; i <= m; ++i) v.push_back(vname('u', {i}));
  for (int i = 1; i < m; ++i) e.emplace_back(vname('u', {i + 1}), vname('u', {i}));
  for (int i = 1; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j) {
      if (i % 2 == 1 && j % 2 == 1) continue;
      for (int k = 1; k <= al(i) * al(j); ++k) {
        v.push_back(vname('w', {i, j, k}));
        e.emplace_back(vname('u', {j}), vname('w', {i, j, k}));
        e.emplace_back(vname('w', {i, j, k}), vname('u', {i}));
      }
    }
  return Dag(std::move(v), e);
}

Dag graph_gb(const std::vector<int>& alpha_odd) {
  check_nonneg(alpha_odd, "alpha");
  if (alpha_odd.empty()) throw PreconditionError("GB needs at least one block");
  int m = 2 * static_cast<int>(alpha_odd.size()) - 1;
  auto al = [&](int i) { return alpha_odd[static_cast<std::size_t>((i - 1) / 2)]; };
  std::vector<VertexName> v;
  Edges e;
  for (int i = 1; i <= m; i += 2) v.push_back(vname('u', {i}));
  for (int i = 1; i + 2 <= m; i += 2) e.emplace_back(vname('u', {i + 2}), vname('u', {i}));
  for (int i = 1; i <= m; i += 2)
    for (int j = i + 2; j <= m; j += 2)
      for (int k = 1; k <= al(i) + al(j) + 1; ++k) {
        v.push_back(vname('w', {i, j, k}));
        e.emplace_back(vname('u', {j}), vname('w', {i, j, k}));
        e.emplace_back(vname('w', {i, j, k}), vname('u', {i}));
      }
  return Dag(std::move(v), e);
}

Dag graph_gk(int n, int a, int b, int c) {
  if (n < 1 || a < 1 || b < 1 || c < 1) throw PreconditionError("GK needs n, a, b, c >= 1");
  std::vector<VertexName> v;
  Edges e;
  for (int i = 1; i <= n; ++i) v.push_back(vname('x', {i}));
  for (int i = 1; i < n; ++i) {
    v.push_back(vname('y', {i}));
    e.emplace_back(vname('x', {i + 1}), vname('y', {i}));
    e.emplace_back(vname('y', {i}), vname('x', {i}));
  }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      v.push_back(vname('v', {i, j}));
      e.emplace_back(vname('x', {j}), vname('v', {i, j}));
      e.emplace_back(vname('v', {i, j}), vname('x', {i}));
    }
  for (int i = 1; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      v.push_back(vname('w', {i, j}));
      e.emplace_back(vname('y', {j}), vname('w', {i, j}));
      e.emplace_back(vname('w', {i, j}), vname('y', {i}));
    }
  for (int i = 1; i <= n; ++i)
    for (int k = 1; k < a; ++k) {
      v.push_back(vname('p', {i, k}));
      e.emplace_back(vname('x', {i}), vname('p', {i, k}));
    }
  for (int i = 1; i <= n; ++i)
    for (int k = 1; k < b; ++k) {
      v.push_back(vname('q', {i, k}));
      e.emplace_back(vname('q', {i, k}), vname('x', {i}));
    }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j < n; ++j)
      for (int k = 1; k < c; ++k) {
        VertexName r = vname('r', {i, j, k});
        v.push_back(r);
        if (i <= j) {
          e.emplace_back(vname('y', {j}), r);
          e.emplace_back(r, vname('x', {i}));
        } else {
          e.emplace_back(vname('x', {i}), r);
          e.emplace_back(r, vname('y', {j}));
        }
      }
  return Dag(std::move(v), e);
}

Dag build_graph(GraphFamily family, const std::vector<int>& params) {
  auto need4 = [&]() {
    if (params.size() != 4) throw PreconditionError(family_name(family) + " needs parameters n,a,b,c");
  };
  switch (family) {
    case GraphFamily::kGS:
      need4();
      return graph_gs(params[0], params[1], params[2], params[3]);
    case GraphFamily::kGK:
      need4();
      return graph_gk(params[0], params[1], params[2], params[3]);
    case GraphFamily::kGX:
      return graph_gx(params);
    case GraphFamily::kGA:
      return graph_ga(params);
    case GraphFamily::kGB:
      return graph_gb(params);
  }
  throw PreconditionError("unknown graph family");
}

Fixing resolve_fixing(const Dag& g, const std::map<VertexName, int>& fixed) {
  Fixing out;
  for (const auto& [v, r] : fixed) out[g.require(v)] = r;
  return out;
}

namespace {

struct Prepared {
  std::size_t n;
  std::vector<std::uint64_t> need;     // out-neighbour mask per vertex
  std::vector<int> at_rank;            // vertex fixed at rank k (1-based), or -1
  std::uint64_t fixed_mask = 0;
};

Prepared prepare(const Dag& g, const Fixing& fixed) {
  Prepared p;
  p.n = g.size();
  if (p.n > Dag::kMaxVertices) throw LimitExceeded("topological counting is limited to 64 vertices");
  p.need.assign(p.n, 0);
  for (const auto& [i, j] : g.edges()) p.need[static_cast<std::size_t>(i)] |= std::uint64_t{1} << j;
  p.at_rank.assign(p.n + 1, -1);
  for (const auto& [v, r] : fixed) {
    if (v < 0 || static_cast<std::size_t>(v) >= p.n) throw PreconditionError("fixing names an unknown vertex");
    if (r < 1 || static_cast<std::size_t>(r) > p.n) throw PreconditionError("fixed rank outside [N]");
    if (p.at_rank[static_cast<std::size_t>(r)] != -1) throw PreconditionError("two vertices fixed to one rank");
    p.at_rank[static_cast<std::size_t>(r)] = v;
    p.fixed_mask |= std::uint64_t{1} << v;
  }
  return p;
}

}  // namespace

mpz_class count_topo(const Dag& g, const Fixing& fixed) {
  Prepared p = prepare(g, fixed);
  if (p.n == 0) return 1;
  std::unordered_map<std::uint64_t, mpz_class> cur{{0, 1}}, next;
  for (std::size_t k = 1; k <= p.n; ++k) {
    next.clear();
    int forced = p.at_rank[k];
    for (const auto& [mask, cnt] : cur) {
      auto try_add = [&](std::size_t v) {
        std::uint64_t bit = std::uint64_t{1} << v;
        if ((mask & bit) || (p.need[v] & ~mask)) return;
        next[mask | bit] += cnt;
      };
      if (forced >= 0) {
        try_add(static_cast<std::size_t>(forced));
      } else {
        for (std::size_t v = 0; v < p.n; ++v)
          if (!(p.fixed_mask >> v & 1)) try_add(v);
      }
    }
    std::swap(cur, next);
    if (cur.empty()) return 0;
  }
  mpz_class total = 0;
  for (const auto& [mask, cnt] : cur) total += cnt;
  return total;
}

std::vector<Labeling> enumerate_topo(const Dag& g, const Fixing& fixed) {
  Prepared p = prepare(g, fixed);
  std::vector<Labeling> out;
  Labeling ranks(p.n, 0);
  auto rec = [&](auto&& self, std::uint64_t mask, std::size_t k) -> void {
    if (k > p.n) {
      out.push_back(ranks);
      return;
    }
    int forced = p.at_rank[k];
    for (std::size_t v = 0; v < p.n; ++v) {
      if (forced >= 0 ? static_cast<std::size_t>(forced) != v : (p.fixed_mask >> v & 1)) continue;
      std::uint64_t bit = std::uint64_t{1} << v;
      if ((mask & bit) || (p.need[v] & ~mask)) continue;
      ranks[v] = static_cast<int>(k);
      self(self, mask | bit, k + 1);
    }
  };
  rec(rec, 0, 1);
  return out;
}

SignedSet topo_set(const Dag& g, const Fixing& fixed) {
  std::vector<SignedElement> out;
  for (const auto& f : enumerate_topo(g, fixed)) out.push_back({Payload::ints(f), Monomial::one()});
  return SignedSet(std::move(out));
}

}  // namespace selberg
