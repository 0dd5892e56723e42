#pragma once

// Directed acyclic graphs of the Selberg families and exact counting of their
// topological orders.
//
// Convention: an edge i -> j forces f(i) > f(j). Labels are therefore handed
// out from 1 upward to vertices whose out-neighbours are all labelled.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"
#include "selberg/signed_set.hpp"

namespace selberg {

struct VertexName {
  char tag = 'u';  // one of x u y p q r v w
  std::vector<int> indices;

  // u1, p1_2, r1_2_3
  std::string text() const;
  static VertexName parse(const std::string& s);

  auto operator<=>(const VertexName&) const = default;
};

VertexName vname(char tag, std::initializer_list<int> idx);

class Dag {
 public:
  static constexpr std::size_t kMaxVertices = 64;

  Dag() = default;
  // Rejects duplicate vertices, duplicate edges, unknown endpoints and cycles.
  Dag(std::vector<VertexName> vertices, const std::vector<std::pair<VertexName, VertexName>>& edges);

  std::size_t size() const { return names_.size(); }
  const std::vector<VertexName>& vertices() const { return names_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<std::vector<int>>& out() const { return out_; }
  std::optional<int> index_of(const VertexName& v) const;
  int require(const VertexName& v) const;
  bool has_edge(int from, int to) const;
  // Whether `to` is reachable from `from` along edges.
  bool reaches(int from, int to) const;

  std::vector<std::pair<VertexName, VertexName>> named_edges() const;
  Dag without_edges(const std::vector<std::pair<VertexName, VertexName>>& drop,
                    const std::vector<std::pair<VertexName, VertexName>>& add = {}) const;

  nlohmann::json to_json() const;
  std::string to_dot() const;

 private:
  std::vector<VertexName> names_;
  std::map<VertexName, int> index_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> out_;
};

enum class GraphFamily { kGS, kGX, kGA, kGB, kGK };

GraphFamily parse_family(const std::string& s);
std::string family_name(GraphFamily f);

// GS, GK: params (n, a, b, c). GX: alpha. GA, GB: the odd-position alphas
// (the even positions are 1).
Dag build_graph(GraphFamily family, const std::vector<int>& params);

Dag graph_gs(int n, int a, int b, int c);
Dag graph_gx(const std::vector<int>& alpha);
Dag graph_ga(const std::vector<int>& alpha_odd);
Dag graph_gb(const std::vector<int>& alpha_odd);
Dag graph_gk(int n, int a, int b, int c);

// Fixed ranks by vertex index.
using Fixing = std::map<int, int>;
Fixing resolve_fixing(const Dag& g, const std::map<VertexName, int>& fixed);

// ranks[v] = f(v), ranks in 1..N.
using Labeling = std::vector<int>;

// All labelings honouring the edge rule and the fixed ranks, ordered by the
// sequence of vertex indices that receive labels 1, 2, ...
std::vector<Labeling> enumerate_topo(const Dag& g, const Fixing& fixed = {});

// Exact count by a downset DP; at most 64 vertices.
mpz_class count_topo(const Dag& g, const Fixing& fixed = {});

// The labelings as an unweighted signed set; payloads are the rank tuples.
SignedSet topo_set(const Dag& g, const Fixing& fixed = {});

}  // namespace selberg
