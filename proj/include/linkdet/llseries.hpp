#pragma once

// Eisenbud-Harris compatibility of vanishing sequences on a compact-type
// dual graph.  Only the combinatorial test; no line bundles are modelled.

#include <json.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace linkdet {

class InvalidLlsData : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A tree: connected and acyclic, validated on construction.
class DualGraph {
 public:
  DualGraph(std::vector<int> vertices, std::vector<std::pair<int, int>> edges)
      : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    if (vertices_.empty()) throw InvalidLlsData("dual graph needs a vertex");
    std::vector<int> sorted = vertices_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw InvalidLlsData("repeated vertex id");
    if (edges_.size() + 1 != vertices_.size()) throw InvalidLlsData("a tree has one edge fewer than vertices");
    std::map<int, int> parent;
    for (int v : vertices_) parent[v] = v;
    auto find = [&](int v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (auto [a, b] : edges_) {
      if (!parent.count(a) || !parent.count(b)) throw InvalidLlsData("edge uses an unknown vertex");
      if (a == b) throw InvalidLlsData("self-loop");
      int ra = find(a), rb = find(b);
      if (ra == rb) throw InvalidLlsData("dual graph has a cycle");
      parent[ra] = rb;
    }
  }

  const std::vector<int>& vertices() const { return vertices_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

 private:
  std::vector<int> vertices_;
  std::vector<std::pair<int, int>> edges_;
};

/// Vanishing sequences a^{(e,v)} for each edge e and each end v of e.
struct VanishingData {
  int r = 0;
  int d = 0;
  std::map<std::pair<std::size_t, int>, std::vector<int>> seq;  // (edge index, vertex) -> sequence

  void set(std::size_t edge, int vertex, std::vector<int> a) { seq[{edge, vertex}] = std::move(a); }
  const std::vector<int>& at(std::size_t edge, int vertex) const {
    auto it = seq.find({edge, vertex});
    if (it == seq.end())
      throw InvalidLlsData("missing vanishing sequence for edge " + std::to_string(edge) + " at vertex " + std::to_string(vertex));
    return it->second;
  }
};

enum class LlsClass { NotLls, Lls, Refined };

inline std::string to_string(LlsClass c) {
  switch (c) {
    case LlsClass::NotLls: return "not-lls";
    case LlsClass::Lls: return "lls";
    case LlsClass::Refined: return "refined";
  }
  return "?";
}

inline void validate_sequence(const std::vector<int>& a, int r, int d) {
  if (static_cast<int>(a.size()) != r + 1) throw InvalidLlsData("vanishing sequence must have r+1 entries");
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] < 0 || a[j] > d) throw InvalidLlsData("vanishing orders must lie in [0, d]");
    if (j && a[j] <= a[j - 1]) throw InvalidLlsData("vanishing sequence must be strictly increasing");
  }
}

/// a^{(e,v)}_j + a^{(e,v')}_{r-j} >= d on every edge; refined when all are equalities.
inline LlsClass check_eh(const VanishingData& vd, const DualGraph& g) {
  if (vd.r < 0 || vd.d < 0) throw InvalidLlsData("r and d must be nonnegative");
  bool all_equal = true;
  bool ok = true;
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    auto [v, w] = g.edges()[e];
    const auto& a = vd.at(e, v);
    const auto& b = vd.at(e, w);
    validate_sequence(a, vd.r, vd.d);
    validate_sequence(b, vd.r, vd.d);
    for (int j = 0; j <= vd.r; ++j) {
      int sum = a[static_cast<std::size_t>(j)] + b[static_cast<std::size_t>(vd.r - j)];
      if (sum < vd.d) ok = false;
      if (sum != vd.d) all_equal = false;
    }
  }
  if (!ok) return LlsClass::NotLls;
  return all_equal ? LlsClass::Refined : LlsClass::Lls;
}

/// {"r","d","vertices":[..],"edges":[[u,v],..],"vanishing":[{"edge":k,"vertex":v,"sequence":[..]},..]}
inline std::pair<VanishingData, DualGraph> lls_from_json(const nlohmann::json& j) {
  std::vector<int> vertices = j.at("vertices").get<std::vector<int>>();
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw InvalidLlsData("edges are vertex pairs");
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  DualGraph g(std::move(vertices), std::move(edges));
  VanishingData vd;
  vd.r = j.at("r").get<int>();
  vd.d = j.at("d").get<int>();
  for (const auto& item : j.at("vanishing")) {
    auto e = item.at("edge").get<std::size_t>();
    int v = item.at("vertex").get<int>();
    if (e >= g.edges().size()) throw InvalidLlsData("vanishing entry names an unknown edge");
    if (g.edges()[e].first != v && g.edges()[e].second != v) throw InvalidLlsData("vertex is not an end of the edge");
    vd.set(e, v, item.at("sequence").get<std::vector<int>>());
  }
  return {vd, g};
}

}  // namespace linkdet
