#include "tonnetz/levigraph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "tonnetz/zmod.hpp"

namespace tonnetz {

namespace {

using Matrix = std::vector<std::vector<int>>;

Matrix adjacency_matrix(const StructuredLeviGraph& g) {
  const int m = g.vertex_count();
  Matrix adj(m, std::vector<int>(m, 0));
  for (const LeviEdge& e : g.edges) {
    ++adj[e.point][e.line];
    ++adj[e.line][e.point];
  }
  return adj;
}

// codeg[v][u] counts common neighbors with multiplicity, so an isomorphism
// must preserve it pairwise. This is what lets the matcher reject wrong
// partial maps between same-side vertices, which share no edges directly.
Matrix codegree_matrix(const Matrix& adj) {
  const int m = static_cast<int>(adj.size());
  Matrix codeg(m, std::vector<int>(m, 0));
  for (int v = 0; v < m; ++v) {
    for (int u = 0; u < m; ++u) {
      int total = 0;
      for (int x = 0; x < m; ++x) total += std::min(adj[v][x], adj[u][x]);
      codeg[v][u] = total;
    }
  }
  return codeg;
}

// Side-agnostic per-vertex invariant: sorted edge-multiplicity profile plus
// the sorted row of codegrees. Candidate images must match it exactly.
struct VertexKey {
  std::vector<int> multiplicities;
  std::vector<int> codegrees;

  friend bool operator==(const VertexKey&, const VertexKey&) = default;
};

std::vector<VertexKey> vertex_keys(const Matrix& adj, const Matrix& codeg) {
  const int m = static_cast<int>(adj.size());
  std::vector<VertexKey> keys(m);
  for (int v = 0; v < m; ++v) {
    for (int u = 0; u < m; ++u) {
      if (adj[v][u] > 0) keys[v].multiplicities.push_back(adj[v][u]);
    }
    keys[v].codegrees = codeg[v];
    std::sort(keys[v].multiplicities.begin(), keys[v].multiplicities.end());
    std::sort(keys[v].codegrees.begin(), keys[v].codegrees.end());
  }
  return keys;
}

struct IsoSearch {
  const Matrix& adj1;
  const Matrix& adj2;
  const Matrix& codeg1;
  const Matrix& codeg2;
  const std::vector<std::vector<int>>& candidates;
  std::vector<int> phi;
  std::vector<char> used;

  bool consistent(int v, int w) const {
    for (int u = 0; u < v; ++u) {
      if (adj1[v][u] != adj2[w][phi[u]]) return false;
      if (codeg1[v][u] != codeg2[w][phi[u]]) return false;
    }
    return true;
  }

  // Assigns source vertices in id order and tries target ids in ascending
  // order, so the first complete map found is the lexicographically
  // smallest witness.
  bool extend(int v) {
    if (v == static_cast<int>(phi.size())) return true;
    for (int w : candidates[v]) {
      if (used[w] || !consistent(v, w)) continue;
      phi[v] = w;
      used[w] = 1;
      if (extend(v + 1)) return true;
      phi[v] = -1;
      used[w] = 0;
    }
    return false;
  }
};

// Iterated partition refinement. Color ids are renumbered after every round
// by sorted signature, which keeps them stable under graph isomorphism.
std::vector<int> refine_colors(const Matrix& adj, std::vector<int> colors) {
  const int m = static_cast<int>(adj.size());
  std::set<int> distinct(colors.begin(), colors.end());
  std::size_t count = distinct.size();
  for (;;) {
    using Signature = std::pair<int, std::vector<std::pair<int, int>>>;
    std::vector<Signature> sig(m);
    for (int v = 0; v < m; ++v) {
      sig[v].first = colors[v];
      for (int u = 0; u < m; ++u) {
        if (adj[v][u] > 0) sig[v].second.emplace_back(colors[u], adj[v][u]);
      }
      std::sort(sig[v].second.begin(), sig[v].second.end());
    }
    std::map<Signature, int> ids;
    for (int v = 0; v < m; ++v) ids[sig[v]] = 0;
    int next = 0;
    for (auto& entry : ids) entry.second = next++;
    for (int v = 0; v < m; ++v) colors[v] = ids[sig[v]];
    if (static_cast<std::size_t>(next) == count) return colors;
    count = static_cast<std::size_t>(next);
  }
}

std::string serialize_leaf(const Matrix& adj, const std::vector<int>& sides,
                           const std::vector<int>& colors) {
  const int m = static_cast<int>(adj.size());
  std::vector<int> at(m);  // at[position] = vertex
  for (int v = 0; v < m; ++v) at[colors[v]] = v;
  std::ostringstream out;
  out << 'V' << m << ';';
  for (int i = 0; i < m; ++i) out << sides[at[i]];
  out << ';';
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      int mult = adj[at[i]][at[j]];
      if (mult > 0) out << '(' << i << ',' << j << ',' << mult << ')';
    }
  }
  return out.str();
}

// Canonical labeling by individualization-refinement: refine, then split the
// first non-singleton color class on each of its members and keep the
// lexicographically smallest serialized leaf.
std::string canonical_form(const Matrix& adj, const std::vector<int>& sides,
                           std::vector<int> colors) {
  const int m = static_cast<int>(adj.size());
  colors = refine_colors(adj, colors);
  std::set<int> distinct(colors.begin(), colors.end());
  if (static_cast<int>(distinct.size()) == m) {
    return serialize_leaf(adj, sides, colors);
  }
  int cell_color = -1;
  for (int c = 0; c < m && cell_color < 0; ++c) {
    if (std::count(colors.begin(), colors.end(), c) > 1) cell_color = c;
  }
  std::string best;
  for (int v = 0; v < m; ++v) {
    if (colors[v] != cell_color) continue;
    std::vector<int> child = colors;
    child[v] = m;  // fresh maximal color individualizes v
    std::string leaf = canonical_form(adj, sides, child);
    if (best.empty() || leaf < best) best = std::move(leaf);
  }
  return best;
}

std::vector<std::vector<int>> connected_components(const Matrix& adj) {
  const int m = static_cast<int>(adj.size());
  std::vector<int> component(m, -1);
  std::vector<std::vector<int>> result;
  for (int start = 0; start < m; ++start) {
    if (component[start] >= 0) continue;
    std::vector<int> queue{start};
    component[start] = static_cast<int>(result.size());
    std::vector<int> members;
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      members.push_back(v);
      for (int u = 0; u < m; ++u) {
        if (adj[v][u] > 0 && component[u] < 0) {
          component[u] = component[start];
          queue.push_back(u);
        }
      }
    }
    std::sort(members.begin(), members.end());
    result.push_back(std::move(members));
  }
  return result;
}

// Certificate for one point/line role assignment: canonical forms of the
// connected components, sorted and length-prefixed.
std::string side_certificate(const StructuredLeviGraph& g, const Matrix& adj,
                             bool swap_roles) {
  std::vector<std::string> parts;
  for (const std::vector<int>& members : connected_components(adj)) {
    const int k = static_cast<int>(members.size());
    Matrix local(k, std::vector<int>(k, 0));
    std::vector<int> sides(k, 0);
    for (int i = 0; i < k; ++i) {
      sides[i] = (g.is_point(members[i]) != swap_roles) ? 0 : 1;
      for (int j = 0; j < k; ++j) local[i][j] = adj[members[i]][members[j]];
    }
    parts.push_back(canonical_form(local, sides, sides));
  }
  std::sort(parts.begin(), parts.end());
  std::ostringstream out;
  out << 'G' << g.vertex_count() << '|';
  for (const std::string& part : parts) out << part.size() << ':' << part;
  return out.str();
}

const char* dot_color(EdgeColor color) {
  switch (color) {
    case EdgeColor::P: return "red";
    case EdgeColor::L: return "blue";
    case EdgeColor::R: return "gold";
  }
  return "black";
}

}  // namespace

char edge_color_letter(EdgeColor color) {
  switch (color) {
    case EdgeColor::P: return 'P';
    case EdgeColor::L: return 'L';
    case EdgeColor::R: return 'R';
  }
  return '?';
}

std::string orientation_name(Orientation o) {
  return o == Orientation::Preserving ? "Preserving" : "Reversing";
}

Chord StructuredLeviGraph::vertex_chord(int vertex) const {
  return chord(system, is_point(vertex) ? Quality::Major : Quality::Minor,
               vertex_root(vertex));
}

std::string StructuredLeviGraph::vertex_name(int vertex) const {
  return chord_name(vertex_chord(vertex));
}

StructuredLeviGraph build_graph(const HarmonicSystem& sys) {
  StructuredLeviGraph g{sys, {}};
  g.edges.reserve(3 * static_cast<std::size_t>(sys.n));
  constexpr EdgeColor kColors[] = {EdgeColor::P, EdgeColor::L, EdgeColor::R};
  for (int r = 0; r < sys.n; ++r) {
    const std::array<Chord, 3> around = neighbors(sys, chord(sys, Quality::Major, r));
    for (int i = 0; i < 3; ++i) {
      g.edges.push_back(LeviEdge{r, sys.n + around[i].root, kColors[i]});
    }
  }
  return g;
}

bool verify_intersection_rule(const StructuredLeviGraph& g) {
  IntersectionDiagnostics diagnostics;
  return verify_intersection_rule(g, diagnostics);
}

bool verify_intersection_rule(const StructuredLeviGraph& g,
                              IntersectionDiagnostics& diagnostics) {
  diagnostics = IntersectionDiagnostics{};
  const int n = g.system.n;

  std::vector<std::set<int>> pitch_sets(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    pitch_sets[v] = pitch_set(g.vertex_chord(v));
  }
  bool all_triples = true;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (pitch_sets[v].size() != 3) all_triples = false;
    for (int u = v + 1; u < g.vertex_count(); ++u) {
      if (pitch_sets[v] == pitch_sets[u]) {
        diagnostics.pitch_set_collisions.emplace_back(v, u);
      }
    }
  }
  diagnostics.mu_injective =
      all_triples && diagnostics.pitch_set_collisions.empty();

  auto overlap = [&](int point, int line) {
    std::vector<int> common;
    std::set_intersection(pitch_sets[point].begin(), pitch_sets[point].end(),
                          pitch_sets[line].begin(), pitch_sets[line].end(),
                          std::back_inserter(common));
    return common.size();
  };

  std::set<std::pair<int, int>> edge_pairs;
  for (const LeviEdge& e : g.edges) {
    edge_pairs.insert({e.point, e.line});
    if (overlap(e.point, e.line) != 2) {
      diagnostics.offending_edges.emplace_back(e.point, e.line);
    }
  }
  diagnostics.edges_share_two = diagnostics.offending_edges.empty();

  for (int point = 0; point < n; ++point) {
    for (int line = n; line < 2 * n; ++line) {
      if (overlap(point, line) == 2 && !edge_pairs.count({point, line})) {
        diagnostics.uncovered_pairs.emplace_back(point, line);
      }
    }
  }
  return diagnostics.mu_injective && diagnostics.edges_share_two;
}

std::optional<IsoWitnessAbstract> abstract_iso_oriented(
    const StructuredLeviGraph& g1, const StructuredLeviGraph& g2,
    Orientation orientation) {
  const int m = g1.vertex_count();
  if (m != g2.vertex_count() || g1.edges.size() != g2.edges.size()) {
    return std::nullopt;
  }

  const Matrix adj1 = adjacency_matrix(g1);
  const Matrix adj2 = adjacency_matrix(g2);
  const Matrix codeg1 = codegree_matrix(adj1);
  const Matrix codeg2 = codegree_matrix(adj2);
  const std::vector<VertexKey> keys1 = vertex_keys(adj1, codeg1);
  const std::vector<VertexKey> keys2 = vertex_keys(adj2, codeg2);

  const bool flip = orientation == Orientation::Reversing;
  std::vector<std::vector<int>> candidates(m);
  for (int v = 0; v < m; ++v) {
    for (int w = 0; w < m; ++w) {
      if ((g1.is_point(v) != g2.is_point(w)) != flip) continue;
      if (keys1[v] == keys2[w]) candidates[v].push_back(w);
    }
    if (candidates[v].empty()) return std::nullopt;
  }

  IsoSearch search{adj1,
                   adj2,
                   codeg1,
                   codeg2,
                   candidates,
                   std::vector<int>(m, -1),
                   std::vector<char>(m, 0)};
  if (!search.extend(0)) return std::nullopt;
  return IsoWitnessAbstract{std::move(search.phi), orientation};
}

std::optional<IsoWitnessAbstract> abstract_iso(const StructuredLeviGraph& g1,
                                               const StructuredLeviGraph& g2) {
  // Any Preserving witness starts with a point image below n, so it is
  // lexicographically smaller than every Reversing witness.
  if (auto witness = abstract_iso_oriented(g1, g2, Orientation::Preserving)) {
    return witness;
  }
  return abstract_iso_oriented(g1, g2, Orientation::Reversing);
}

std::string canonical_certificate(const StructuredLeviGraph& g) {
  const Matrix adj = adjacency_matrix(g);
  return std::min(side_certificate(g, adj, false), side_certificate(g, adj, true));
}

std::string to_dot(const StructuredLeviGraph& g) {
  const int n = g.system.n;
  std::ostringstream out;
  out << "graph levi_" << g.system.t << '_' << g.system.s << " {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=ellipse];\n";
  out << "  subgraph points { rank=same;";
  for (int v = 0; v < n; ++v) out << " \"" << g.vertex_name(v) << "\";";
  out << " }\n";
  out << "  subgraph lines { rank=same;";
  for (int v = n; v < 2 * n; ++v) out << " \"" << g.vertex_name(v) << "\";";
  out << " }\n";
  for (const LeviEdge& e : g.edges) {
    out << "  \"" << g.vertex_name(e.point) << "\" -- \""
        << g.vertex_name(e.line) << "\" [color=" << dot_color(e.color)
        << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_json(const StructuredLeviGraph& g) {
  nlohmann::ordered_json doc;
  doc["n"] = g.system.n;
  doc["system"] = {{"t", g.system.t},
                   {"s", g.system.s},
                   {"name", system_name(g.system)}};
  doc["vertices"] = nlohmann::ordered_json::array();
  for (int v = 0; v < g.vertex_count(); ++v) {
    nlohmann::ordered_json vertex;
    vertex["id"] = v;
    vertex["name"] = g.vertex_name(v);
    vertex["side"] = g.is_point(v) ? "major" : "minor";
    vertex["root"] = g.vertex_root(v);
    vertex["pitches"] = pitch_set(g.vertex_chord(v));
    doc["vertices"].push_back(std::move(vertex));
  }
  doc["edges"] = nlohmann::ordered_json::array();
  for (const LeviEdge& e : g.edges) {
    doc["edges"].push_back({{"from", e.point},
                            {"to", e.line},
                            {"color", std::string(1, edge_color_letter(e.color))}});
  }
  return doc.dump(2);
}

}  // namespace tonnetz
