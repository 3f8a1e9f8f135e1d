#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tonnetz/harmony.hpp"

namespace tonnetz {

// Voice-leading colors carried by the edges of a structured Levi graph.
// P joins a Major chord to the Minor chord on the same root, L to the Minor
// chord rooted a major step up, R to the Minor chord rooted a minor step down.
enum class EdgeColor { P, L, R };

char edge_color_letter(EdgeColor color);

// Vertex ids: the Major chord rooted r occupies id r, the Minor chord rooted
// r occupies id n + r. Point vertices are Majors, line vertices are Minors.
struct LeviEdge {
  int point = 0;  // vertex id in [0, n)
  int line = 0;   // vertex id in [n, 2n)
  EdgeColor color = EdgeColor::P;

  friend bool operator==(const LeviEdge&, const LeviEdge&) = default;
};

struct StructuredLeviGraph {
  HarmonicSystem system;
  // 3n entries: for each Major root in ascending order, its P, L, R edges.
  // Parallel edges stay as separate entries so every vertex keeps exactly
  // three edge endpoints.
  std::vector<LeviEdge> edges;

  int vertex_count() const { return 2 * system.n; }
  bool is_point(int vertex) const { return vertex < system.n; }
  int vertex_root(int vertex) const {
    return is_point(vertex) ? vertex : vertex - system.n;
  }
  Chord vertex_chord(int vertex) const;
  std::string vertex_name(int vertex) const;  // "M0", "m7", ...
};

StructuredLeviGraph build_graph(const HarmonicSystem& sys);

// Outcome of checking the built edges against the pitch-overlap rule. The
// graph verifies when every vertex carries a distinct 3-element pitch set
// and every edge joins two chords sharing exactly two pitches.
//
// Note that the overlap relation can be strictly larger than the edge set:
// when 2s = 0 (mod n) each difference-s pitch pair sits inside two Minor
// chords, so each Major overlaps four Minors in exactly two pitches. The
// decaphonic systems with s = 5 all do this. Such extra pairs are reported
// as uncovered_pairs but do not fail verification, since the voice-leading
// edges themselves remain sound.
struct IntersectionDiagnostics {
  // All 2n pitch sets have three elements and are pairwise distinct.
  bool mu_injective = true;
  // Every edge joins chords sharing exactly two pitches.
  bool edges_share_two = true;
  // Vertex id pairs decorated with identical pitch sets.
  std::vector<std::pair<int, int>> pitch_set_collisions;
  // Edges whose endpoints do not share exactly two pitches.
  std::vector<std::pair<int, int>> offending_edges;
  // Informational: (point, line) pairs sharing exactly two pitches that
  // carry no edge.
  std::vector<std::pair<int, int>> uncovered_pairs;
};

// True iff mu_injective and edges_share_two both hold.
bool verify_intersection_rule(const StructuredLeviGraph& g);
bool verify_intersection_rule(const StructuredLeviGraph& g,
                              IntersectionDiagnostics& diagnostics);

// Preserving keeps point/line roles; Reversing exchanges them.
enum class Orientation { Preserving, Reversing };

std::string orientation_name(Orientation o);

struct IsoWitnessAbstract {
  // vertex_bijection[v] is the image of source vertex v; size 2n.
  std::vector<int> vertex_bijection;
  Orientation orientation = Orientation::Preserving;
};

// Adjacency-preserving bijection between the two graphs, searched over both
// orientations (Preserving first). Deterministic: returns the witness whose
// image sequence (over source vertices 0, 1, ..., 2n-1) is lexicographically
// smallest among all witnesses.
std::optional<IsoWitnessAbstract> abstract_iso(const StructuredLeviGraph& g1,
                                               const StructuredLeviGraph& g2);

// Same search restricted to a single orientation.
std::optional<IsoWitnessAbstract> abstract_iso_oriented(
    const StructuredLeviGraph& g1, const StructuredLeviGraph& g2,
    Orientation orientation);

// Canonical byte string: two graphs receive equal certificates exactly when
// abstract_iso finds a witness between them. Computed by canonical labeling
// (individualization with partition refinement) per connected component,
// minimized over the two point/line role assignments.
std::string canonical_certificate(const StructuredLeviGraph& g);

// Graphviz export: undirected, points and lines on separate ranks, edges
// colored red (P), blue (L), gold (R).
std::string to_dot(const StructuredLeviGraph& g);

// JSON export with stable ordering: {n, system, vertices[], edges[]}.
std::string to_json(const StructuredLeviGraph& g);

}  // namespace tonnetz
