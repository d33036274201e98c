#pragma once

// The Frobenius algebra Z[X]/(X^2) with tr(1)=0, tr(X)=1, graded by
// deg 1 = -1, deg X = +1, together with the saddle-move engine that
// evaluates contraction cobordisms on labeled circle configurations.

#include <cstdint>
#include <map>
#include <vector>

#include "arcring/common.hpp"
#include "arcring/planar.hpp"

namespace arcring {

enum class FrobLabel : uint8_t { One = 0, X = 1 };

inline int label_degree(FrobLabel l) { return l == FrobLabel::X ? 1 : -1; }

/// tr(1) = 0, tr(X) = 1.
inline long long frob_trace(FrobLabel l) { return l == FrobLabel::X ? 1 : 0; }

/// The unit map births a circle labeled 1.
inline FrobLabel frob_unit() { return FrobLabel::One; }

/// Labelings of r circles packed as a bitmask: bit i set means circle i
/// carries X. Internal degree of a mask is 2*popcount - r.
using LabelMask = uint32_t;

inline int mask_degree(LabelMask mask, int circles) {
  return 2 * __builtin_popcount(mask) - circles;
}

/// An integer combination of labelings of a fixed set of circles.
struct TqftCombo {
  int circles = 0;
  std::map<LabelMask, long long> terms;

  static TqftCombo basis(int circles, LabelMask mask) {
    TqftCombo c;
    c.circles = circles;
    c.terms[mask] = 1;
    return c;
  }

  bool is_zero() const { return terms.empty(); }

  void add(LabelMask mask, long long coeff) {
    if (coeff == 0) return;
    auto it = terms.find(mask);
    if (it == terms.end()) {
      terms[mask] = coeff;
    } else {
      it->second = checked_add(it->second, coeff);
      if (it->second == 0) terms.erase(it);
    }
  }

  friend bool operator==(const TqftCombo& a, const TqftCombo& b) {
    return a.circles == b.circles && a.terms == b.terms;
  }
};

/// Multiplication: 1*1 = 1, 1*X = X*1 = X, X*X = 0. Result over one circle.
inline TqftCombo merge_labels(FrobLabel x, FrobLabel y) {
  TqftCombo out;
  out.circles = 1;
  if (x == FrobLabel::X && y == FrobLabel::X) return out;  // X^2 = 0
  out.add((x == FrobLabel::X || y == FrobLabel::X) ? 1u : 0u, 1);
  return out;
}

/// Comultiplication: D(1) = 1(x)X + X(x)1, D(X) = X(x)X. Result over two circles.
inline TqftCombo split_label(FrobLabel x) {
  TqftCombo out;
  out.circles = 2;
  if (x == FrobLabel::One) {
    out.add(0b10u, 1);
    out.add(0b01u, 1);
  } else {
    out.add(0b11u, 1);
  }
  return out;
}

/// A closed diagram presented combinatorially: numbered nodes, arcs as
/// edges, plus circles that touch no node. Circles are numbered by their
/// smallest node; node-free circles come last in a fixed order.
struct NodeDiagram {
  int node_count = 0;
  std::vector<std::pair<int, int>> edges;
  int free_circles = 0;
};

struct DiagramCircles {
  int count = 0;               // includes free circles
  std::vector<int> node_circle;
};

inline DiagramCircles circles_of(const NodeDiagram& d) {
  detail::UnionFind uf(static_cast<std::size_t>(d.node_count));
  for (const auto& [u, v] : d.edges) uf.unite(u, v);
  auto [count, node_circle] = detail::number_circles(uf, static_cast<std::size_t>(d.node_count));
  return DiagramCircles{count + d.free_circles, std::move(node_circle)};
}

/// One saddle move: the two listed edges (u1,u2), (v1,v2) are replaced by
/// (u1,v1), (u2,v2). Callers orient mirror-arc pairs consistently so the
/// rewiring reconnects matching coordinates.
struct SaddleStep {
  int edge_a = -1;
  int edge_b = -1;
};

using SurgerySchedule = std::vector<SaddleStep>;

namespace detail {

struct SaddleGeometry {
  bool is_merge = false;
  int src1 = -1, src2 = -1;  // merged circles (merge) or the split circle twice
  int dst1 = -1, dst2 = -1;  // result circle (merge: dst1 only) / the two pieces
  std::vector<int> remap;    // old circle -> new circle for untouched circles
  DiagramCircles after;
};

// Applies one saddle to the diagram in place and computes the circle maps.
inline SaddleGeometry apply_saddle(NodeDiagram& d, const DiagramCircles& before,
                                   const SaddleStep& step) {
  if (step.edge_a < 0 || step.edge_b < 0 || step.edge_a == step.edge_b ||
      step.edge_a >= static_cast<int>(d.edges.size()) ||
      step.edge_b >= static_cast<int>(d.edges.size()))
    throw StructuralError("saddle step does not reference two distinct edges");
  auto [u1, u2] = d.edges[step.edge_a];
  auto [v1, v2] = d.edges[step.edge_b];
  SaddleGeometry g;
  const int ca = before.node_circle[u1];
  const int cb = before.node_circle[v1];
  g.is_merge = (ca != cb);
  d.edges[step.edge_a] = {u1, v1};
  d.edges[step.edge_b] = {u2, v2};
  g.after = circles_of(d);

  const int node_circles_before = before.count - d.free_circles;
  const int node_circles_after = g.after.count - d.free_circles;
  if (g.is_merge) {
    if (node_circles_after != node_circles_before - 1)
      throw StructuralError("merge saddle did not reduce circle count by one");
  } else {
    if (node_circles_after != node_circles_before + 1)
      throw StructuralError("split saddle did not raise circle count by one");
  }

  // Old->new index map via shared nodes; free circles are untouched.
  g.remap.assign(static_cast<std::size_t>(before.count), -1);
  for (int n = 0; n < d.node_count; ++n) {
    int oc = before.node_circle[n];
    int nc = g.after.node_circle[n];
    if (oc == ca || oc == cb) continue;
    if (g.remap[oc] >= 0 && g.remap[oc] != nc)
      throw StructuralError("untouched circle split by saddle");
    g.remap[oc] = nc;
  }
  for (int f = 0; f < d.free_circles; ++f)
    g.remap[node_circles_before + f] = node_circles_after + f;

  if (g.is_merge) {
    g.src1 = ca;
    g.src2 = cb;
    g.dst1 = g.after.node_circle[u1];
  } else {
    g.src1 = g.src2 = ca;
    int c1 = g.after.node_circle[u1];
    int c2 = g.after.node_circle[u2];
    if (c1 == c2) throw StructuralError("split saddle produced one circle");
    g.dst1 = c1;
    g.dst2 = c2;
  }
  return g;
}

}  // namespace detail

/// Linear extension of merge/split along the schedule. Labels of the input
/// combo are indexed by circles_of(diagram); the result is indexed by the
/// circle numbering of the surgered diagram (also returned).
struct ContractionResult {
  TqftCombo combo;
  DiagramCircles circles;
};

inline ContractionResult evaluate_contraction(NodeDiagram diagram, const SurgerySchedule& schedule,
                                              const TqftCombo& input) {
  DiagramCircles cur = circles_of(diagram);
  if (input.circles != cur.count)
    throw StructuralError("input labeling does not match diagram circles");
  TqftCombo acc = input;
  for (const auto& step : schedule) {
    auto geom = detail::apply_saddle(diagram, cur, step);
    TqftCombo next;
    next.circles = geom.after.count;
    for (const auto& [mask, coeff] : acc.terms) {
      // carry untouched labels across
      LabelMask base = 0;
      for (int c = 0; c < cur.count; ++c) {
        if (geom.remap[c] < 0) continue;
        if (mask & (1u << c)) base |= 1u << geom.remap[c];
      }
      auto label_of = [&](int c) {
        return (mask & (1u << c)) ? FrobLabel::X : FrobLabel::One;
      };
      if (geom.is_merge) {
        TqftCombo prod = merge_labels(label_of(geom.src1), label_of(geom.src2));
        for (const auto& [pm, pc] : prod.terms) {
          LabelMask out = base;
          if (pm & 1u) out |= 1u << geom.dst1;
          next.add(out, checked_mul(coeff, pc));
        }
      } else {
        TqftCombo delta = split_label(label_of(geom.src1));
        for (const auto& [pm, pc] : delta.terms) {
          LabelMask out = base;
          if (pm & 1u) out |= 1u << geom.dst1;
          if (pm & 2u) out |= 1u << geom.dst2;
          next.add(out, checked_mul(coeff, pc));
        }
      }
    }
    acc = std::move(next);
    cur = geom.after;
  }
  return ContractionResult{std::move(acc), std::move(cur)};
}

/// Re-indexes a combo along a circle bijection old -> new.
inline TqftCombo remap_circles(const TqftCombo& combo, const std::vector<int>& map,
                               int new_count) {
  if (static_cast<int>(map.size()) != combo.circles)
    throw StructuralError("circle remap size mismatch");
  std::vector<bool> hit(static_cast<std::size_t>(new_count), false);
  for (int c : map) {
    if (c < 0 || c >= new_count || hit[c]) throw StructuralError("circle remap is not a bijection");
    hit[c] = true;
  }
  TqftCombo out;
  out.circles = new_count;
  for (const auto& [mask, coeff] : combo.terms) {
    LabelMask nm = 0;
    for (int c = 0; c < combo.circles; ++c)
      if (mask & (1u << c)) nm |= 1u << map[c];
    out.add(nm, coeff);
  }
  return out;
}

}  // namespace arcring
