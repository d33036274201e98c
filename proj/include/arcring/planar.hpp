#pragma once

// Crossingless matchings and flat tangles: enumeration, reflection,
// gluing into closed 1-manifolds, composition, and the elementary
// cup / cap / strand-shift tangles.

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "arcring/common.hpp"

namespace arcring {

/// Strictly increasing integer coordinates of boundary points.
using PointSeq = std::vector<int>;

inline void check_point_seq(const PointSeq& s) {
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i - 1] >= s[i]) throw ConstructionError("point sequence must be strictly increasing");
}

/// A crossingless matching of an even set of points on a line.
/// Arcs are kept in canonical form: (left, right) pairs sorted by left endpoint.
struct Matching {
  PointSeq points;
  std::vector<std::pair<int, int>> arcs;

  std::size_t size() const { return arcs.size(); }  // m

  int partner(int p) const {
    for (const auto& [l, r] : arcs) {
      if (l == p) return r;
      if (r == p) return l;
    }
    throw ConstructionError("point not in matching");
  }

  bool has_arc(int p, int q) const {
    if (p > q) std::swap(p, q);
    for (const auto& a : arcs)
      if (a.first == p && a.second == q) return true;
    return false;
  }

  friend bool operator==(const Matching& a, const Matching& b) {
    return a.points == b.points && a.arcs == b.arcs;
  }
  friend bool operator<(const Matching& a, const Matching& b) {
    if (a.points != b.points) return a.points < b.points;
    return a.arcs < b.arcs;
  }
};

namespace detail {
// position-pair crossing test: i<j<l<p with i~l, j~p
inline bool pairs_cross(const std::vector<std::pair<int, int>>& pos_arcs) {
  for (std::size_t x = 0; x < pos_arcs.size(); ++x)
    for (std::size_t y = x + 1; y < pos_arcs.size(); ++y) {
      auto [i, l] = pos_arcs[x];
      auto [j, p] = pos_arcs[y];
      if (i > j) {
        std::swap(i, j);
        std::swap(l, p);
      }
      if (j < l && l < p) return true;  // i<j<l<p with i~l, j~p
    }
  return false;
}
}  // namespace detail

/// Validates and canonicalizes a matching given by coordinate pairs.
inline Matching make_matching(PointSeq points, std::vector<std::pair<int, int>> arcs) {
  check_point_seq(points);
  if (points.size() % 2 != 0) throw ConstructionError("matching needs an even number of points");
  if (arcs.size() * 2 != points.size()) throw ConstructionError("arc count mismatch");
  std::map<int, int> pos;
  for (std::size_t i = 0; i < points.size(); ++i) pos[points[i]] = static_cast<int>(i);
  std::vector<bool> used(points.size(), false);
  std::vector<std::pair<int, int>> pos_arcs;
  for (auto& [a, b] : arcs) {
    if (a > b) std::swap(a, b);
    auto ia = pos.find(a), ib = pos.find(b);
    if (ia == pos.end() || ib == pos.end()) throw ConstructionError("arc endpoint not a boundary point");
    if (a == b || used[ia->second] || used[ib->second])
      throw ConstructionError("matching is not a fixed-point-free pairing");
    used[ia->second] = used[ib->second] = true;
    pos_arcs.emplace_back(ia->second, ib->second);
  }
  if (detail::pairs_cross(pos_arcs)) throw ConstructionError("matching has crossing arcs");
  std::sort(arcs.begin(), arcs.end());
  return Matching{std::move(points), std::move(arcs)};
}

/// All crossingless matchings of the given points, in lexicographic order
/// on the canonical arc sequence. Size is the Catalan number of |points|/2.
inline std::vector<Matching> matchings_on(const PointSeq& points, int bound = 10) {
  check_point_seq(points);
  if (points.size() % 2 != 0) throw ConstructionError("odd number of points");
  const int m = static_cast<int>(points.size() / 2);
  if (m > bound) throw SizeError("matching enumeration bound exceeded: m=" + std::to_string(m));
  // The leftmost point of a range pairs at an odd offset; the enclosed and
  // remaining ranges are matched independently (non-crossing recursion).
  using ArcList = std::vector<std::pair<int, int>>;
  auto gen = [&](auto&& self, std::size_t lo, std::size_t hi) -> std::vector<ArcList> {
    if (lo == hi) return {ArcList{}};
    std::vector<ArcList> result;
    for (std::size_t j = lo + 1; j < hi; j += 2) {
      auto inside = self(self, lo + 1, j);
      auto outside = self(self, j + 1, hi);
      for (const auto& in : inside)
        for (const auto& out : outside) {
          ArcList arcs;
          arcs.emplace_back(points[lo], points[j]);
          arcs.insert(arcs.end(), in.begin(), in.end());
          arcs.insert(arcs.end(), out.begin(), out.end());
          result.push_back(std::move(arcs));
        }
    }
    return result;
  };
  std::vector<Matching> out;
  for (auto& arcs : gen(gen, 0, points.size())) out.push_back(make_matching(points, arcs));
  std::sort(out.begin(), out.end());
  return out;
}

/// Crossingless matchings of 1..2m.
inline std::vector<Matching> enumerate_matchings(int m, int bound = 10) {
  if (m < 0) throw SizeError("negative m");
  PointSeq pts(2 * static_cast<std::size_t>(m));
  for (int i = 0; i < 2 * m; ++i) pts[i] = i + 1;
  return matchings_on(pts, bound);
}

/// Carries a matching to another point sequence of the same size,
/// preserving arc positions (the canonical bijection between B(s) and B^m).
inline Matching transport(const Matching& a, const PointSeq& to) {
  if (to.size() != a.points.size()) throw StructuralError("point sequence size mismatch");
  check_point_seq(to);
  std::map<int, int> coord_map;
  for (std::size_t i = 0; i < to.size(); ++i) coord_map[a.points[i]] = to[i];
  std::vector<std::pair<int, int>> arcs;
  for (const auto& [l, r] : a.arcs) arcs.emplace_back(coord_map[l], coord_map[r]);
  return make_matching(to, std::move(arcs));
}

/// A closed 1-manifold presented as circles through boundary points.
struct CirclePartition {
  int circle_count = 0;
  std::vector<int> point_circle;  // circle index per point position
  std::vector<int> arc_circle;    // circle index per arc of the glued diagram
};

namespace detail {
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Circles numbered by smallest contained node.
inline std::pair<int, std::vector<int>> number_circles(UnionFind& uf, std::size_t n) {
  std::vector<int> idx(n, -1);
  int count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    int r = uf.find(static_cast<int>(i));
    if (idx[r] < 0) idx[r] = count++;
  }
  std::vector<int> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = idx[uf.find(static_cast<int>(i))];
  return {count, out};
}
}  // namespace detail

/// Circle partition of the closed diagram W(b)a: arcs of a below the line,
/// arcs of b mirrored above, glued along the shared points.
inline CirclePartition glue_closed(const Matching& b, const Matching& a) {
  if (a.points != b.points) throw BoundaryError("glue_closed: boundary sequences differ");
  const std::size_t n = a.points.size();
  std::map<int, int> pos;
  for (std::size_t i = 0; i < n; ++i) pos[a.points[i]] = static_cast<int>(i);
  detail::UnionFind uf(n);
  for (const auto& [l, r] : a.arcs) uf.unite(pos[l], pos[r]);
  for (const auto& [l, r] : b.arcs) uf.unite(pos[l], pos[r]);
  auto [count, point_circle] = detail::number_circles(uf, n);
  CirclePartition part;
  part.circle_count = count;
  part.point_circle = std::move(point_circle);
  for (const auto& [l, r] : a.arcs) part.arc_circle.push_back(part.point_circle[pos[l]]);
  for (const auto& [l, r] : b.arcs) part.arc_circle.push_back(part.point_circle[pos[l]]);
  return part;
}

/// An endpoint of a flat tangle arc: bottom or top boundary, at a coordinate.
struct Endpoint {
  bool top = false;
  int coord = 0;
  friend bool operator==(const Endpoint& a, const Endpoint& b) {
    return a.top == b.top && a.coord == b.coord;
  }
  friend bool operator<(const Endpoint& a, const Endpoint& b) {
    if (a.top != b.top) return !a.top;
    return a.coord < b.coord;
  }
};

inline Endpoint bot_pt(int c) { return Endpoint{false, c}; }
inline Endpoint top_pt(int c) { return Endpoint{true, c}; }

/// A flat (l,m)-tangle: a crossing-free strip diagram with 2m bottom
/// points, 2l top points and a count of closed circle components.
struct FlatTangle {
  PointSeq bottom, top;
  std::vector<std::pair<Endpoint, Endpoint>> arcs;
  int circles = 0;

  friend bool operator==(const FlatTangle& a, const FlatTangle& b) {
    return a.bottom == b.bottom && a.top == b.top && a.arcs == b.arcs && a.circles == b.circles;
  }
  friend bool operator<(const FlatTangle& a, const FlatTangle& b) {
    auto ka = std::tie(a.bottom, a.top, a.arcs, a.circles);
    auto kb = std::tie(b.bottom, b.top, b.arcs, b.circles);
    return ka < kb;
  }
};

namespace detail {
// Strip-embeddability: unfold the boundary into a circle (bottom left to
// right, then top right to left) and test the linear non-crossing criterion.
inline bool planar_in_strip(const FlatTangle& t) {
  std::map<std::pair<bool, int>, int> pos;
  int p = 0;
  for (int c : t.bottom) pos[{false, c}] = p++;
  for (auto it = t.top.rbegin(); it != t.top.rend(); ++it) pos[{true, *it}] = p++;
  std::vector<std::pair<int, int>> pos_arcs;
  for (const auto& [e1, e2] : t.arcs) {
    int a = pos[{e1.top, e1.coord}], b = pos[{e2.top, e2.coord}];
    if (a > b) std::swap(a, b);
    pos_arcs.emplace_back(a, b);
  }
  return !pairs_cross(pos_arcs);
}
}  // namespace detail

inline FlatTangle make_tangle(PointSeq bottom, PointSeq top,
                              std::vector<std::pair<Endpoint, Endpoint>> arcs, int circles = 0,
                              bool check_planar = true) {
  check_point_seq(bottom);
  check_point_seq(top);
  if (bottom.size() % 2 != 0 || top.size() % 2 != 0)
    throw ConstructionError("tangle boundaries must have even size");
  if (circles < 0) throw ConstructionError("negative circle count");
  if (arcs.size() * 2 != bottom.size() + top.size())
    throw ConstructionError("tangle arcs must pair all endpoints");
  std::map<std::pair<bool, int>, int> seen;
  for (int c : bottom) seen[{false, c}] = 0;
  for (int c : top) seen[{true, c}] = 0;
  for (auto& [e1, e2] : arcs) {
    if (e2 < e1) std::swap(e1, e2);
    for (const Endpoint& e : {e1, e2}) {
      auto it = seen.find({e.top, e.coord});
      if (it == seen.end()) throw ConstructionError("arc endpoint not on the boundary");
      if (++it->second > 1) throw ConstructionError("endpoint used twice");
    }
    if (e1 == e2) throw ConstructionError("degenerate arc");
  }
  std::sort(arcs.begin(), arcs.end());
  FlatTangle t{std::move(bottom), std::move(top), std::move(arcs), circles};
  if (check_planar && !detail::planar_in_strip(t))
    throw ConstructionError("tangle is not embeddable in the strip");
  return t;
}

/// Reflection about the horizontal axis: bottom and top swap.
inline FlatTangle reflect(const FlatTangle& t) {
  std::vector<std::pair<Endpoint, Endpoint>> arcs;
  for (const auto& [e1, e2] : t.arcs)
    arcs.emplace_back(Endpoint{!e1.top, e1.coord}, Endpoint{!e2.top, e2.coord});
  return make_tangle(t.top, t.bottom, std::move(arcs), t.circles, false);
}

/// Identity tangle on a point sequence.
inline FlatTangle id_tangle(const PointSeq& s) {
  std::vector<std::pair<Endpoint, Endpoint>> arcs;
  for (int c : s) arcs.emplace_back(bot_pt(c), top_pt(c));
  return make_tangle(s, s, std::move(arcs), 0, false);
}

/// A matching a viewed as the flat (m,0)-tangle with a's arcs at the top.
inline FlatTangle tangle_of_matching(const Matching& a) {
  std::vector<std::pair<Endpoint, Endpoint>> arcs;
  for (const auto& [l, r] : a.arcs) arcs.emplace_back(top_pt(l), top_pt(r));
  return make_tangle({}, a.points, std::move(arcs), 0, false);
}

/// Composition T1 T2: T1 stacked on top of T2, gluing T1's bottom to T2's top.
inline FlatTangle compose(const FlatTangle& t1, const FlatTangle& t2) {
  if (t1.bottom != t2.top) throw BoundaryError("compose: interface sequences differ");
  // nodes: 0 = t2.bottom, 1 = interface, 2 = t1.top
  auto key = [](int level, bool top, int coord) {
    return std::tuple<int, int>(top ? level + 1 : level, coord);
  };
  std::map<std::tuple<int, int>, std::vector<std::pair<std::tuple<int, int>, bool>>> adj;
  auto add_edge = [&](std::tuple<int, int> u, std::tuple<int, int> v) {
    adj[u].push_back({v, false});
    adj[v].push_back({u, false});
  };
  for (const auto& [e1, e2] : t2.arcs) add_edge(key(0, e1.top, e1.coord), key(0, e2.top, e2.coord));
  for (const auto& [e1, e2] : t1.arcs) add_edge(key(1, e1.top, e1.coord), key(1, e2.top, e2.coord));

  std::map<std::tuple<int, int>, bool> visited;
  auto level_of = [](const std::tuple<int, int>& k) { return std::get<0>(k); };
  auto endpoint_of = [&](const std::tuple<int, int>& k) {
    return Endpoint{level_of(k) == 2, std::get<1>(k)};
  };

  std::vector<std::pair<Endpoint, Endpoint>> arcs;
  // walk open paths from boundary nodes
  for (auto& [node, edges] : adj) {
    if (level_of(node) == 1 || visited[node]) continue;
    visited[node] = true;
    auto cur = node;
    while (true) {
      auto& nbrs = adj[cur];
      std::tuple<int, int> next;
      bool found = false;
      for (auto& [nb, used] : nbrs) {
        if (used) continue;
        used = true;
        // mark the reverse copy too
        for (auto& [back, bused] : adj[nb])
          if (back == cur && !bused) {
            bused = true;
            break;
          }
        next = nb;
        found = true;
        break;
      }
      if (!found) break;
      visited[next] = true;
      cur = next;
      if (level_of(cur) != 1) break;  // reached the other boundary
    }
    arcs.emplace_back(endpoint_of(node), endpoint_of(cur));
  }
  // leftover interface cycles close into circles
  int new_circles = 0;
  for (auto& [node, edges] : adj) {
    if (level_of(node) != 1 || visited[node]) continue;
    ++new_circles;
    auto cur = node;
    while (true) {
      visited[cur] = true;
      bool found = false;
      for (auto& [nb, used] : adj[cur]) {
        if (used) continue;
        used = true;
        for (auto& [back, bused] : adj[nb])
          if (back == cur && !bused) {
            bused = true;
            break;
          }
        cur = nb;
        found = true;
        break;
      }
      if (!found) break;
    }
  }
#ifdef NDEBUG
  constexpr bool recheck = false;
#else
  constexpr bool recheck = true;  // composition of planar tangles is planar; re-validate in debug
#endif
  return make_tangle(t2.bottom, t1.top, std::move(arcs), t1.circles + t2.circles + new_circles,
                     recheck);
}

enum class ElementaryKind { Id, IdShiftUp, IdShiftDown, Cup, Cap };

/// The elementary flat tangles on base sequence s:
///  - IdShiftUp(i): bottom point i moves to top point i+1 (needs i in s, i+1 not);
///  - IdShiftDown(i): bottom point i+1 moves to top point i (needs i+1 in s, i not);
///  - Cup(i): a new arc joining top points i, i+1 (needs both absent from s);
///  - Cap(i): bottom points i, i+1 joined by an arc (needs both in s).
inline FlatTangle elementary_tangle(ElementaryKind kind, int i, const PointSeq& s) {
  check_point_seq(s);
  auto contains = [&](int c) { return std::binary_search(s.begin(), s.end(), c); };
  std::vector<std::pair<Endpoint, Endpoint>> arcs;
  PointSeq top = s;
  switch (kind) {
    case ElementaryKind::Id:
      return id_tangle(s);
    case ElementaryKind::IdShiftUp: {
      if (!contains(i) || contains(i + 1))
        throw ConstructionError("strand shift needs i in s and i+1 free");
      for (int c : s) arcs.emplace_back(bot_pt(c), top_pt(c == i ? i + 1 : c));
      std::replace(top.begin(), top.end(), i, i + 1);
      std::sort(top.begin(), top.end());
      return make_tangle(s, std::move(top), std::move(arcs), 0, false);
    }
    case ElementaryKind::IdShiftDown: {
      if (!contains(i + 1) || contains(i))
        throw ConstructionError("strand shift needs i+1 in s and i free");
      for (int c : s) arcs.emplace_back(bot_pt(c), top_pt(c == i + 1 ? i : c));
      std::replace(top.begin(), top.end(), i + 1, i);
      std::sort(top.begin(), top.end());
      return make_tangle(s, std::move(top), std::move(arcs), 0, false);
    }
    case ElementaryKind::Cup: {
      if (contains(i) || contains(i + 1))
        throw ConstructionError("cup insertion points must be free");
      for (int c : s) arcs.emplace_back(bot_pt(c), top_pt(c));
      arcs.emplace_back(top_pt(i), top_pt(i + 1));
      top.push_back(i);
      top.push_back(i + 1);
      std::sort(top.begin(), top.end());
      return make_tangle(s, std::move(top), std::move(arcs), 0, false);
    }
    case ElementaryKind::Cap: {
      if (!contains(i) || !contains(i + 1))
        throw ConstructionError("cap needs both points on the boundary");
      for (int c : s)
        if (c != i && c != i + 1) arcs.emplace_back(bot_pt(c), top_pt(c));
      arcs.emplace_back(bot_pt(i), bot_pt(i + 1));
      top.erase(std::remove_if(top.begin(), top.end(), [&](int c) { return c == i || c == i + 1; }),
                top.end());
      return make_tangle(s, std::move(top), std::move(arcs), 0, false);
    }
  }
  throw ConstructionError("unknown elementary tangle kind");
}

inline FlatTangle cup_tangle(int i, const PointSeq& s) {
  return elementary_tangle(ElementaryKind::Cup, i, s);
}
inline FlatTangle cap_tangle(int i, const PointSeq& s) {
  return elementary_tangle(ElementaryKind::Cap, i, s);
}

}  // namespace arcring
