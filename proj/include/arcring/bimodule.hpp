#pragma once

// Bimodules attached to flat tangles: graded bases from closures W(b)Ta,
// the two ring actions by contraction, tensor products over arc rings by
// exact integer linear algebra, delooping, and decomposition of composites
// with projectives into shifted projectives.

#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <tuple>

#include "arcring/arc_ring.hpp"
#include "arcring/linalg.hpp"

namespace arcring {

struct BimoduleSpec {
  FlatTangle tangle;
  RingSpec left_ring;   // on tangle.top
  RingSpec right_ring;  // on tangle.bottom

  friend bool operator==(const BimoduleSpec& x, const BimoduleSpec& y) {
    return x.tangle == y.tangle && x.left_ring == y.left_ring && x.right_ring == y.right_ring;
  }
};

inline BimoduleSpec make_bimodule_spec(FlatTangle t) {
  RingSpec left = RingSpec::on_points(t.top);
  RingSpec right = RingSpec::on_points(t.bottom);
  return BimoduleSpec{std::move(t), std::move(left), std::move(right)};
}

/// Basis element of F(T): b over the top ring, a over the bottom ring, a
/// labeling of the circles of the closure W(b)Ta. Shift {m} by the bottom size.
struct BimodKey {
  int b = 0;
  int a = 0;
  LabelMask mask = 0;
  friend bool operator==(const BimodKey& x, const BimodKey& y) {
    return x.b == y.b && x.a == y.a && x.mask == y.mask;
  }
  friend bool operator<(const BimodKey& x, const BimodKey& y) {
    if (x.b != y.b) return x.b < y.b;
    if (x.a != y.a) return x.a < y.a;
    return x.mask < y.mask;
  }
};

namespace detail {
/// The closed diagram W(b) T a as a node diagram: bottom positions first,
/// then top positions; edges grouped as [a | T | b].
struct TangleClosure {
  NodeDiagram diag;
  DiagramCircles circ;
  int edges_a = 0, edges_t = 0, edges_b = 0;  // group sizes in order
  int node_circles() const { return circ.count - diag.free_circles; }
};

inline TangleClosure close_tangle(const Matching& b, const FlatTangle& t, const Matching& a) {
  if (a.points != t.bottom || b.points != t.top)
    throw BoundaryError("closure boundaries do not match the tangle");
  const int nb = static_cast<int>(t.bottom.size());
  const int nt = static_cast<int>(t.top.size());
  std::map<int, int> bpos, tpos;
  for (int i = 0; i < nb; ++i) bpos[t.bottom[static_cast<std::size_t>(i)]] = i;
  for (int i = 0; i < nt; ++i) tpos[t.top[static_cast<std::size_t>(i)]] = nb + i;
  TangleClosure c;
  c.diag.node_count = nb + nt;
  c.diag.free_circles = t.circles;
  auto node_of = [&](const Endpoint& e) { return e.top ? tpos[e.coord] : bpos[e.coord]; };
  for (const auto& [l, r] : a.arcs) c.diag.edges.push_back({bpos[l], bpos[r]});
  c.edges_a = static_cast<int>(a.arcs.size());
  for (const auto& [e1, e2] : t.arcs) {
    int u = node_of(e1), v = node_of(e2);
    if (u > v) std::swap(u, v);
    c.diag.edges.push_back({u, v});
  }
  c.edges_t = static_cast<int>(t.arcs.size());
  for (const auto& [l, r] : b.arcs) c.diag.edges.push_back({tpos[l], tpos[r]});
  c.edges_b = static_cast<int>(b.arcs.size());
  c.circ = circles_of(c.diag);
  return c;
}

inline int ring_pos(const RingTablePtr& ring, int coord) {
  const PointSeq& pts = ring->spec().points;
  auto it = std::lower_bound(pts.begin(), pts.end(), coord);
  if (it == pts.end() || *it != coord) throw StructuralError("coordinate not on the ring line");
  return static_cast<int>(it - pts.begin());
}
}  // namespace detail

class BimoduleTable {
 public:
  explicit BimoduleTable(BimoduleSpec spec)
      : spec_(std::move(spec)),
        left_(ring_table(spec_.left_ring)),
        right_(ring_table(spec_.right_ring)) {
    if (spec_.left_ring.points != spec_.tangle.top ||
        spec_.right_ring.points != spec_.tangle.bottom)
      throw StructuralError("bimodule rings must sit on the tangle boundaries");
    const int nb = left_->matching_count();
    const int na = right_->matching_count();
    closures_.reserve(static_cast<std::size_t>(nb) * na);
    for (int b = 0; b < nb; ++b)
      for (int a = 0; a < na; ++a)
        closures_.push_back(
            detail::close_tangle(left_->matchings()[b], spec_.tangle, right_->matchings()[a]));
    block_offset_.assign(static_cast<std::size_t>(nb) * na + 1, 0);
    int off = 0;
    for (std::size_t i = 0; i < closures_.size(); ++i) {
      block_offset_[i] = off;
      off += 1 << closures_[i].circ.count;
    }
    block_offset_.back() = off;
  }

  static std::shared_ptr<const BimoduleTable> get(const BimoduleSpec& spec) {
    static std::mutex mtx;
    static std::map<FlatTangle, std::shared_ptr<const BimoduleTable>> registry;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = registry.find(spec.tangle);
    if (it != registry.end()) return it->second;
    auto table = std::make_shared<const BimoduleTable>(spec);
    registry[spec.tangle] = table;
    return table;
  }

  const BimoduleSpec& spec() const { return spec_; }
  const RingTablePtr& left_ring() const { return left_; }
  const RingTablePtr& right_ring() const { return right_; }
  const detail::TangleClosure& closure(int b, int a) const { return closures_[idx(b, a)]; }
  int circle_count(int b, int a) const { return closures_[idx(b, a)].circ.count; }

  int basis_size() const { return block_offset_.back(); }
  int index_of(const BimodKey& k) const {
    return block_offset_[idx(k.b, k.a)] + static_cast<int>(k.mask);
  }
  BimodKey key_at(int index) const {
    for (int b = 0; b < left_->matching_count(); ++b)
      for (int a = 0; a < right_->matching_count(); ++a) {
        int off = block_offset_[idx(b, a)];
        int dim = 1 << circle_count(b, a);
        if (index < off + dim) return BimodKey{b, a, static_cast<LabelMask>(index - off)};
      }
    throw StructuralError("bimodule basis index out of range");
  }

  /// Degree: internal degree of the labeling plus the bottom-size shift {m}.
  int degree(const BimodKey& k) const {
    return mask_degree(k.mask, circle_count(k.b, k.a)) + right_->m();
  }

  LaurentPoly graded_dim_block(int b, int a) const {
    return LaurentPoly::q_power(right_->m()) * circle_power(circle_count(b, a));
  }

  /// Free rank per degree of the whole bimodule.
  std::map<int, int> graded_ranks() const {
    std::map<int, int> out;
    for (int i = 0; i < basis_size(); ++i) ++out[degree(key_at(i))];
    return out;
  }

  std::map<int, int> graded_ranks_block(int b, int a) const {
    std::map<int, int> out;
    int r = circle_count(b, a);
    for (LabelMask mask = 0; mask < (1u << r); ++mask) ++out[degree(BimodKey{b, a, mask})];
    return out;
  }

 private:
  std::size_t idx(int b, int a) const {
    return static_cast<std::size_t>(b) * right_->matching_count() + static_cast<std::size_t>(a);
  }

  BimoduleSpec spec_;
  RingTablePtr left_, right_;
  std::vector<detail::TangleClosure> closures_;
  std::vector<int> block_offset_;
};

using BimoduleTablePtr = std::shared_ptr<const BimoduleTable>;

inline BimoduleTablePtr bimodule_table(const BimoduleSpec& spec) { return BimoduleTable::get(spec); }
inline BimoduleTablePtr bimodule_table(const FlatTangle& t) {
  return BimoduleTable::get(make_bimodule_spec(t));
}

/// An integer combination of bimodule basis elements.
class BimodElement {
 public:
  BimodElement() = default;
  explicit BimodElement(BimoduleTablePtr table) : table_(std::move(table)) {}

  static BimodElement basis(BimoduleTablePtr table, BimodKey key) {
    BimodElement e(std::move(table));
    e.terms_[key] = 1;
    return e;
  }

  const BimoduleTablePtr& table() const { return table_; }
  const std::map<BimodKey, long long>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const BimodKey& k, long long coeff) {
    if (coeff == 0) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_[k] = coeff;
    } else {
      it->second = checked_add(it->second, coeff);
      if (it->second == 0) terms_.erase(it);
    }
  }

  BimodElement& operator+=(const BimodElement& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  BimodElement& operator-=(const BimodElement& o) {
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  friend BimodElement operator+(BimodElement x, const BimodElement& y) { return x += y; }
  friend BimodElement operator-(BimodElement x, const BimodElement& y) { return x -= y; }
  friend bool operator==(const BimodElement& x, const BimodElement& y) {
    return x.terms_ == y.terms_;
  }

  int degree() const {
    if (terms_.empty()) throw StructuralError("degree of zero element");
    int d = table_->degree(terms_.begin()->first);
    for (const auto& [k, c] : terms_)
      if (table_->degree(k) != d) throw StructuralError("element is not homogeneous");
    return d;
  }

 private:
  BimoduleTablePtr table_;
  std::map<BimodKey, long long> terms_;
};

enum class Side { Left, Right };

namespace detail {

// Left action stacks the ring closure W(c)b above the module closure
// W(b)Ta and contracts b with its mirror; the right action stacks W(a)a'
// below and contracts a. One saddle per arc of the contracted matching.
inline TqftCombo act_basis(const BimoduleTable& M, Side side, const RingBasisKey& hk,
                           const BimodKey& vk) {
  const RingTablePtr& ring = (side == Side::Left) ? M.left_ring() : M.right_ring();
  const int n_ring = 2 * ring->m();

  int rb, ra;  // result block
  if (side == Side::Left) {
    if (hk.a != vk.b) return TqftCombo{};  // block structure
    rb = hk.b;
    ra = vk.a;
  } else {
    if (vk.a != hk.b) return TqftCombo{};
    rb = vk.b;
    ra = hk.a;
  }

  const TangleClosure& mod = M.closure(vk.b, vk.a);
  const int nmod = mod.diag.node_count;
  const Matching& middle =
      (side == Side::Left) ? ring->matchings()[vk.b] : ring->matchings()[vk.a];

  NodeDiagram stacked;
  SurgerySchedule schedule;

  if (side == Side::Left) {
    // module below (nodes 0..nmod-1), ring line above (nodes nmod..)
    stacked = mod.diag;
    stacked.node_count = nmod + n_ring;
    const int ring_edge_off = static_cast<int>(stacked.edges.size());
    for (const auto& [l, r] : ring->matchings()[hk.a].arcs)  // b arcs under the ring line
      stacked.edges.push_back({nmod + ring_pos(ring, l), nmod + ring_pos(ring, r)});
    for (const auto& [l, r] : ring->matchings()[hk.b].arcs)  // W(c) arcs above it
      stacked.edges.push_back({nmod + ring_pos(ring, l), nmod + ring_pos(ring, r)});
    const int mod_mid_edge_off = mod.edges_a + mod.edges_t;  // the W(b) arcs of the closure
    for (int j = 0; j < static_cast<int>(middle.arcs.size()); ++j)
      schedule.push_back(SaddleStep{mod_mid_edge_off + j, ring_edge_off + j});
  } else {
    // ring line below (nodes 0..n_ring-1), module above
    stacked.node_count = n_ring + nmod;
    stacked.free_circles = mod.diag.free_circles;
    for (const auto& [l, r] : ring->matchings()[hk.a].arcs)  // a' arcs under the ring line
      stacked.edges.push_back({ring_pos(ring, l), ring_pos(ring, r)});
    const int ring_w_off = static_cast<int>(stacked.edges.size());
    for (const auto& [l, r] : ring->matchings()[hk.b].arcs)  // W(a) arcs above it
      stacked.edges.push_back({ring_pos(ring, l), ring_pos(ring, r)});
    const int mod_edge_off = static_cast<int>(stacked.edges.size());
    for (const auto& [u, v] : mod.diag.edges) stacked.edges.push_back({n_ring + u, n_ring + v});
    for (int j = 0; j < static_cast<int>(middle.arcs.size()); ++j)
      schedule.push_back(SaddleStep{ring_w_off + j, mod_edge_off + j});
  }

  // input labeling in the stacked circle numbering
  DiagramCircles before = circles_of(stacked);
  const int mod_nodes = mod.node_circles();
  const int ring_nodes = ring->circle_count(hk.b, hk.a);
  if (before.count != mod_nodes + ring_nodes + mod.diag.free_circles)
    throw StructuralError("stacked diagram has unexpected circles");
  LabelMask mask = 0;
  auto set_bit = [&](int stacked_idx, bool on) {
    if (on) mask |= 1u << stacked_idx;
  };
  if (side == Side::Left) {
    for (int i = 0; i < mod_nodes; ++i) set_bit(i, vk.mask & (1u << i));
    for (int j = 0; j < ring_nodes; ++j) set_bit(mod_nodes + j, hk.mask & (1u << j));
    for (int f = 0; f < mod.diag.free_circles; ++f)
      set_bit(mod_nodes + ring_nodes + f, vk.mask & (1u << (mod_nodes + f)));
  } else {
    for (int j = 0; j < ring_nodes; ++j) set_bit(j, hk.mask & (1u << j));
    for (int i = 0; i < mod_nodes; ++i) set_bit(ring_nodes + i, vk.mask & (1u << i));
    for (int f = 0; f < mod.diag.free_circles; ++f)
      set_bit(ring_nodes + mod_nodes + f, vk.mask & (1u << (mod_nodes + f)));
  }
  TqftCombo input;
  input.circles = before.count;
  input.terms[mask] = 1;

  auto res = evaluate_contraction(std::move(stacked), schedule, input);

  // map the surgered circles onto the target closure
  const TangleClosure& target = M.closure(rb, ra);
  const int target_nodes = target.node_circles();
  if (res.circles.count != target_nodes + target.diag.free_circles)
    throw StructuralError("action did not land on the target closure");
  std::vector<int> map(static_cast<std::size_t>(res.circles.count), -1);
  const int total_nodes = n_ring + nmod;
  for (int node = 0; node < total_nodes; ++node) {
    int proj;
    if (side == Side::Left) {
      // the ring line projects down onto the module's top positions
      proj = (node < nmod) ? node : (node - nmod) + (nmod - n_ring);
    } else {
      // the ring line projects up onto the module's bottom positions
      proj = (node < n_ring) ? node : node - n_ring;
    }
    int fc = res.circles.node_circle[node];
    int tc = target.circ.node_circle[proj];
    if (map[fc] >= 0 && map[fc] != tc)
      throw StructuralError("action circles inconsistent with target");
    map[fc] = tc;
  }
  const int res_nodes = res.circles.count - mod.diag.free_circles;
  for (int f = 0; f < mod.diag.free_circles; ++f) map[res_nodes + f] = target_nodes + f;
  return remap_circles(res.combo, map, target.circ.count);
}

}  // namespace detail

/// h . v (left) or v . h (right), bilinear in both arguments.
inline BimodElement act(Side side, const ArcElement& h, const BimodElement& v) {
  const auto& table = v.table();
  const RingTablePtr& ring = (side == Side::Left) ? table->left_ring() : table->right_ring();
  if (!(h.ring()->spec() == ring->spec()))
    throw StructuralError("ring element does not act on this bimodule side");
  BimodElement out(table);
  for (const auto& [hk, hc] : h.terms())
    for (const auto& [vk, vc] : v.terms()) {
      TqftCombo prod = detail::act_basis(*table, side, hk, vk);
      if (prod.terms.empty()) continue;
      int rb = (side == Side::Left) ? hk.b : vk.b;
      int ra = (side == Side::Left) ? vk.a : hk.a;
      long long cc = checked_mul(hc, vc);
      for (const auto& [mask, coeff] : prod.terms)
        out.add(BimodKey{rb, ra, mask}, checked_mul(cc, coeff));
    }
  return out;
}

/// Graded f.g. abelian group: free ranks and torsion invariants per degree.
struct GradedGroup {
  std::map<int, int> ranks;
  std::map<int, std::vector<BigInt>> torsion;

  bool torsion_free() const { return torsion.empty(); }
  friend bool operator==(const GradedGroup& x, const GradedGroup& y) {
    return x.ranks == y.ranks && x.torsion == y.torsion;
  }
  LaurentPoly rank_poly() const {
    LaurentPoly p;
    for (const auto& [d, r] : ranks) p += LaurentPoly::q_power(d, r);
    return p;
  }
  void merge(const GradedGroup& o) {
    for (const auto& [d, r] : o.ranks) ranks[d] += r;
    for (const auto& [d, t] : o.torsion) {
      auto& dst = torsion[d];
      dst.insert(dst.end(), t.begin(), t.end());
      std::sort(dst.begin(), dst.end());
    }
  }
};

namespace detail {

using TensorGenKey = std::tuple<int, LabelMask, LabelMask>;

/// Degreewise presentation of one graded abelian group: generators indexed
/// on demand, relation columns deduplicated and reduced incrementally.
struct DegreewiseCokernel {
  std::map<int, int> gen_count;
  std::map<int, std::map<TensorGenKey, int>> index;
  std::map<int, LatticeReducer> reducers;
  std::map<int, std::set<std::vector<std::pair<int, long long>>>> seen;

  void declare(int degree, const TensorGenKey& k) {
    auto& idx = index[degree];
    if (idx.emplace(k, gen_count[degree]).second) ++gen_count[degree];
  }
  int gen_at(int degree, const TensorGenKey& k) const { return index.at(degree).at(k); }

  void add_relation(int degree, const std::map<int, long long>& col) {
    std::vector<std::pair<int, long long>> packed;
    for (const auto& [r, c] : col)
      if (c != 0) packed.emplace_back(r, c);
    if (packed.empty()) return;
    if (!seen[degree].insert(packed).second) return;
    std::map<int, BigInt> bcol;
    for (const auto& [r, c] : packed) bcol[r] = c;
    reducers[degree].add_column(std::move(bcol));
  }

  GradedGroup finish() const {
    GradedGroup out;
    for (const auto& [d, count] : gen_count) {
      auto it = reducers.find(d);
      if (it == reducers.end()) {
        if (count > 0) out.ranks[d] = count;
        continue;
      }
      auto snf = it->second.finish();
      int rank = count - snf.rank;
      if (rank > 0) out.ranks[d] = rank;
      auto tors = snf.torsion();
      if (!tors.empty()) out.torsion[d] = std::move(tors);
    }
    return out;
  }
};

}  // namespace detail

/// All (c,a) blocks of F(T1) (x)_{H} F(T2) at once: generators x (x) y over
/// the middle matchings modulo x.h (x) y - x (x) h.y, computed over Z with
/// the ring actions shared across the outer blocks. Relation columns are
/// homogeneous, so the echelon pivots stay degree-pure and the per-degree
/// ranks and torsion fall out of one reducer per block.
inline std::map<std::pair<int, int>, GradedGroup> tensor_blocks(const BimoduleTablePtr& M,
                                                                const BimoduleTablePtr& N) {
  if (!(M->right_ring()->spec() == N->left_ring()->spec()))
    throw StructuralError("tensor factors do not share the middle ring");
  const RingTablePtr& mid = M->right_ring();
  const int nmid = mid->matching_count();
  const int nc = M->left_ring()->matching_count();
  const int na = N->right_ring()->matching_count();

  // flat generator layout per block: id = base[b] + mx * 2^ry[b] + my
  struct Block {
    std::vector<int> base, rx, ry;
    int total = 0;
    LatticeReducer reducer;
    std::set<std::vector<std::pair<int, long long>>> seen;
  };
  std::vector<Block> blocks(static_cast<std::size_t>(nc) * na);
  auto block_at = [&](int c, int a) -> Block& {
    return blocks[static_cast<std::size_t>(c) * na + a];
  };
  for (int c = 0; c < nc; ++c)
    for (int a = 0; a < na; ++a) {
      Block& blk = block_at(c, a);
      blk.base.resize(static_cast<std::size_t>(nmid));
      blk.rx.resize(static_cast<std::size_t>(nmid));
      blk.ry.resize(static_cast<std::size_t>(nmid));
      for (int b = 0; b < nmid; ++b) {
        blk.base[static_cast<std::size_t>(b)] = blk.total;
        blk.rx[static_cast<std::size_t>(b)] = M->circle_count(c, b);
        blk.ry[static_cast<std::size_t>(b)] = N->circle_count(b, a);
        blk.total += 1 << (blk.rx[static_cast<std::size_t>(b)] + blk.ry[static_cast<std::size_t>(b)]);
      }
    }

  // Relations for h over a verified ring generating set suffice: the
  // relation of a product h1 h2 is the h2-relation at (x h1, y) plus the
  // h1-relation at (x, h2 y).
  for (const RingBasisKey& hkey : ring_generators(mid)) {
    const int u = hkey.b, v = hkey.a;
    if (u == v && hkey.mask == 0) continue;  // idempotents give zero columns
    ArcElement h = ArcElement::basis(mid, hkey);
    // hoist the actions: x.h per (c,mx), h.y per (a,my)
    std::vector<std::vector<BimodElement>> xh(static_cast<std::size_t>(nc));
    std::vector<std::vector<BimodElement>> hy(static_cast<std::size_t>(na));
    for (int c = 0; c < nc; ++c) {
      int rxu = M->circle_count(c, u);
      xh[static_cast<std::size_t>(c)].resize(1u << rxu);
      for (LabelMask mx = 0; mx < (1u << rxu); ++mx)
        xh[static_cast<std::size_t>(c)][mx] =
            act(Side::Right, h, BimodElement::basis(M, BimodKey{c, u, mx}));
    }
    for (int a = 0; a < na; ++a) {
      int ryv = N->circle_count(v, a);
      hy[static_cast<std::size_t>(a)].resize(1u << ryv);
      for (LabelMask my = 0; my < (1u << ryv); ++my)
        hy[static_cast<std::size_t>(a)][my] =
            act(Side::Left, h, BimodElement::basis(N, BimodKey{v, a, my}));
    }
    std::map<int, long long> col;
    std::vector<std::pair<int, long long>> packed;
    for (int c = 0; c < nc; ++c) {
      int rxu = M->circle_count(c, u);
      for (int a = 0; a < na; ++a) {
        int ryv = N->circle_count(v, a);
        Block& blk = block_at(c, a);
        for (LabelMask mx = 0; mx < (1u << rxu); ++mx) {
          const auto& xhe = xh[static_cast<std::size_t>(c)][mx];
          for (LabelMask my = 0; my < (1u << ryv); ++my) {
            const auto& hye = hy[static_cast<std::size_t>(a)][my];
            if (xhe.is_zero() && hye.is_zero()) continue;
            col.clear();
            for (const auto& [key, coeff] : xhe.terms())
              col[blk.base[static_cast<std::size_t>(key.a)] +
                  static_cast<int>(key.mask << blk.ry[static_cast<std::size_t>(key.a)]) +
                  static_cast<int>(my)] += coeff;
            for (const auto& [key, coeff] : hye.terms())
              col[blk.base[static_cast<std::size_t>(key.b)] +
                  static_cast<int>(mx << blk.ry[static_cast<std::size_t>(key.b)]) +
                  static_cast<int>(key.mask)] -= coeff;
            packed.clear();
            for (const auto& [row, coeff] : col)
              if (coeff != 0) packed.emplace_back(row, coeff);
            if (packed.empty()) continue;
            if (!blk.seen.insert(packed).second) continue;
            std::map<int, BigInt> bcol;
            for (const auto& [row, coeff] : packed) bcol[row] = coeff;
            blk.reducer.add_column(std::move(bcol));
          }
        }
      }
    }
  }

  std::map<std::pair<int, int>, GradedGroup> out;
  for (int c = 0; c < nc; ++c)
    for (int a = 0; a < na; ++a) {
      const Block& blk = block_at(c, a);
      auto degree_of = [&](int id) {
        int b = nmid - 1;
        while (b > 0 && blk.base[static_cast<std::size_t>(b)] > id) --b;
        int rest = id - blk.base[static_cast<std::size_t>(b)];
        int ry = blk.ry[static_cast<std::size_t>(b)];
        LabelMask mx = static_cast<LabelMask>(rest >> ry);
        LabelMask my = static_cast<LabelMask>(rest & ((1 << ry) - 1));
        return M->degree(BimodKey{c, b, mx}) + N->degree(BimodKey{b, a, my});
      };
      // generator counts per degree
      GradedGroup g;
      std::map<int, int> gens;
      for (int id = 0; id < blk.total; ++id) ++gens[degree_of(id)];
      // bucket the echelon pivots by the degree of their rows
      std::map<int, std::map<int, std::map<int, BigInt>>> buckets;
      for (const auto& [lead, pcol] : blk.reducer.pivots()) {
        int d = degree_of(lead);
        for (const auto& [row, val] : pcol)
          if (degree_of(row) != d)
            throw StructuralError("tensor relation column is not homogeneous");
        buckets[d][lead] = pcol;
      }
      for (const auto& [d, count] : gens) {
        auto it = buckets.find(d);
        if (it == buckets.end()) {
          if (count > 0) g.ranks[d] = count;
          continue;
        }
        auto snf = LatticeReducer::smith_of_columns(it->second);
        int rank = count - snf.rank;
        if (rank > 0) g.ranks[d] = rank;
        auto tors = snf.torsion();
        if (!tors.empty()) g.torsion[d] = std::move(tors);
      }
      out[{c, a}] = std::move(g);
    }
  return out;
}

inline GradedGroup tensor_block(const BimoduleTablePtr& M, const BimoduleTablePtr& N, int c,
                                int a) {
  return tensor_blocks(M, N).at({c, a});
}

/// Direct sum over all outer blocks.
inline GradedGroup tensor_over(const BimoduleTablePtr& M, const BimoduleTablePtr& N) {
  GradedGroup out;
  for (auto& [key, g] : tensor_blocks(M, N)) out.merge(g);
  return out;
}

/// Removes the closed circles of a tangle; each circle contributes the
/// shift pair {+1} (+) {-1}, so c circles give all 2^c signed sums.
struct DeloopResult {
  BimoduleSpec spec;
  std::vector<int> shifts;  // sorted multiset of size 2^c
};

inline DeloopResult deloop(const BimoduleSpec& spec) {
  DeloopResult out;
  FlatTangle t = spec.tangle;
  const int c = t.circles;
  t.circles = 0;
  out.spec = BimoduleSpec{t, spec.left_ring, spec.right_ring};
  out.shifts.assign(1u << c, 0);
  for (std::size_t mask = 0; mask < (1u << c); ++mask) {
    int s = 0;
    for (int i = 0; i < c; ++i) s += (mask & (1u << i)) ? 1 : -1;
    out.shifts[mask] = s;
  }
  std::sort(out.shifts.begin(), out.shifts.end());
  return out;
}

/// F(T) (x) Q_a ~ F(Ta): composing with the projective's matching and
/// delooping leaves a single matching with a multiset of shifts.
struct ProjectiveDecomposition {
  std::vector<std::pair<Matching, int>> summands;  // sorted (matching, shift)
  friend bool operator==(const ProjectiveDecomposition& x, const ProjectiveDecomposition& y) {
    return x.summands == y.summands;
  }
};

/// rk(psi Q_a (x)_H Q_b): the tensor-definition route to the bilinear form.
/// Q_a is F of the matching-as-tangle; the right action on the twisted
/// factor goes through the antiinvolution chi.
inline GradedGroup psi_twisted_tensor(const Matching& a, const Matching& b) {
  auto M = bimodule_table(tangle_of_matching(a));
  auto N = bimodule_table(tangle_of_matching(b));
  const RingTablePtr& mid = M->left_ring();
  if (!(N->left_ring()->spec() == mid->spec()))
    throw StructuralError("twisted tensor factors live over different rings");
  const int nmid = mid->matching_count();

  detail::DegreewiseCokernel ck;
  for (int u = 0; u < nmid; ++u) {
    int rx = M->circle_count(u, 0), ry = N->circle_count(u, 0);
    for (LabelMask mx = 0; mx < (1u << rx); ++mx) {
      int dx = M->degree(BimodKey{u, 0, mx});
      for (LabelMask my = 0; my < (1u << ry); ++my)
        ck.declare(dx + N->degree(BimodKey{u, 0, my}), detail::TensorGenKey{u, mx, my});
    }
  }

  // as in tensor_blocks, generator relations suffice (chi maps the
  // generating set to one for the opposite multiplication)
  for (const RingBasisKey& hkey : ring_generators(mid)) {
    const int u = hkey.b, v = hkey.a;
    if (u == v && hkey.mask == 0) continue;
    const int rxu = M->circle_count(u, 0);
    const int ryv = N->circle_count(v, 0);
    ArcElement h = ArcElement::basis(mid, hkey);
    ArcElement chi_h = h.chi();
    const int dh = mid->degree(hkey);
    std::vector<BimodElement> xh(1u << rxu), hy(1u << ryv);
    for (LabelMask mx = 0; mx < (1u << rxu); ++mx)
      xh[mx] = act(Side::Left, chi_h, BimodElement::basis(M, BimodKey{u, 0, mx}));
    for (LabelMask my = 0; my < (1u << ryv); ++my)
      hy[my] = act(Side::Left, h, BimodElement::basis(N, BimodKey{v, 0, my}));
    for (LabelMask mx = 0; mx < (1u << rxu); ++mx) {
      const int dx = M->degree(BimodKey{u, 0, mx});
      for (LabelMask my = 0; my < (1u << ryv); ++my) {
        if (xh[mx].is_zero() && hy[my].is_zero()) continue;
        const int d = dx + dh + N->degree(BimodKey{v, 0, my});
        std::map<int, long long> col;
        for (const auto& [key, coeff] : xh[mx].terms())
          col[ck.gen_at(d, detail::TensorGenKey{key.b, key.mask, my})] += coeff;
        for (const auto& [key, coeff] : hy[my].terms())
          col[ck.gen_at(d, detail::TensorGenKey{key.b, mx, key.mask})] -= coeff;
        ck.add_relation(d, col);
      }
    }
  }
  return ck.finish();
}

/// Composable pairs of elementary tangles with bottom size up to max_m,
/// the sweep family behind the composition-theorem checks.
inline std::vector<std::pair<FlatTangle, FlatTangle>> elementary_pair_sweep(int max_m) {
  std::vector<std::pair<FlatTangle, FlatTangle>> pairs;
  auto options_on = [](const PointSeq& s) {
    std::vector<FlatTangle> out;
    out.push_back(id_tangle(s));
    int hi = s.empty() ? 2 : s.back() + 2;
    for (int i = 0; i <= hi; ++i) {
      bool has_i = std::binary_search(s.begin(), s.end(), i);
      bool has_i1 = std::binary_search(s.begin(), s.end(), i + 1);
      if (has_i && has_i1) out.push_back(cap_tangle(i, s));
      if (!has_i && !has_i1) out.push_back(cup_tangle(i, s));
      if (has_i && !has_i1) out.push_back(elementary_tangle(ElementaryKind::IdShiftUp, i, s));
      if (!has_i && has_i1) out.push_back(elementary_tangle(ElementaryKind::IdShiftDown, i, s));
    }
    return out;
  };
  for (int m = 0; m <= max_m; ++m) {
    PointSeq s = RingSpec::standard(m).points;
    for (const auto& t2 : options_on(s))
      for (const auto& t1 : options_on(t2.top)) pairs.emplace_back(t1, t2);
  }
  return pairs;
}

inline ProjectiveDecomposition decompose_on_projective(const BimoduleSpec& spec,
                                                       const Matching& a) {
  if (a.points != spec.tangle.bottom)
    throw StructuralError("projective matching incompatible with the tangle bottom");
  FlatTangle composed = compose(spec.tangle, tangle_of_matching(a));
  std::vector<std::pair<int, int>> arcs;
  for (const auto& [e1, e2] : composed.arcs) {
    if (!e1.top || !e2.top) throw StructuralError("composite with a projective must be closed below");
    arcs.emplace_back(e1.coord, e2.coord);
  }
  Matching b0 = make_matching(composed.top, std::move(arcs));
  ProjectiveDecomposition out;
  const int c = composed.circles;
  for (std::size_t mask = 0; mask < (1u << c); ++mask) {
    int s = 0;
    for (int i = 0; i < c; ++i) s += (mask & (1u << i)) ? 1 : -1;
    out.summands.emplace_back(b0, s);
  }
  std::sort(out.summands.begin(), out.summands.end());
  return out;
}

}  // namespace arcring
