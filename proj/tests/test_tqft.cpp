#include <catch2/catch_amalgamated.hpp>

#include "arcring/tqft.hpp"

using namespace arcring;

namespace {

const FrobLabel kLabels[2] = {FrobLabel::One, FrobLabel::X};

// tensor-leg helpers over explicit two/three-circle combos, used to state
// the Frobenius axioms independently of the surgery engine
long long coeff_of(const TqftCombo& c, LabelMask m) {
  auto it = c.terms.find(m);
  return it == c.terms.end() ? 0 : it->second;
}

}  // namespace

TEST_CASE("merge and split values") {
  CHECK(merge_labels(FrobLabel::One, FrobLabel::X) == TqftCombo::basis(1, 1));
  CHECK(merge_labels(FrobLabel::X, FrobLabel::One) == TqftCombo::basis(1, 1));
  CHECK(merge_labels(FrobLabel::One, FrobLabel::One) == TqftCombo::basis(1, 0));
  CHECK(merge_labels(FrobLabel::X, FrobLabel::X).is_zero());

  TqftCombo d1 = split_label(FrobLabel::One);
  CHECK(d1.terms.size() == 2);
  CHECK(coeff_of(d1, 0b01) == 1);
  CHECK(coeff_of(d1, 0b10) == 1);
  CHECK(split_label(FrobLabel::X) == TqftCombo::basis(2, 0b11));
}

TEST_CASE("trace and unit") {
  CHECK(frob_trace(FrobLabel::One) == 0);
  CHECK(frob_trace(FrobLabel::X) == 1);
  CHECK(frob_unit() == FrobLabel::One);
  // sphere: unit then trace evaluates to 0
  CHECK(frob_trace(frob_unit()) == 0);
  // tr(merge(X, 1)) = 1: the Frobenius pairing is nondegenerate on (X, 1)
  auto p = merge_labels(FrobLabel::X, FrobLabel::One);
  long long tr = 0;
  for (const auto& [mask, c] : p.terms) tr += c * frob_trace(mask ? FrobLabel::X : FrobLabel::One);
  CHECK(tr == 1);
}

TEST_CASE("degree of structure maps") {
  for (FrobLabel x : kLabels)
    for (FrobLabel y : kLabels) {
      auto p = merge_labels(x, y);
      for (const auto& [mask, c] : p.terms)
        CHECK(mask_degree(mask, 1) == label_degree(x) + label_degree(y) + 1);
    }
  for (FrobLabel x : kLabels) {
    auto d = split_label(x);
    for (const auto& [mask, c] : d.terms) CHECK(mask_degree(mask, 2) == label_degree(x) + 1);
  }
}

TEST_CASE("associativity and coassociativity") {
  // m(m(x,y),z) == m(x,m(y,z)) on all label triples
  auto mul3_left = [](FrobLabel x, FrobLabel y, FrobLabel z) {
    TqftCombo out;
    out.circles = 1;
    auto xy = merge_labels(x, y);
    for (const auto& [m1, c1] : xy.terms) {
      auto r = merge_labels(m1 ? FrobLabel::X : FrobLabel::One, z);
      for (const auto& [m2, c2] : r.terms) out.add(m2, c1 * c2);
    }
    return out;
  };
  auto mul3_right = [](FrobLabel x, FrobLabel y, FrobLabel z) {
    TqftCombo out;
    out.circles = 1;
    auto yz = merge_labels(y, z);
    for (const auto& [m1, c1] : yz.terms) {
      auto r = merge_labels(x, m1 ? FrobLabel::X : FrobLabel::One);
      for (const auto& [m2, c2] : r.terms) out.add(m2, c1 * c2);
    }
    return out;
  };
  for (FrobLabel x : kLabels)
    for (FrobLabel y : kLabels)
      for (FrobLabel z : kLabels) CHECK(mul3_left(x, y, z) == mul3_right(x, y, z));

  // (D (x) id) D == (id (x) D) D on both labels
  auto co_left = [](FrobLabel x) {  // split, then split circle 0
    TqftCombo out;
    out.circles = 3;
    for (const auto& [m1, c1] : split_label(x).terms) {
      auto d2 = split_label((m1 & 1u) ? FrobLabel::X : FrobLabel::One);
      for (const auto& [m2, c2] : d2.terms) {
        LabelMask mask = ((m1 & 2u) ? 4u : 0u) | (m2 & 3u);
        out.add(mask, c1 * c2);
      }
    }
    return out;
  };
  auto co_right = [](FrobLabel x) {  // split, then split circle 1
    TqftCombo out;
    out.circles = 3;
    for (const auto& [m1, c1] : split_label(x).terms) {
      auto d2 = split_label((m1 & 2u) ? FrobLabel::X : FrobLabel::One);
      for (const auto& [m2, c2] : d2.terms) {
        LabelMask mask = (m1 & 1u) | ((m2 & 3u) << 1);
        out.add(mask, c1 * c2);
      }
    }
    return out;
  };
  for (FrobLabel x : kLabels) CHECK(co_left(x) == co_right(x));
}

TEST_CASE("Frobenius identity") {
  // Delta  m == (m (x) id) (id (x) Delta) as maps A(x)A -> A(x)A
  for (FrobLabel x : kLabels)
    for (FrobLabel y : kLabels) {
      TqftCombo lhs;
      lhs.circles = 2;
      for (const auto& [m1, c1] : merge_labels(x, y).terms)
        for (const auto& [m2, c2] : split_label(m1 ? FrobLabel::X : FrobLabel::One).terms)
          lhs.add(m2, c1 * c2);

      TqftCombo rhs;
      rhs.circles = 2;
      for (const auto& [dmask, dc] : split_label(y).terms) {
        FrobLabel y1 = (dmask & 1u) ? FrobLabel::X : FrobLabel::One;
        FrobLabel y2 = (dmask & 2u) ? FrobLabel::X : FrobLabel::One;
        for (const auto& [pm, pc] : merge_labels(x, y1).terms) {
          LabelMask mask = (pm & 1u) | ((y2 == FrobLabel::X) ? 2u : 0u);
          rhs.add(mask, dc * pc);
        }
      }
      CHECK(lhs == rhs);
    }
}

TEST_CASE("contraction engine basics") {
  // two disjoint bigons (pairs of parallel edges), one saddle merging them
  NodeDiagram d;
  d.node_count = 4;
  d.edges = {{0, 1}, {0, 1}, {2, 3}, {2, 3}};
  auto before = circles_of(d);
  REQUIRE(before.count == 2);

  // empty schedule leaves the input unchanged
  TqftCombo in = TqftCombo::basis(2, 0b01);
  auto id_res = evaluate_contraction(d, {}, in);
  CHECK(id_res.combo == in);

  // one merge of (One, X)
  auto res = evaluate_contraction(d, {SaddleStep{1, 2}}, in);
  REQUIRE(res.circles.count == 1);
  CHECK(res.combo == TqftCombo::basis(1, 0b1));

  // merge of (X, X) kills the term
  auto res2 = evaluate_contraction(d, {SaddleStep{1, 2}}, TqftCombo::basis(2, 0b11));
  CHECK(res2.combo.is_zero());
}

TEST_CASE("split saddle") {
  // one circle out of two parallel edges; the saddle splits it in two
  NodeDiagram d;
  d.node_count = 2;
  d.edges = {{0, 1}, {0, 1}};
  auto res = evaluate_contraction(d, {SaddleStep{0, 1}}, TqftCombo::basis(1, 0));
  REQUIRE(res.circles.count == 2);
  CHECK(res.combo.terms.size() == 2);
  CHECK(coeff_of(res.combo, 0b01) == 1);
  CHECK(coeff_of(res.combo, 0b10) == 1);

  auto resx = evaluate_contraction(d, {SaddleStep{0, 1}}, TqftCombo::basis(1, 1));
  CHECK(resx.combo == TqftCombo::basis(2, 0b11));
}

TEST_CASE("saddles raise degree by one") {
  NodeDiagram d;
  d.node_count = 4;
  d.edges = {{0, 1}, {0, 1}, {2, 3}, {2, 3}};
  for (LabelMask mask = 0; mask < 4; ++mask) {
    TqftCombo in = TqftCombo::basis(2, mask);
    auto res = evaluate_contraction(d, {SaddleStep{1, 2}}, in);
    for (const auto& [m, c] : res.combo.terms)
      CHECK(mask_degree(m, res.circles.count) == mask_degree(mask, 2) + 1);
  }
}

TEST_CASE("schedule validation") {
  NodeDiagram d;
  d.node_count = 2;
  d.edges = {{0, 1}, {0, 1}};
  CHECK_THROWS_AS(evaluate_contraction(d, {SaddleStep{0, 5}}, TqftCombo::basis(1, 0)),
                  StructuralError);
  CHECK_THROWS_AS(evaluate_contraction(d, {SaddleStep{0, 0}}, TqftCombo::basis(1, 0)),
                  StructuralError);
  CHECK_THROWS_AS(evaluate_contraction(d, {}, TqftCombo::basis(3, 0)), StructuralError);
}

TEST_CASE("two-step schedules are order independent") {
  // two independent saddle pairs; both orders must agree on all inputs
  NodeDiagram d;
  d.node_count = 8;
  d.edges = {{0, 1}, {0, 1}, {2, 3}, {2, 3}, {4, 5}, {4, 5}, {6, 7}, {6, 7}};
  for (LabelMask mask = 0; mask < 16; ++mask) {
    TqftCombo in = TqftCombo::basis(4, mask);
    auto r1 = evaluate_contraction(d, {SaddleStep{1, 2}, SaddleStep{5, 6}}, in);
    auto r2 = evaluate_contraction(d, {SaddleStep{5, 6}, SaddleStep{1, 2}}, in);
    // same final diagram, so circle numberings agree directly
    CHECK(r1.combo == r2.combo);
  }
}
