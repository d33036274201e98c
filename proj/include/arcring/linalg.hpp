#pragma once

// Exact integer matrices and Smith normal form, used to present graded
// pieces of tensor products as finitely generated abelian groups.

#include <vector>

#include "arcring/laurent.hpp"

namespace arcring {

/// Dense integer matrix (row-major), exact entries.
struct IntMatrix {
  int rows = 0, cols = 0;
  std::vector<BigInt> data;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0) {}

  BigInt& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  const BigInt& at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
};

struct SmithResult {
  std::vector<BigInt> invariants;  // positive diagonal entries, d1 | d2 | ...
  int rank = 0;
  std::vector<BigInt> torsion() const {
    std::vector<BigInt> t;
    for (const auto& d : invariants)
      if (d > 1) t.push_back(d);
    return t;
  }
};

inline SmithResult smith_normal_form(IntMatrix m) {
  SmithResult out;
  const int n = std::min(m.rows, m.cols);
  auto abs_val = [](const BigInt& v) { return v < 0 ? BigInt(-v) : v; };
  for (int t = 0; t < n; ++t) {
    // pivot: smallest nonzero magnitude in the trailing submatrix
    int pr = -1, pc = -1;
    BigInt best = 0;
    for (int i = t; i < m.rows; ++i)
      for (int j = t; j < m.cols; ++j) {
        if (m.at(i, j) == 0) continue;
        BigInt a = abs_val(m.at(i, j));
        if (pr < 0 || a < best) {
          best = a;
          pr = i;
          pc = j;
        }
      }
    if (pr < 0) break;
    for (int j = 0; j < m.cols; ++j) std::swap(m.at(t, j), m.at(pr, j));
    for (int i = 0; i < m.rows; ++i) std::swap(m.at(i, t), m.at(i, pc));

    bool clean = false;
    while (!clean) {
      clean = true;
      // clear column t
      for (int i = t + 1; i < m.rows; ++i) {
        if (m.at(i, t) == 0) continue;
        BigInt q = m.at(i, t) / m.at(t, t);
        if (q != 0)
          for (int j = t; j < m.cols; ++j) m.at(i, j) -= q * m.at(t, j);
        if (m.at(i, t) != 0) {  // smaller remainder becomes the pivot
          for (int j = t; j < m.cols; ++j) std::swap(m.at(t, j), m.at(i, j));
          clean = false;
        }
      }
      // clear row t
      for (int j = t + 1; j < m.cols; ++j) {
        if (m.at(t, j) == 0) continue;
        BigInt q = m.at(t, j) / m.at(t, t);
        if (q != 0)
          for (int i = t; i < m.rows; ++i) m.at(i, j) -= q * m.at(i, t);
        if (m.at(t, j) != 0) {
          for (int i = t; i < m.rows; ++i) std::swap(m.at(i, t), m.at(i, j));
          clean = false;
        }
      }
      if (!clean) continue;
      // pivot must divide the rest of the submatrix
      for (int i = t + 1; i < m.rows && clean; ++i)
        for (int j = t + 1; j < m.cols && clean; ++j)
          if (m.at(i, j) % m.at(t, t) != 0) {
            for (int jj = t; jj < m.cols; ++jj) m.at(t, jj) += m.at(i, jj);
            clean = false;
          }
    }
  }
  for (int t = 0; t < n; ++t) {
    if (m.at(t, t) == 0) break;
    out.invariants.push_back(abs_val(m.at(t, t)));
  }
  out.rank = static_cast<int>(out.invariants.size());
  return out;
}

/// Incremental integer column-space reducer: feeds sparse columns, keeps a
/// row-echelon lattice basis of their span, and finishes with the Smith
/// normal form of the (much smaller) basis matrix.
class LatticeReducer {
 public:
  void add_column(std::map<int, BigInt> col) {
    for (auto it = col.begin(); it != col.end();) {
      if (it->second == 0)
        it = col.erase(it);
      else
        ++it;
    }
    while (!col.empty()) {
      const int r = col.begin()->first;
      auto pit = pivots_.find(r);
      if (pit == pivots_.end()) {
        pivots_[r] = std::move(col);
        return;
      }
      std::map<int, BigInt>& p = pit->second;
      BigInt pv = p.begin()->second;
      BigInt cv = col.begin()->second;
      if (cv % pv == 0) {
        subtract_scaled(col, p, cv / pv);
      } else {
        // replace the pivot by the gcd combination, then eliminate
        BigInt s, t;
        BigInt g = ext_gcd(pv, cv, s, t);
        std::map<int, BigInt> combo = scaled(p, s);
        add_scaled(combo, col, t);
        std::map<int, BigInt> newcol = scaled(col, pv / g);
        subtract_scaled(newcol, p, cv / g);
        p = std::move(combo);
        col = std::move(newcol);
      }
    }
  }

  int rank() const { return static_cast<int>(pivots_.size()); }

  /// The echelon basis of the span: leading row -> sparse column.
  const std::map<int, std::map<int, BigInt>>& pivots() const { return pivots_; }

  SmithResult finish() const { return smith_of_columns(pivots_); }

  /// SNF of a set of sparse columns after compressing the touched rows.
  static SmithResult smith_of_columns(const std::map<int, std::map<int, BigInt>>& cols) {
    if (cols.empty()) return SmithResult{};
    std::map<int, int> row_index;
    for (const auto& [lead, col] : cols)
      for (const auto& [row, v] : col) row_index.emplace(row, 0);
    int nr = 0;
    for (auto& [row, idx] : row_index) idx = nr++;
    IntMatrix m(nr, static_cast<int>(cols.size()));
    int j = 0;
    for (const auto& [lead, col] : cols) {
      for (const auto& [row, v] : col) m.at(row_index[row], j) = v;
      ++j;
    }
    return smith_normal_form(std::move(m));
  }

 private:
  static BigInt ext_gcd(const BigInt& a, const BigInt& b, BigInt& s, BigInt& t) {
    if (b == 0) {
      s = a < 0 ? -1 : 1;
      t = 0;
      return a < 0 ? BigInt(-a) : a;
    }
    BigInt x, y;
    BigInt g = ext_gcd(b, a % b, x, y);  // x b + y (a mod b) = g
    s = y;
    t = x - (a / b) * y;
    return g;
  }

  static std::map<int, BigInt> scaled(const std::map<int, BigInt>& col, const BigInt& f) {
    std::map<int, BigInt> out;
    if (f == 0) return out;
    for (const auto& [r, v] : col) out[r] = v * f;
    return out;
  }
  static void add_scaled(std::map<int, BigInt>& dst, const std::map<int, BigInt>& src,
                         const BigInt& f) {
    if (f == 0) return;
    for (const auto& [r, v] : src) {
      auto it = dst.find(r);
      if (it == dst.end()) {
        dst[r] = v * f;
      } else {
        it->second += v * f;
        if (it->second == 0) dst.erase(it);
      }
    }
  }
  static void subtract_scaled(std::map<int, BigInt>& dst, const std::map<int, BigInt>& src,
                              const BigInt& f) {
    add_scaled(dst, src, -f);
  }

  std::map<int, std::map<int, BigInt>> pivots_;
};

/// Determinant of a square Laurent-polynomial matrix by fraction-free
/// Bareiss elimination (every division is exact in Z[q,q^-1]).
inline LaurentPoly laurent_determinant(std::vector<std::vector<LaurentPoly>> m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw StructuralError("determinant of a non-square matrix");
  if (n == 0) return LaurentPoly(1);
  LaurentPoly prev(1);
  int sign = 1;
  for (std::size_t t = 0; t + 1 < n; ++t) {
    if (m[t][t].is_zero()) {
      std::size_t swap_row = t + 1;
      while (swap_row < n && m[swap_row][t].is_zero()) ++swap_row;
      if (swap_row == n) return LaurentPoly();
      std::swap(m[t], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = t + 1; i < n; ++i)
      for (std::size_t j = t + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[t][t] - m[i][t] * m[t][j]).divide_exact(prev);
    prev = m[t][t];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

}  // namespace arcring
