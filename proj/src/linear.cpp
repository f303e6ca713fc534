#include "btq/linear.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "btq/errors.hpp"

namespace btq {

ParametricSolution solve_parametric(const Field& field, const FqMatrix& w, const FqMatrix& r,
                                    std::size_t n, std::size_t m) {
  if (w.size() != r.size()) throw DomainError("row count mismatch");
  FqMatrix aug;
  aug.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    FqVector row = w[i];
    row.insert(row.end(), r[i].begin(), r[i].end());
    aug.push_back(std::move(row));
  }

  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < aug.size(); ++col) {
    std::size_t sel = row;
    while (sel < aug.size() && aug[sel][col].is_zero()) ++sel;
    if (sel == aug.size()) continue;
    std::swap(aug[row], aug[sel]);
    const FieldElement inv = field.inv(aug[row][col]);
    for (auto& x : aug[row]) x = field.mul(x, inv);
    for (std::size_t i = 0; i < aug.size(); ++i) {
      if (i == row || aug[i][col].is_zero()) continue;
      const FieldElement f = aug[i][col];
      for (std::size_t j = 0; j < n + m; ++j) {
        aug[i][j] = field.sub(aug[i][j], field.mul(f, aug[row][j]));
      }
    }
    pivots.push_back(col);
    ++row;
  }

  ParametricSolution out;
  out.particular.assign(n, FqVector(m, field.zero()));
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    out.particular[pivots[i]] = FqVector(aug[i].begin() + static_cast<long>(n), aug[i].end());
  }
  for (std::size_t i = pivots.size(); i < aug.size(); ++i) {
    FqVector cond(aug[i].begin() + static_cast<long>(n), aug[i].end());
    if (std::any_of(cond.begin(), cond.end(), [](FieldElement x) { return !x.is_zero(); })) {
      out.conditions.push_back(std::move(cond));
    }
  }
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    FqVector v(n, field.zero());
    v[f] = field.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = field.neg(aug[i][f]);
    out.kernel.push_back(std::move(v));
  }
  return out;
}

FqVector apply(const Field& field, const FqMatrix& a, const FqVector& x) {
  FqVector out;
  out.reserve(a.size());
  for (const auto& row : a) {
    FieldElement acc = field.zero();
    for (std::size_t j = 0; j < row.size(); ++j) acc = field.add(acc, field.mul(row[j], x[j]));
    out.push_back(acc);
  }
  return out;
}

std::optional<FqVector> coordinates(const Field& field, const std::vector<FqVector>& basis,
                                    const FqVector& v) {
  const std::size_t k = basis.size();
  if (k == 0) {
    if (std::all_of(v.begin(), v.end(), [](FieldElement x) { return x.is_zero(); })) return FqVector{};
    return std::nullopt;
  }
  FqMatrix w(v.size(), FqVector(k));
  FqMatrix r(v.size(), FqVector(1));
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < k; ++j) w[i][j] = basis[j][i];
    r[i][0] = v[i];
  }
  const ParametricSolution sol = solve_parametric(field, w, r, k, 1);
  if (!sol.conditions.empty()) return std::nullopt;
  FqVector out(k);
  for (std::size_t j = 0; j < k; ++j) out[j] = sol.particular[j][0];
  return out;
}

FqVector residue_coordinates(const Polynomial& f, const Polynomial& modulus) {
  const Polynomial rem = f % modulus;
  FqVector out(static_cast<std::size_t>(modulus.degree()));
  for (int i = 0; i < modulus.degree(); ++i) out[static_cast<std::size_t>(i)] = rem.coeff(i);
  return out;
}

std::vector<std::int64_t> smith_diagonal(std::vector<std::vector<std::int64_t>> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  const std::size_t len = std::min(rows, cols);
  for (std::size_t k = 0; k < len; ++k) {
    while (true) {
      // Move the smallest nonzero entry of the trailing block to (k, k).
      std::size_t bi = rows;
      std::size_t bj = cols;
      for (std::size_t i = k; i < rows; ++i) {
        for (std::size_t j = k; j < cols; ++j) {
          if (a[i][j] != 0 && (bi == rows || std::llabs(a[i][j]) < std::llabs(a[bi][bj]))) {
            bi = i;
            bj = j;
          }
        }
      }
      if (bi == rows) break;
      std::swap(a[k], a[bi]);
      for (auto& r : a) std::swap(r[k], r[bj]);

      bool clean = true;
      for (std::size_t i = k + 1; i < rows; ++i) {
        const std::int64_t f = a[i][k] / a[k][k];
        for (std::size_t j = k; j < cols; ++j) a[i][j] -= f * a[k][j];
        if (a[i][k] != 0) clean = false;
      }
      for (std::size_t j = k + 1; j < cols; ++j) {
        const std::int64_t f = a[k][j] / a[k][k];
        for (std::size_t i = k; i < rows; ++i) a[i][j] -= f * a[i][k];
        if (a[k][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility of the rest of the block by the pivot.
      bool divides_all = true;
      for (std::size_t i = k + 1; i < rows && divides_all; ++i) {
        for (std::size_t j = k + 1; j < cols; ++j) {
          if (a[i][j] % a[k][k] != 0) {
            for (std::size_t jj = k; jj < cols; ++jj) a[k][jj] += a[i][jj];
            divides_all = false;
            break;
          }
        }
      }
      if (divides_all) break;
    }
  }
  std::vector<std::int64_t> diag(len);
  for (std::size_t k = 0; k < len; ++k) diag[k] = std::llabs(a[k][k]);
  return diag;
}

}  // namespace btq
