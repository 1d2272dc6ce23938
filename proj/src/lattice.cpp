#include "orbitlab/lattice.hpp"

#include <stdexcept>

namespace orbitlab {
namespace {

void column_op(IntMatrix& m, std::size_t i, std::size_t j, const Integer& a, const Integer& b, const Integer& c,
               const Integer& d) {
  // (col_i, col_j) <- (a col_i + b col_j, c col_i + d col_j)
  for (auto& row : m) {
    Integer x = row[i], y = row[j];
    row[i] = a * x + b * y;
    row[j] = c * x + d * y;
  }
}

void negate_column(IntMatrix& m, std::size_t i) {
  for (auto& row : m) row[i] = -row[i];
}

IntMatrix transpose(const IntMatrix& a, std::size_t cols) {
  IntMatrix t(cols, std::vector<Integer>(a.size()));
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) t[c][r] = a[r][c];
  return t;
}

}  // namespace

ColumnEchelon column_echelon(const IntMatrix& a, std::size_t cols) {
  ColumnEchelon out;
  out.h = a;
  for (auto& row : out.h)
    if (row.size() != cols) throw std::invalid_argument("column_echelon: ragged matrix");
  out.v.assign(cols, std::vector<Integer>(cols, Integer(0)));
  for (std::size_t i = 0; i < cols; ++i) out.v[i][i] = 1;

  std::size_t next = 0;
  for (std::size_t r = 0; r < out.h.size() && next < cols; ++r) {
    // Fold every column >= next into column `next` on row r via extended gcd.
    for (std::size_t j = next + 1; j < cols; ++j) {
      const Integer x = out.h[r][next], y = out.h[r][j];
      if (y == 0) continue;
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
      const Integer xg = x / g, yg = y / g;
      // [s -yg; t xg] has determinant s xg + t yg = 1.
      column_op(out.h, next, j, s, t, -yg, xg);
      column_op(out.v, next, j, s, t, -yg, xg);
    }
    if (out.h[r][next] == 0) continue;
    if (out.h[r][next] < 0) {
      negate_column(out.h, next);
      negate_column(out.v, next);
    }
    out.pivot_rows.push_back(r);
    ++next;
  }
  return out;
}

std::optional<std::vector<Integer>> solve_integer(const IntMatrix& a, std::size_t cols, const std::vector<Integer>& t) {
  if (t.size() != a.size()) throw std::invalid_argument("solve_integer: dimension mismatch");
  const ColumnEchelon ce = column_echelon(a, cols);
  std::vector<Integer> y(cols, Integer(0));
  for (std::size_t j = 0; j < ce.rank(); ++j) {
    const std::size_t r = ce.pivot_rows[j];
    Integer acc = t[r];
    for (std::size_t l = 0; l < j; ++l) acc -= ce.h[r][l] * y[l];
    if (!mpz_divisible_p(acc.get_mpz_t(), ce.h[r][j].get_mpz_t())) return std::nullopt;
    y[j] = acc / ce.h[r][j];
  }
  for (std::size_t r = 0; r < a.size(); ++r) {
    Integer acc = 0;
    for (std::size_t j = 0; j < ce.rank(); ++j) acc += ce.h[r][j] * y[j];
    if (acc != t[r]) return std::nullopt;
  }
  std::vector<Integer> e(cols, Integer(0));
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t j = 0; j < ce.rank(); ++j) e[i] += ce.v[i][j] * y[j];
  return e;
}

std::vector<std::vector<Integer>> integer_kernel(const IntMatrix& a, std::size_t cols) {
  const ColumnEchelon ce = column_echelon(a, cols);
  std::vector<std::vector<Integer>> basis;
  for (std::size_t j = ce.rank(); j < cols; ++j) {
    std::vector<Integer> v(cols);
    for (std::size_t i = 0; i < cols; ++i) v[i] = ce.v[i][j];
    basis.push_back(std::move(v));
  }
  return hermite_rows(basis, cols);
}

IntMatrix hermite_rows(const IntMatrix& rows, std::size_t cols) {
  if (rows.empty()) return {};
  // Column echelon of the transpose is row echelon of the original, read
  // column by column.
  const ColumnEchelon ce = column_echelon(transpose(rows, cols), rows.size());
  IntMatrix basis;
  for (std::size_t j = 0; j < ce.rank(); ++j) {
    std::vector<Integer> v(cols);
    for (std::size_t i = 0; i < cols; ++i) v[i] = ce.h[i][j];
    basis.push_back(std::move(v));
  }
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const std::size_t p = ce.pivot_rows[j];
    for (std::size_t k = 0; k < j; ++k) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), basis[k][p].get_mpz_t(), basis[j][p].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t i = 0; i < cols; ++i) basis[k][i] -= q * basis[j][i];
    }
  }
  return basis;
}

IntMatrix saturate_rows(const IntMatrix& rows, std::size_t cols) {
  // sat(L) = vectors orthogonal to every integer vector orthogonal to L.
  const auto null = integer_kernel(rows, cols);
  return integer_kernel(null, cols);
}

}  // namespace orbitlab
