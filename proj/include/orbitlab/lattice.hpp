#pragma once

#include <optional>
#include <vector>

#include "orbitlab/arith.hpp"

namespace orbitlab {

/// Row-major integer matrix.
using IntMatrix = std::vector<std::vector<Integer>>;

/// Column echelon form H = A V with V unimodular. The first `rank` columns of
/// H are nonzero with pivot rows strictly increasing and positive pivots; the
/// remaining columns are zero, so the matching columns of V span ker(A).
struct ColumnEchelon {
  IntMatrix h;
  IntMatrix v;
  std::vector<std::size_t> pivot_rows;
  std::size_t rank() const { return pivot_rows.size(); }
};

ColumnEchelon column_echelon(const IntMatrix& a, std::size_t cols);

/// Some integer solution e of A e = t, if one exists.
std::optional<std::vector<Integer>> solve_integer(const IntMatrix& a, std::size_t cols, const std::vector<Integer>& t);

/// Basis (as vectors of length `cols`) of {e in Z^cols : A e = 0}.
std::vector<std::vector<Integer>> integer_kernel(const IntMatrix& a, std::size_t cols);

/// Reduced row Hermite normal form of the lattice spanned by `rows`: unique
/// basis, zero rows dropped, positive pivots, entries above each pivot in
/// [0, pivot).
IntMatrix hermite_rows(const IntMatrix& rows, std::size_t cols);

/// The saturation (Q-span intersect Z^cols) of the row lattice, in reduced HNF.
IntMatrix saturate_rows(const IntMatrix& rows, std::size_t cols);

}  // namespace orbitlab
