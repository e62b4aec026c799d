#include "pir/simplex.hpp"

#include <cassert>
#include <stdexcept>

namespace pir {
namespace {

enum class ColKind { kStructural, kSlack, kArtificial };

struct Tableau {
  std::vector<std::vector<Rational>> a;  // m x total_cols
  std::vector<Rational> b;               // m, kept >= 0
  std::vector<int> basis;                // column basic in each row
  std::vector<ColKind> kind;
  std::vector<Rational> reduced;  // current reduced costs
  Rational objective = 0;

  int rows() const { return static_cast<int>(a.size()); }
  int cols() const { return static_cast<int>(kind.size()); }

  void pivot(int row, int col) {
    const Rational p = a[row][col];
    assert(p != 0);
    if (p != 1) {
      for (auto& v : a[row]) {
        if (v != 0) v /= p;
      }
      b[row] /= p;
    }
    for (int i = 0; i < rows(); ++i) {
      if (i == row) continue;
      const Rational f = a[i][col];
      if (f == 0) continue;
      for (int j = 0; j < cols(); ++j) {
        if (a[row][j] != 0) a[i][j] -= f * a[row][j];
      }
      b[i] -= f * b[row];
    }
    {
      const Rational f = reduced[col];
      if (f != 0) {
        for (int j = 0; j < cols(); ++j) {
          if (a[row][j] != 0) reduced[j] -= f * a[row][j];
        }
        objective -= f * b[row];
      }
    }
    basis[row] = col;
  }

  // Bland: entering = lowest-index eligible column with negative reduced
  // cost; leaving = lexicographically by ratio, then lowest basic index.
  // Returns false at optimality. Throws if the problem is unbounded.
  bool bland_step(bool allow_artificial_entering) {
    int entering = -1;
    for (int j = 0; j < cols(); ++j) {
      if (!allow_artificial_entering && kind[j] == ColKind::kArtificial) continue;
      if (reduced[j] < 0) {
        entering = j;
        break;
      }
    }
    if (entering < 0) return false;
    int leaving = -1;
    Rational best_ratio = 0;
    for (int i = 0; i < rows(); ++i) {
      if (a[i][entering] <= 0) continue;
      Rational ratio = b[i] / a[i][entering];
      if (leaving < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leaving])) {
        leaving = i;
        best_ratio = ratio;
      }
    }
    if (leaving < 0) throw std::logic_error("simplex: unbounded objective");
    pivot(leaving, entering);
    return true;
  }
};

}  // namespace

LpSolution solve_dense_lp(const DenseLp& lp) {
  const int n = static_cast<int>(lp.objective.size());
  const int n_eq = static_cast<int>(lp.eq_rows.size());
  const int n_ub = static_cast<int>(lp.ub_rows.size());
  const int m = n_eq + n_ub;

  Tableau t;
  t.a.assign(m, std::vector<Rational>(n + n_ub, Rational(0)));
  t.b.assign(m, Rational(0));
  t.kind.assign(n, ColKind::kStructural);
  t.kind.insert(t.kind.end(), n_ub, ColKind::kSlack);
  std::vector<int> row_sign(m, 1);

  for (int i = 0; i < n_eq; ++i) {
    for (int j = 0; j < n; ++j) t.a[i][j] = lp.eq_rows[i][j];
    t.b[i] = lp.eq_rhs[i];
  }
  for (int i = 0; i < n_ub; ++i) {
    int r = n_eq + i;
    for (int j = 0; j < n; ++j) t.a[r][j] = lp.ub_rows[i][j];
    t.a[r][n + i] = 1;
    t.b[r] = lp.ub_rhs[i];
  }
  for (int i = 0; i < m; ++i) {
    if (t.b[i] < 0) {
      row_sign[i] = -1;
      for (auto& v : t.a[i]) v = -v;
      t.b[i] = -t.b[i];
    }
  }

  // Initial basis: positive slacks where available, artificials elsewhere.
  t.basis.assign(m, -1);
  std::vector<int> artificial_row;  // row index per artificial column
  for (int i = 0; i < m; ++i) {
    if (i >= n_eq && row_sign[i] == 1) {
      t.basis[i] = n + (i - n_eq);
    } else {
      int col = t.cols();
      t.kind.push_back(ColKind::kArtificial);
      for (int r = 0; r < m; ++r) t.a[r].push_back(Rational(r == i ? 1 : 0));
      t.basis[i] = col;
      artificial_row.push_back(i);
    }
  }

  // Phase 1: minimize the sum of artificials. The stored objective cell is
  // the cost row's rhs entry, i.e. minus the current objective value.
  t.reduced.assign(t.cols(), Rational(0));
  t.objective = 0;
  for (int i : artificial_row) {
    for (int j = 0; j < t.cols(); ++j) {
      if (t.kind[j] != ColKind::kArtificial && t.a[i][j] != 0) t.reduced[j] -= t.a[i][j];
    }
    t.objective -= t.b[i];
  }
  while (t.bland_step(/*allow_artificial_entering=*/false)) {
  }

  LpSolution result;
  if (t.objective != 0) {
    result.status = LpStatus::kInfeasible;
    if (n_ub == 0) {
      // Farkas certificate from the phase-1 duals: for artificial column j
      // on row i, reduced cost is 1 - y_i. Duals of negated rows flip back.
      result.farkas.assign(m, Rational(0));
      int art_idx = 0;
      for (int j = 0; j < t.cols(); ++j) {
        if (t.kind[j] != ColKind::kArtificial) continue;
        int row = artificial_row[art_idx++];
        Rational y = 1 - t.reduced[j];
        result.farkas[row] = Rational(-row_sign[row]) * y;
      }
    }
    return result;
  }

  // Drive leftover artificials out of the basis (they sit at value 0).
  for (int i = 0; i < m; ++i) {
    if (t.kind[t.basis[i]] != ColKind::kArtificial) continue;
    int col = -1;
    for (int j = 0; j < n + n_ub; ++j) {
      if (t.a[i][j] != 0) {
        col = j;
        break;
      }
    }
    if (col >= 0) {
      t.pivot(i, col);
    }
    // A fully zero row is redundant; its artificial stays basic at zero and
    // never re-enters the arithmetic.
  }

  // Phase 2 with the real objective.
  t.reduced.assign(t.cols(), Rational(0));
  for (int j = 0; j < n; ++j) t.reduced[j] = lp.objective[j];
  t.objective = 0;
  for (int i = 0; i < m; ++i) {
    int bj = t.basis[i];
    Rational c = (bj < n) ? lp.objective[bj] : Rational(0);
    if (c == 0) continue;
    for (int j = 0; j < t.cols(); ++j) {
      if (t.a[i][j] != 0) t.reduced[j] -= c * t.a[i][j];
    }
    t.objective -= c * t.b[i];
  }
  // Artificial columns must stay out.
  for (int j = 0; j < t.cols(); ++j) {
    if (t.kind[j] == ColKind::kArtificial) t.reduced[j] = 0;
  }
  while (t.bland_step(/*allow_artificial_entering=*/false)) {
  }

  result.status = LpStatus::kOptimal;
  result.objective = -t.objective;
  result.values.assign(n, Rational(0));
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < n) result.values[t.basis[i]] = t.b[i];
  }
  return result;
}

}  // namespace pir
