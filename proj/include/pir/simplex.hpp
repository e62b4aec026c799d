#pragma once

#include <vector>

#include "pir/rational.hpp"

namespace pir {

// Dense exact-rational LP in the form
//   min c^T x   s.t.  A_eq x = b_eq,  A_ub x <= b_ub,  x >= 0.
struct DenseLp {
  std::vector<Rational> objective;
  std::vector<std::vector<Rational>> eq_rows;
  std::vector<Rational> eq_rhs;
  std::vector<std::vector<Rational>> ub_rows;
  std::vector<Rational> ub_rhs;
};

enum class LpStatus { kOptimal, kInfeasible };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Rational objective;
  std::vector<Rational> values;  // one per structural variable
  // When infeasible and the problem had only equality rows: a vector y with
  // A^T y >= 0 and b^T y < 0 (Farkas certificate), one entry per eq row.
  std::vector<Rational> farkas;
};

// Two-phase primal simplex with Bland's anti-cycling rule. Exact arithmetic
// throughout; deterministic for a fixed column order.
LpSolution solve_dense_lp(const DenseLp& lp);

}  // namespace pir
