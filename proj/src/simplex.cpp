#include "vdclab/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vdclab/errors.hpp"

namespace vdclab {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-10;
constexpr double kFeasTol = 1e-8;

struct Tableau {
  std::size_t m = 0;        // rows
  std::size_t n = 0;        // structural columns
  std::size_t width = 0;    // n + m artificials + 1 rhs
  std::vector<double> t;    // m x width
  std::vector<std::size_t> basis;
  std::vector<bool> row_active;

  double& at(std::size_t r, std::size_t c) { return t[r * width + c]; }
  double at(std::size_t r, std::size_t c) const { return t[r * width + c]; }
  std::size_t rhs() const { return width - 1; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double pv = at(pr, pc);
    for (std::size_t c = 0; c < width; ++c) at(pr, c) /= pv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == pr || !row_active[r]) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < width; ++c) at(r, c) -= f * at(pr, c);
    }
    basis[pr] = pc;
  }
};

// One simplex phase: Dantzig pricing with the lexicographic ratio test.
// The lexicographic rule (rhs first, then the artificial identity block,
// then the structural columns) keeps every row lex-positive, so no basis
// repeats and the phase terminates without cycling.
void run_phase(Tableau& tab, const std::vector<double>& cost, std::size_t allowed_cols,
               std::size_t& iterations) {
  const std::size_t m = tab.m;
  std::vector<double> cb(m, 0.0);

  const auto lex_less = [&](std::size_t r1, double a1, std::size_t r2, double a2) {
    const double rhs1 = tab.at(r1, tab.rhs()) / a1;
    const double rhs2 = tab.at(r2, tab.rhs()) / a2;
    if (rhs1 < rhs2 - 1e-12) return true;
    if (rhs2 < rhs1 - 1e-12) return false;
    for (std::size_t c = tab.n; c < tab.n + m; ++c) {
      const double v1 = tab.at(r1, c) / a1;
      const double v2 = tab.at(r2, c) / a2;
      if (v1 < v2 - 1e-12) return true;
      if (v2 < v1 - 1e-12) return false;
    }
    for (std::size_t c = 0; c < tab.n; ++c) {
      const double v1 = tab.at(r1, c) / a1;
      const double v2 = tab.at(r2, c) / a2;
      if (v1 < v2 - 1e-12) return true;
      if (v2 < v1 - 1e-12) return false;
    }
    return false;
  };

  for (;;) {
    if (++iterations > kSimplexIterationCap) {
      throw SolverError("simplex iteration cap exceeded");
    }
    for (std::size_t r = 0; r < m; ++r) {
      cb[r] = tab.row_active[r] ? cost[tab.basis[r]] : 0.0;
    }
    std::size_t entering = allowed_cols;
    double most_negative = -kCostTol;
    for (std::size_t j = 0; j < allowed_cols; ++j) {
      double reduced = cost[j];
      for (std::size_t r = 0; r < m; ++r) {
        if (cb[r] != 0.0) reduced -= cb[r] * tab.at(r, j);
      }
      if (reduced < most_negative) {
        most_negative = reduced;
        entering = j;
      }
    }
    if (entering == allowed_cols) return;  // optimal

    std::size_t leaving = m;
    double leaving_pivot = 1.0;
    for (std::size_t r = 0; r < m; ++r) {
      if (!tab.row_active[r]) continue;
      const double a = tab.at(r, entering);
      if (a <= kPivotTol) continue;
      if (leaving == m || lex_less(r, a, leaving, leaving_pivot)) {
        leaving = r;
        leaving_pivot = a;
      }
    }
    if (leaving == m) {
      throw SolverError("linear program is unbounded");
    }
    tab.pivot(leaving, entering);
  }
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  if (lp.a.size() != lp.rows * lp.cols || lp.b.size() != lp.rows || lp.c.size() != lp.cols) {
    throw std::invalid_argument("linear program shape mismatch");
  }
  const std::size_t m = lp.rows;
  const std::size_t n = lp.cols;

  Tableau tab;
  tab.m = m;
  tab.n = n;
  tab.width = n + m + 1;
  tab.t.assign(m * tab.width, 0.0);
  tab.basis.resize(m);
  tab.row_active.assign(m, true);

  for (std::size_t r = 0; r < m; ++r) {
    const double sign = lp.b[r] < 0.0 ? -1.0 : 1.0;
    for (std::size_t c = 0; c < n; ++c) tab.at(r, c) = sign * lp.at(r, c);
    tab.at(r, n + r) = 1.0;
    tab.at(r, tab.rhs()) = sign * lp.b[r];
    tab.basis[r] = n + r;
  }

  LpSolution sol;

  // Phase 1: minimize the sum of artificials.
  std::vector<double> phase1_cost(n + m, 0.0);
  for (std::size_t r = 0; r < m; ++r) phase1_cost[n + r] = 1.0;
  run_phase(tab, phase1_cost, n + m, sol.iterations);

  double infeas = 0.0;
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.basis[r] >= n) infeas += tab.at(r, tab.rhs());
  }
  if (infeas > kFeasTol) {
    sol.feasible = false;
    return sol;
  }

  // Drive artificials still basic at zero out of the basis; deactivate rows
  // that turn out redundant.
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.basis[r] < n || !tab.row_active[r]) continue;
    std::size_t pc = n;
    for (std::size_t c = 0; c < n; ++c) {
      if (std::abs(tab.at(r, c)) > kPivotTol) {
        pc = c;
        break;
      }
    }
    if (pc == n) {
      tab.row_active[r] = false;
    } else {
      tab.pivot(r, pc);
    }
  }

  // Phase 2 over structural columns only.
  std::vector<double> phase2_cost(n + m, 0.0);
  for (std::size_t c = 0; c < n; ++c) phase2_cost[c] = lp.c[c];
  run_phase(tab, phase2_cost, n, sol.iterations);

  sol.feasible = true;
  sol.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.row_active[r] && tab.basis[r] < n) {
      sol.x[tab.basis[r]] = tab.at(r, tab.rhs());
    }
  }
  sol.value = 0.0;
  for (std::size_t c = 0; c < n; ++c) sol.value += lp.c[c] * sol.x[c];

  // Duals from the artificial block: column n + i carries B^{-1} e_i, so
  // y_i = c_B B^{-1} e_i (flip sign where the row was negated on input).
  sol.y.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double yi = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
      if (!tab.row_active[r]) continue;
      const double cb = phase2_cost[tab.basis[r]];
      if (cb != 0.0) yi += cb * tab.at(r, n + i);
    }
    sol.y[i] = lp.b[i] < 0.0 ? -yi : yi;
  }
  return sol;
}

}  // namespace vdclab
