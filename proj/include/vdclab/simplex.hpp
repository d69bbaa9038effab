#pragma once

#include <cstdint>
#include <vector>

namespace vdclab {

// min c.x  s.t.  A x = b, x >= 0, solved by a dense two-phase simplex with
// Bland's rule. Sized for desk-scale spectral problems (thousands of
// variables, tens of constraints).
struct LinearProgram {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;  // row-major rows x cols
  std::vector<double> b;
  std::vector<double> c;

  double& at(std::size_t r, std::size_t col) { return a[r * cols + col]; }
  double at(std::size_t r, std::size_t col) const { return a[r * cols + col]; }
};

struct LpSolution {
  bool feasible = false;
  double value = 0.0;
  std::vector<double> x;
  // Dual multipliers, one per constraint row (c_B B^{-1}).
  std::vector<double> y;
  std::size_t iterations = 0;
};

inline constexpr std::size_t kSimplexIterationCap = 1000000;

// Throws SolverError when the iteration cap is hit or the problem is
// unbounded. Infeasibility is reported via solution.feasible = false.
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace vdclab
