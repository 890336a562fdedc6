#ifndef VHRD_TRIDIAGONAL_HPP
#define VHRD_TRIDIAGONAL_HPP

#include <vector>

#include "vhrd/grid.hpp"
#include "vhrd/model.hpp"

namespace vhrd {

// Tridiagonal discretization of u -> -(d(x,t) u')' + r(x) u in flux form.
// Dirichlet boundaries eliminate the pinned end nodes (unknowns = N-1
// interior values); no-flux/Robin boundaries keep all N+1 nodes, closing the
// end rows by ghost-node elimination of alpha*du/dnu + beta*u = 0.
struct TridiagonalOperator {
  std::vector<double> lower;     // lower[i] multiplies u[i-1]; lower[0] unused
  std::vector<double> diagonal;
  std::vector<double> upper;     // upper[i] multiplies u[i+1]; upper[n-1] unused
  int unknown_count = 0;
  bool dirichlet = false;

  std::vector<double> apply(const std::vector<double>& u) const;
};

// Face values d(x_i +- h/2, t); boundary rows fold 2*beta*d(0,t)/h into the
// diagonal. Throws AssemblyError when d is not strictly positive at a sampled
// face.
TridiagonalOperator assemble_operator(const Grid& grid, const CoefficientField& d,
                                      const CoefficientField& reaction, double t,
                                      const BoundaryCondition& bc);

// Same stencil with a per-unknown reaction array (used by the time steppers,
// whose reaction rows mix coefficient fields with lagged state values).
TridiagonalOperator assemble_operator(const Grid& grid, const CoefficientField& d,
                                      const std::vector<double>& reaction, double t,
                                      const BoundaryCondition& bc);

// In place: op <- I + s*op.
void scale_shift_identity(TridiagonalOperator& op, double s);

// Thomas elimination; throws SingularSystemError on a vanishing pivot.
std::vector<double> tridiagonal_solve(const TridiagonalOperator& op,
                                      const std::vector<double>& rhs);

// Reusable LU-style factorization of a tridiagonal matrix, for solvers that
// hit the same matrix with many right-hand sides.
struct TridiagonalFactor {
  std::vector<double> lower;
  std::vector<double> c_prime;
  std::vector<double> inv_pivot;

  explicit TridiagonalFactor(const TridiagonalOperator& op);
  TridiagonalFactor() = default;

  void solve_in_place(std::vector<double>& rhs) const;
  int size() const { return static_cast<int>(inv_pivot.size()); }
};

}  // namespace vhrd

#endif
