#include "vhrd/tridiagonal.hpp"

#include <cmath>
#include <sstream>

namespace vhrd {

std::vector<double> TridiagonalOperator::apply(const std::vector<double>& u) const {
  int n = unknown_count;
  std::vector<double> out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double v = diagonal[i] * u[i];
    if (i > 0) v += lower[i] * u[i - 1];
    if (i + 1 < n) v += upper[i] * u[i + 1];
    out[i] = v;
  }
  return out;
}

namespace {

double face_value(const CoefficientField& d, double x, double t) {
  double v = d(x, t);
  if (!(v > 0.0)) {
    std::ostringstream os;
    os << "non-positive diffusivity d(" << x << ", " << t << ") = " << v;
    throw AssemblyError(os.str());
  }
  return v;
}

}  // namespace

TridiagonalOperator assemble_operator(const Grid& grid, const CoefficientField& d,
                                      const std::vector<double>& reaction, double t,
                                      const BoundaryCondition& bc) {
  const int N = grid.intervals;
  const double h = grid.spacing();
  const double inv_h2 = 1.0 / (h * h);

  TridiagonalOperator op;
  op.dirichlet = bc.dirichlet();
  op.unknown_count = op.dirichlet ? N - 1 : N + 1;
  if (static_cast<int>(reaction.size()) != op.unknown_count)
    throw AssemblyError("reaction array size does not match unknown count");
  op.lower.assign(op.unknown_count, 0.0);
  op.diagonal.assign(op.unknown_count, 0.0);
  op.upper.assign(op.unknown_count, 0.0);

  // d at interval midpoints x_{i+1/2}, i = 0..N-1
  std::vector<double> face(N);
  for (int i = 0; i < N; ++i)
    face[i] = face_value(d, (i + 0.5) * h, t);

  if (op.dirichlet) {
    for (int k = 0; k < op.unknown_count; ++k) {
      int i = k + 1;  // grid node index
      double dm = face[i - 1], dp = face[i];
      op.diagonal[k] = (dm + dp) * inv_h2 + reaction[k];
      if (k > 0) op.lower[k] = -dm * inv_h2;
      if (k + 1 < op.unknown_count) op.upper[k] = -dp * inv_h2;
    }
    return op;
  }

  for (int i = 1; i < N; ++i) {
    double dm = face[i - 1], dp = face[i];
    op.lower[i] = -dm * inv_h2;
    op.diagonal[i] = (dm + dp) * inv_h2 + reaction[i];
    op.upper[i] = -dp * inv_h2;
  }
  // Ghost elimination of du/dnu + beta*u = 0 at both ends; the beta term
  // enters through the physical flux d(0,t)*beta*u.
  double beta0 = bc.beta(0.0, t);
  double betaL = bc.beta(grid.length, t);
  op.diagonal[0] = 2.0 * face[0] * inv_h2 +
                   2.0 * beta0 * face_value(d, 0.0, t) / h + reaction[0];
  op.upper[0] = -2.0 * face[0] * inv_h2;
  op.diagonal[N] = 2.0 * face[N - 1] * inv_h2 +
                   2.0 * betaL * face_value(d, grid.length, t) / h + reaction[N];
  op.lower[N] = -2.0 * face[N - 1] * inv_h2;
  return op;
}

TridiagonalOperator assemble_operator(const Grid& grid, const CoefficientField& d,
                                      const CoefficientField& reaction, double t,
                                      const BoundaryCondition& bc) {
  int n = bc.dirichlet() ? grid.intervals - 1 : grid.intervals + 1;
  int offset = bc.dirichlet() ? 1 : 0;
  std::vector<double> r(n);
  for (int k = 0; k < n; ++k)
    r[k] = reaction(grid.node(k + offset), t);
  return assemble_operator(grid, d, r, t, bc);
}

void scale_shift_identity(TridiagonalOperator& op, double s) {
  for (int i = 0; i < op.unknown_count; ++i) {
    op.lower[i] *= s;
    op.diagonal[i] = 1.0 + s * op.diagonal[i];
    op.upper[i] *= s;
  }
}

std::vector<double> tridiagonal_solve(const TridiagonalOperator& op,
                                      const std::vector<double>& rhs) {
  if (static_cast<int>(rhs.size()) != op.unknown_count)
    throw SingularSystemError("rhs size does not match unknown count");
  std::vector<double> out = rhs;
  TridiagonalFactor factor(op);
  factor.solve_in_place(out);
  return out;
}

TridiagonalFactor::TridiagonalFactor(const TridiagonalOperator& op)
    : lower(op.lower), c_prime(op.unknown_count, 0.0),
      inv_pivot(op.unknown_count, 0.0) {
  const int n = op.unknown_count;
  double pivot = op.diagonal[0];
  if (pivot == 0.0) throw SingularSystemError("zero pivot at row 0");
  inv_pivot[0] = 1.0 / pivot;
  c_prime[0] = op.upper[0] * inv_pivot[0];
  for (int i = 1; i < n; ++i) {
    pivot = op.diagonal[i] - op.lower[i] * c_prime[i - 1];
    if (pivot == 0.0)
      throw SingularSystemError("zero pivot at row " + std::to_string(i));
    inv_pivot[i] = 1.0 / pivot;
    if (i + 1 < n) c_prime[i] = op.upper[i] * inv_pivot[i];
  }
}

void TridiagonalFactor::solve_in_place(std::vector<double>& rhs) const {
  const int n = size();
  rhs[0] *= inv_pivot[0];
  for (int i = 1; i < n; ++i)
    rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) * inv_pivot[i];
  for (int i = n - 2; i >= 0; --i)
    rhs[i] -= c_prime[i] * rhs[i + 1];
}

}  // namespace vhrd
