#ifndef VHRD_ANALYTIC_HPP
#define VHRD_ANALYTIC_HPP

#include <optional>
#include <string>

namespace vhrd {

// Space-time constant coefficients under no-flux boundaries. Everything in
// this module is plain arithmetic; it is the ground truth the discretized
// modules are tested against.
struct ConstantParams {
  double a1, b1, c1, l1;
  double a2, b2, c2, l2;
  std::optional<double> gamma;

  void validate() const;
};

enum class Regime {
  endemic,
  disease_free,
  host_extinct,
  vector_extinct,
  all_extinct,
};

std::string regime_name(Regime r);

struct ConstantEquilibrium {
  double hu, hi, vu, vi;
};

struct ConstantCaseReport {
  double zeta1 = 0.0, zeta2 = 0.0;
  std::optional<double> r01, r02;       // absent when the death rate is zero
  std::optional<double> host_total;     // (a1-b1)/c1 when positive
  std::optional<double> vector_total;   // (a2-b2)/c2 when positive
  std::optional<double> lambda;         // defined when both totals exist
  std::optional<double> r0;
  std::optional<ConstantEquilibrium> equilibrium;  // endemic regime only
  Regime regime = Regime::all_extinct;
};

ConstantCaseReport constant_case_report(const ConstantParams& p);

Regime classify_regime(const ConstantParams& p);

// Principal eigenvalue of -d u'' + net_decay u with zero boundary data on
// [0, L]: d*pi^2/L^2 + net_decay.
double reference_eigenvalue_dirichlet(double d, double net_decay, double length);

}  // namespace vhrd

#endif
