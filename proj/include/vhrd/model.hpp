#ifndef VHRD_MODEL_HPP
#define VHRD_MODEL_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace vhrd {

// A space-time coefficient, T-periodic in t. Evaluation wraps t into [0, T)
// so callers never reduce the time argument themselves. When a domain length
// is attached, evaluation outside [0, L] is a domain error.
class CoefficientField {
 public:
  CoefficientField() = default;
  CoefficientField(std::function<double(double, double)> fn, double period);

  double operator()(double x, double t) const;
  double period() const { return period_; }

  void set_domain_length(double length) { domain_length_ = length; }
  std::optional<double> domain_length() const { return domain_length_; }

  static CoefficientField constant(double value, double period = 1.0);
  // base * (1 + px*cos(pi*x/L)) * (1 + pt*cos(2*pi*t/T))
  static CoefficientField separable_cosine(double base, double px, double pt,
                                           double length, double period);

 private:
  std::function<double(double, double)> fn_;
  double period_ = 1.0;
  std::optional<double> domain_length_;
};

double eval_coefficient(const CoefficientField& field, double x, double t);

// The ten rate fields of the host-vector system, sharing one period.
// gamma is the recovery rate used only by the standard-incidence variant.
struct CoefficientSet {
  CoefficientField d1, d2;  // diffusion
  CoefficientField a1, a2;  // birth
  CoefficientField b1, b2;  // death
  CoefficientField c1, c2;  // crowding
  CoefficientField l1, l2;  // transmission
  std::optional<CoefficientField> gamma;
};

// alpha = 0 with beta == 1 is the hostile (Dirichlet) boundary;
// alpha = 1 with beta >= 0 covers no-flux and Robin boundaries.
struct BoundaryCondition {
  int alpha = 1;
  CoefficientField beta = CoefficientField::constant(0.0);

  bool dirichlet() const { return alpha == 0; }
  static BoundaryCondition dirichlet_bc();
  static BoundaryCondition neumann_bc();
  static BoundaryCondition robin_bc(CoefficientField beta);
};

// Complete continuous problem statement on [0, L] x [0, T].
struct ModelSpec {
  double length = 1.0;
  double period = 1.0;
  BoundaryCondition bc_host;    // shared by H_u and H_i
  BoundaryCondition bc_vector;  // shared by V_u and V_i
  CoefficientSet coeffs;
};

// Modulation amplitudes for the built-in cosine family; p scales the birth
// rates, q the death rates (odd index = space, even = time).
struct HeterogeneityParams {
  double p1 = 0, p2 = 0, p3 = 0, p4 = 0;
  double q1 = 0, q2 = 0, q3 = 0, q4 = 0;

  std::vector<std::pair<std::string, double>> named() const;
  double& by_name(const std::string& name);
};

// d1=0.1, d2=0.2, l1=3, l2=2, c1=c2=1,
// a1=2(1+p1 cos(pi x))(1+p3 cos(2 pi t)), a2=3(1+p2..)(1+p4..),
// b1=1(1+q1..)(1+q3..), b2=2(1+q2..)(1+q4..), on [0,1] with period 1,
// no-flux boundaries for both species.
ModelSpec make_parametric_family(const HeterogeneityParams& params);

// Space-time constant coefficients under no-flux boundaries.
ModelSpec make_constant_model(double a1, double b1, double c1, double l1,
                              double a2, double b2, double c2, double l2,
                              double d1 = 0.1, double d2 = 0.2,
                              std::optional<double> gamma = std::nullopt);

struct ValidationReport {
  bool pass = true;
  std::vector<std::string> violations;

  void fail(std::string why) {
    pass = false;
    violations.push_back(std::move(why));
  }
};

// Samples the hypotheses on a lattice: positivity of d, a, c; nonnegativity
// of b, l, beta, gamma; nontriviality of l1, l2; T-periodicity of every
// field; and the boundary-condition dichotomy.
ValidationReport validate_model(const ModelSpec& spec);

}  // namespace vhrd

#endif
