#include "vhrd/model.hpp"

#include <cmath>
#include <sstream>

#include "vhrd/errors.hpp"

namespace vhrd {

CoefficientField::CoefficientField(std::function<double(double, double)> fn,
                                   double period)
    : fn_(std::move(fn)), period_(period) {
  if (!(period_ > 0.0))
    throw ValidationError("coefficient field period must be positive");
}

double CoefficientField::operator()(double x, double t) const {
  double tau = std::fmod(t, period_);
  if (tau < 0.0) tau += period_;
  return fn_(x, tau);
}

CoefficientField CoefficientField::constant(double value, double period) {
  return CoefficientField([value](double, double) { return value; }, period);
}

CoefficientField CoefficientField::separable_cosine(double base, double px, double pt,
                                                    double length, double period) {
  CoefficientField f(
      [base, px, pt, length, period](double x, double t) {
        return base * (1.0 + px * std::cos(M_PI * x / length)) *
               (1.0 + pt * std::cos(2.0 * M_PI * t / period));
      },
      period);
  f.set_domain_length(length);
  return f;
}

double eval_coefficient(const CoefficientField& field, double x, double t) {
  if (field.domain_length() && (x < 0.0 || x > *field.domain_length())) {
    std::ostringstream os;
    os << "coefficient evaluated at x = " << x << " outside [0, "
       << *field.domain_length() << "]";
    throw ValidationError(os.str());
  }
  return field(x, t);
}

BoundaryCondition BoundaryCondition::dirichlet_bc() {
  return BoundaryCondition{0, CoefficientField::constant(1.0)};
}

BoundaryCondition BoundaryCondition::neumann_bc() {
  return BoundaryCondition{1, CoefficientField::constant(0.0)};
}

BoundaryCondition BoundaryCondition::robin_bc(CoefficientField beta) {
  return BoundaryCondition{1, std::move(beta)};
}

std::vector<std::pair<std::string, double>> HeterogeneityParams::named() const {
  return {{"p1", p1}, {"p2", p2}, {"p3", p3}, {"p4", p4},
          {"q1", q1}, {"q2", q2}, {"q3", q3}, {"q4", q4}};
}

double& HeterogeneityParams::by_name(const std::string& name) {
  if (name == "p1") return p1;
  if (name == "p2") return p2;
  if (name == "p3") return p3;
  if (name == "p4") return p4;
  if (name == "q1") return q1;
  if (name == "q2") return q2;
  if (name == "q3") return q3;
  if (name == "q4") return q4;
  throw ValidationError("unknown heterogeneity parameter '" + name + "'");
}

ModelSpec make_parametric_family(const HeterogeneityParams& params) {
  for (const auto& [name, value] : params.named()) {
    if (!(std::abs(value) <= 1.0))
      throw ValidationError("heterogeneity parameter " + name + " = " +
                            std::to_string(value) + " outside [-1, 1]");
  }
  const double L = 1.0, T = 1.0;
  ModelSpec spec;
  spec.length = L;
  spec.period = T;
  spec.bc_host = BoundaryCondition::neumann_bc();
  spec.bc_vector = BoundaryCondition::neumann_bc();

  auto fixed = [L, T](double v) {
    CoefficientField f = CoefficientField::constant(v, T);
    f.set_domain_length(L);
    return f;
  };
  spec.coeffs.d1 = fixed(0.1);
  spec.coeffs.d2 = fixed(0.2);
  spec.coeffs.l1 = fixed(3.0);
  spec.coeffs.l2 = fixed(2.0);
  spec.coeffs.c1 = fixed(1.0);
  spec.coeffs.c2 = fixed(1.0);
  spec.coeffs.a1 = CoefficientField::separable_cosine(2.0, params.p1, params.p3, L, T);
  spec.coeffs.a2 = CoefficientField::separable_cosine(3.0, params.p2, params.p4, L, T);
  spec.coeffs.b1 = CoefficientField::separable_cosine(1.0, params.q1, params.q3, L, T);
  spec.coeffs.b2 = CoefficientField::separable_cosine(2.0, params.q2, params.q4, L, T);
  return spec;
}

ModelSpec make_constant_model(double a1, double b1, double c1, double l1,
                              double a2, double b2, double c2, double l2,
                              double d1, double d2, std::optional<double> gamma) {
  ModelSpec spec;
  spec.length = 1.0;
  spec.period = 1.0;
  spec.bc_host = BoundaryCondition::neumann_bc();
  spec.bc_vector = BoundaryCondition::neumann_bc();
  auto c = [](double v) { return CoefficientField::constant(v, 1.0); };
  spec.coeffs.d1 = c(d1);
  spec.coeffs.d2 = c(d2);
  spec.coeffs.a1 = c(a1);
  spec.coeffs.a2 = c(a2);
  spec.coeffs.b1 = c(b1);
  spec.coeffs.b2 = c(b2);
  spec.coeffs.c1 = c(c1);
  spec.coeffs.c2 = c(c2);
  spec.coeffs.l1 = c(l1);
  spec.coeffs.l2 = c(l2);
  if (gamma) spec.coeffs.gamma = c(*gamma);
  return spec;
}

namespace {

constexpr int kSampleNodes = 21;
constexpr int kSampleTimes = 17;
constexpr double kPeriodicityTol = 1e-12;

void check_field(const ModelSpec& spec, const CoefficientField& f,
                 const std::string& name, bool strictly_positive,
                 ValidationReport& report) {
  double lo = 1e300;
  double scale = 0.0;
  double worst_periodicity = 0.0;
  for (int i = 0; i < kSampleNodes; ++i) {
    double x = spec.length * i / (kSampleNodes - 1);
    for (int j = 0; j < kSampleTimes; ++j) {
      double t = spec.period * j / kSampleTimes;
      double v = f(x, t);
      lo = std::min(lo, v);
      scale = std::max(scale, std::abs(v));
      worst_periodicity =
          std::max(worst_periodicity, std::abs(f(x, t + spec.period) - v));
    }
  }
  if (strictly_positive && !(lo > 0.0))
    report.fail(name + " not strictly positive (min sample " + std::to_string(lo) + ")");
  if (!strictly_positive && lo < 0.0)
    report.fail(name + " negative somewhere (min sample " + std::to_string(lo) + ")");
  if (worst_periodicity > kPeriodicityTol * std::max(1.0, scale))
    report.fail(name + " not T-periodic (gap " + std::to_string(worst_periodicity) + ")");
}

void check_nontrivial(const ModelSpec& spec, const CoefficientField& f,
                      const std::string& name, ValidationReport& report) {
  for (int i = 0; i < kSampleNodes; ++i) {
    double x = spec.length * i / (kSampleNodes - 1);
    for (int j = 0; j < kSampleTimes; ++j) {
      double t = spec.period * j / kSampleTimes;
      if (f(x, t) > 0.0) return;
    }
  }
  report.fail(name + " trivial: no positive sample found");
}

void check_boundary(const ModelSpec& spec, const BoundaryCondition& bc,
                    const std::string& name, ValidationReport& report) {
  if (bc.alpha != 0 && bc.alpha != 1) {
    report.fail(name + ": alpha must be 0 or 1");
    return;
  }
  for (double x : {0.0, spec.length}) {
    for (int j = 0; j < kSampleTimes; ++j) {
      double t = spec.period * j / kSampleTimes;
      double beta = bc.beta(x, t);
      if (bc.alpha == 0 && beta != 1.0) {
        report.fail(name + ": boundary dichotomy requires beta == 1 when alpha = 0");
        return;
      }
      if (bc.alpha == 1 && beta < 0.0) {
        report.fail(name + ": beta must be nonnegative when alpha = 1");
        return;
      }
    }
  }
}

}  // namespace

ValidationReport validate_model(const ModelSpec& spec) {
  ValidationReport report;
  if (!(spec.length > 0.0)) report.fail("domain length must be positive");
  if (!(spec.period > 0.0)) report.fail("period must be positive");
  if (!report.pass) return report;

  const CoefficientSet& c = spec.coeffs;
  check_field(spec, c.d1, "d1", true, report);
  check_field(spec, c.d2, "d2", true, report);
  check_field(spec, c.a1, "a1", true, report);
  check_field(spec, c.a2, "a2", true, report);
  check_field(spec, c.c1, "c1", true, report);
  check_field(spec, c.c2, "c2", true, report);
  check_field(spec, c.b1, "b1", false, report);
  check_field(spec, c.b2, "b2", false, report);
  check_field(spec, c.l1, "l1", false, report);
  check_field(spec, c.l2, "l2", false, report);
  if (c.gamma) check_field(spec, *c.gamma, "gamma", false, report);
  check_nontrivial(spec, c.l1, "l1", report);
  check_nontrivial(spec, c.l2, "l2", report);
  check_boundary(spec, spec.bc_host, "bc_host", report);
  check_boundary(spec, spec.bc_vector, "bc_vector", report);
  return report;
}

}  // namespace vhrd
