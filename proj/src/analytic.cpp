#include "vhrd/analytic.hpp"

#include <cmath>

#include "vhrd/errors.hpp"

namespace vhrd {

void ConstantParams::validate() const {
  if (!(a1 > 0.0 && a2 > 0.0 && c1 > 0.0 && c2 > 0.0))
    throw ValidationError("constant case requires a1, a2, c1, c2 > 0");
  if (b1 < 0.0 || b2 < 0.0 || l1 < 0.0 || l2 < 0.0)
    throw ValidationError("constant case requires b, l >= 0");
  if (gamma && *gamma < 0.0)
    throw ValidationError("recovery rate must be nonnegative");
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::endemic: return "ENDEMIC";
    case Regime::disease_free: return "DISEASE_FREE";
    case Regime::host_extinct: return "HOST_EXTINCT";
    case Regime::vector_extinct: return "VECTOR_EXTINCT";
    case Regime::all_extinct: return "ALL_EXTINCT";
  }
  return "?";
}

Regime classify_regime(const ConstantParams& p) {
  p.validate();
  bool host_super = p.a1 > p.b1;
  bool vector_super = p.a2 > p.b2;
  if (host_super && vector_super) {
    double pressure = p.l1 * p.l2 * (p.a1 - p.b1) * (p.a2 - p.b2) / (p.c1 * p.c2);
    return p.a1 * p.a2 < pressure ? Regime::endemic : Regime::disease_free;
  }
  if (!host_super && vector_super) return Regime::host_extinct;
  if (host_super && !vector_super) return Regime::vector_extinct;
  return Regime::all_extinct;
}

ConstantCaseReport constant_case_report(const ConstantParams& p) {
  p.validate();
  ConstantCaseReport rep;
  rep.zeta1 = p.b1 - p.a1;
  rep.zeta2 = p.b2 - p.a2;
  if (p.b1 > 0.0) rep.r01 = p.a1 / p.b1;
  if (p.b2 > 0.0) rep.r02 = p.a2 / p.b2;
  rep.regime = classify_regime(p);

  if (p.a1 > p.b1) rep.host_total = (p.a1 - p.b1) / p.c1;
  if (p.a2 > p.b2) rep.vector_total = (p.a2 - p.b2) / p.c2;

  if (rep.host_total && rep.vector_total) {
    double cross = p.l1 * p.l2 * (p.a1 - p.b1) * (p.a2 - p.b2) / (p.c1 * p.c2);
    rep.lambda = 0.5 * (p.a1 + p.a2 -
                        std::sqrt((p.a1 - p.a2) * (p.a1 - p.a2) + 4.0 * cross));
    rep.r0 = std::sqrt(cross / (p.a1 * p.a2));
    if (rep.regime == Regime::endemic) {
      double excess = p.l1 * p.l2 * (p.a1 - p.b1) * (p.a2 - p.b2) -
                      p.a1 * p.a2 * p.c1 * p.c2;
      ConstantEquilibrium eq;
      double host_denom = p.c1 * p.l2 * (p.a1 * p.c2 + p.l1 * (p.a2 - p.b2));
      double vect_denom = p.c2 * p.l1 * (p.a2 * p.c1 + p.l2 * (p.a1 - p.b1));
      eq.hu = p.a1 * p.c2 * (p.a2 * p.c1 + p.l2 * (p.a1 - p.b1)) / host_denom;
      eq.hi = excess / host_denom;
      eq.vu = p.a2 * p.c1 * (p.a1 * p.c2 + p.l1 * (p.a2 - p.b2)) / vect_denom;
      eq.vi = excess / vect_denom;
      rep.equilibrium = eq;
    }
  }
  return rep;
}

double reference_eigenvalue_dirichlet(double d, double net_decay, double length) {
  if (!(d > 0.0) || !(length > 0.0))
    throw ValidationError("reference eigenvalue needs d > 0 and L > 0");
  return d * M_PI * M_PI / (length * length) + net_decay;
}

}  // namespace vhrd
