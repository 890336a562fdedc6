#include "vhrd/errors.hpp"

#include <sstream>

namespace vhrd {

namespace {

std::string positivity_message(const std::string& component, int node, double time,
                               double value) {
  std::ostringstream os;
  os << "positivity violated: component " << component << " at node " << node
     << ", t = " << time << ", value = " << value;
  return os.str();
}

std::string nonconvergence_message(const std::string& what_failed, double residual,
                                   int iterations) {
  std::ostringstream os;
  os << what_failed << " did not converge after " << iterations
     << " iterations (residual " << residual << ")";
  return os.str();
}

}  // namespace

PositivityError::PositivityError(const std::string& component, int node, double time,
                                 double value)
    : Error(positivity_message(component, node, time, value)),
      component(component),
      node(node),
      time(time),
      value(value) {}

NonConvergenceError::NonConvergenceError(const std::string& what_failed, double residual,
                                         int iterations)
    : Error(nonconvergence_message(what_failed, residual, iterations)),
      residual(residual),
      iterations(iterations) {}

}  // namespace vhrd
