#include "cypoise/params.hpp"

#include <cmath>

namespace cypoise {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw DomainError(std::string(name) + " must be finite");
  }
}

}  // namespace

FluidParams::FluidParams(double n, double alpha, double c, double cu)
    : n_(n), alpha_(alpha), c_(c), cu_(cu) {
  require_finite(n, "n");
  require_finite(alpha, "alpha");
  require_finite(c, "c");
  require_finite(cu, "cu");
  if (alpha <= 0.0) throw DomainError("alpha must be > 0");
  if (c < 0.0 || c > 1.0) throw DomainError("c must lie in [0, 1]");
  if (cu < 0.0) throw DomainError("cu must be >= 0");
}

FlowParams::FlowParams(double b, double r) : b_(std::abs(b)), r_(r), sign_(b < 0.0 ? -1 : 1) {
  require_finite(b, "b");
  require_finite(r, "r");
  if (r <= 0.0) throw DomainError("r must be > 0");
}

void EvalSettings::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !(eq_tol > 0.0)) {
    throw DomainError("tolerances must be > 0");
  }
  if (max_iter < 1) throw DomainError("max_iter must be >= 1");
}

}  // namespace cypoise
