#include "tetlab/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tetlab/errors.hpp"

namespace tetlab {

void GaussianPrep1D::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw InvalidParameter(std::string("GaussianPrep1D: ") + what);
  };
  require(std::isfinite(mean_q) && std::isfinite(mean_p), "means must be finite");
  require(sigma0 > 0.0 && std::isfinite(sigma0), "sigma0 must be positive");
  require(mass > 0.0 && std::isfinite(mass), "mass must be positive");
  require(hbar > 0.0 && std::isfinite(hbar), "hbar must be positive");
  require(gravity >= 0.0 && std::isfinite(gravity), "gravity must be non-negative");
  const double w = omega();
  require(std::isfinite(w) && w > 0.0, "spreading rate must be finite and positive");
}

double GaussianPrep1D::spread_factor(double t) const noexcept {
  return std::hypot(1.0, omega() * t);
}

double eval_gaussian(double u, double mean, double width) {
  if (!(width > 0.0)) throw InvalidParameter("eval_gaussian: width must be positive");
  const double z = (u - mean) / width;
  return std::exp(-0.5 * z * z) / (width * std::sqrt(2.0 * std::numbers::pi));
}

}  // namespace tetlab
