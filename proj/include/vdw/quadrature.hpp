#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "vdw/errors.hpp"

namespace vdw {

/// Map from t in [0, 1) onto u in [0, inf).
enum class MapTransform {
  rational,     ///< u = s t / (1 - t)
  exponential,  ///< u = -s log(1 - t)
};

struct QuadratureSpec {
  double rel_tol{1e-8};
  /// A component is also accepted once its error estimate drops below
  /// abs_floor times the integral of its absolute value.
  double abs_floor{1e-12};
  int max_subdivisions{200};
  MapTransform transform{MapTransform::rational};
  double scale{1.0};  ///< s, the reference frequency of the map
};

void validate(const QuadratureSpec& spec);

/// Raised when the integrand returns NaN or infinity.
class NonFiniteIntegrandError : public ConvergenceError {
 public:
  NonFiniteIntegrandError(const std::string& what, double u)
      : ConvergenceError(what), u_(u) {}
  double u() const { return u_; }

 private:
  double u_;
};

struct QuadratureResult {
  std::vector<double> value;
  std::vector<double> error;
  int panels{0};
  int evaluations{0};
};

/// Fills out[k] with the k-th component of the integrand at u.
using VectorIntegrand = std::function<void(double u, std::span<double> out)>;

/// Adaptive Gauss-Kronrod (7/15) quadrature of every component over
/// u in [0, inf). Panels are bisected in the mapped variable until each
/// component satisfies err <= max(rel_tol |I|, abs_floor int|f|).
/// Throws ConvergenceError after max_subdivisions bisections, naming the
/// worst component when `names` is given.
QuadratureResult integrate_semi_infinite(std::size_t components, const VectorIntegrand& f,
                                         const QuadratureSpec& spec = {},
                                         std::span<const std::string> names = {});

double integrate_semi_infinite(const std::function<double(double)>& f,
                               const QuadratureSpec& spec = {});

}  // namespace vdw
