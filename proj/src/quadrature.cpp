#include "vdw/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

namespace vdw {

namespace {

// Kronrod abscissae (descending, last is the centre) and weights; the Gauss
// nodes are the odd-indexed abscissae.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  std::vector<double> value, error, absval;
};

class Integrator {
 public:
  Integrator(std::size_t dims, const VectorIntegrand& f, const QuadratureSpec& spec)
      : dims_(dims), f_(f), spec_(spec), sample_(dims) {}

  Panel evaluate(double a, double b) {
    Panel p{a, b, std::vector<double>(dims_, 0.0), std::vector<double>(dims_, 0.0),
            std::vector<double>(dims_, 0.0)};
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    std::vector<double> gauss(dims_, 0.0);
    for (std::size_t k = 0; k < kXgk.size(); ++k) {
      const int signs = k + 1 == kXgk.size() ? 1 : 2;
      for (int s = 0; s < signs; ++s) {
        const double t = mid + (s == 0 ? -1.0 : 1.0) * half * kXgk[k];
        sample(t);
        for (std::size_t d = 0; d < dims_; ++d) {
          p.value[d] += kWgk[k] * sample_[d];
          p.absval[d] += kWgk[k] * std::abs(sample_[d]);
          if (k % 2 == 1) gauss[d] += kWg[k / 2] * sample_[d];
        }
      }
    }
    for (std::size_t d = 0; d < dims_; ++d) {
      p.value[d] *= half;
      p.absval[d] *= half;
      p.error[d] = std::abs(p.value[d] - half * gauss[d]);
    }
    return p;
  }

  int evaluations() const { return evaluations_; }

 private:
  void sample(double t) {
    ++evaluations_;
    const double s = spec_.scale;
    double u, jac;
    if (spec_.transform == MapTransform::rational) {
      const double w = 1.0 - t;
      u = s * t / w;
      jac = s / (w * w);
    } else {
      u = -s * std::log1p(-t);
      jac = s / (1.0 - t);
    }
    f_(u, sample_);
    for (double& v : sample_) {
      if (!std::isfinite(v)) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "integrand is not finite at u = %.17g", u);
        throw NonFiniteIntegrandError(buf, u);
      }
      v = std::isfinite(jac) ? v * jac : 0.0;
    }
  }

  std::size_t dims_;
  const VectorIntegrand& f_;
  QuadratureSpec spec_;
  std::vector<double> sample_;
  int evaluations_{0};
};

}  // namespace

void validate(const QuadratureSpec& spec) {
  if (!(spec.rel_tol > 0.0 && spec.rel_tol < 1.0)) {
    throw DomainError("quadrature: rel_tol must lie in (0, 1)");
  }
  if (!(spec.abs_floor >= 0.0)) throw DomainError("quadrature: abs_floor must be non-negative");
  if (spec.max_subdivisions < 0) {
    throw DomainError("quadrature: max_subdivisions must be non-negative");
  }
  if (!(spec.scale > 0.0) || !std::isfinite(spec.scale)) {
    throw DomainError("quadrature: scale must be positive");
  }
}

QuadratureResult integrate_semi_infinite(std::size_t components, const VectorIntegrand& f,
                                         const QuadratureSpec& spec,
                                         std::span<const std::string> names) {
  validate(spec);
  if (components == 0) throw DomainError("quadrature: no components");
  Integrator integ(components, f, spec);

  constexpr int kInitialPanels = 4;
  std::vector<Panel> panels;
  for (int i = 0; i < kInitialPanels; ++i) {
    panels.push_back(integ.evaluate(double(i) / kInitialPanels, double(i + 1) / kInitialPanels));
  }

  std::vector<double> total(components), error(components), absval(components),
      tol(components);
  auto tally = [&] {
    std::fill(total.begin(), total.end(), 0.0);
    std::fill(error.begin(), error.end(), 0.0);
    std::fill(absval.begin(), absval.end(), 0.0);
    for (const auto& p : panels) {
      for (std::size_t d = 0; d < components; ++d) {
        total[d] += p.value[d];
        error[d] += p.error[d];
        absval[d] += p.absval[d];
      }
    }
    bool done = true;
    for (std::size_t d = 0; d < components; ++d) {
      tol[d] = std::max(spec.rel_tol * std::abs(total[d]), spec.abs_floor * absval[d]);
      if (!(error[d] <= tol[d])) done = false;
    }
    return done;
  };

  int subdivisions = 0;
  while (!tally()) {
    if (subdivisions >= spec.max_subdivisions) {
      std::size_t worst = 0;
      double worst_ratio = -1.0;
      for (std::size_t d = 0; d < components; ++d) {
        const double r = tol[d] > 0.0 ? error[d] / tol[d] : error[d];
        if (r > worst_ratio) worst_ratio = r, worst = d;
      }
      std::string label = worst < names.size() ? names[worst] : "component " + std::to_string(worst);
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    " not converged after %d subdivisions (estimate %.6g, error %.3g)",
                    spec.max_subdivisions, total[worst], error[worst]);
      throw ConvergenceError("quadrature: " + label + buf);
    }
    // Bisect the panel carrying the largest share of the outstanding error.
    std::size_t pick = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      double score = 0.0;
      for (std::size_t d = 0; d < components; ++d) {
        if (error[d] > tol[d]) {
          score += tol[d] > 0.0 ? panels[i].error[d] / tol[d] : panels[i].error[d];
        }
      }
      if (score > best) best = score, pick = i;
    }
    const double a = panels[pick].a, b = panels[pick].b, mid = 0.5 * (a + b);
    panels[pick] = integ.evaluate(a, mid);
    panels.push_back(integ.evaluate(mid, b));
    ++subdivisions;
  }

  QuadratureResult out;
  out.value = total;
  out.error = error;
  out.panels = static_cast<int>(panels.size());
  out.evaluations = integ.evaluations();
  return out;
}

double integrate_semi_infinite(const std::function<double(double)>& f,
                               const QuadratureSpec& spec) {
  const VectorIntegrand g = [&](double u, std::span<double> out) { out[0] = f(u); };
  return integrate_semi_infinite(1, g, spec).value[0];
}

}  // namespace vdw
