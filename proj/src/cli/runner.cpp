#include "vdw/cli/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <thread>

#include "vdw/asymptotics.hpp"
#include "vdw/potential.hpp"

namespace vdw::cli {

namespace {

using RowFn = std::function<std::vector<double>(std::size_t)>;

std::vector<std::vector<double>> evaluate(std::size_t count, const RowFn& row, unsigned threads) {
  std::vector<std::vector<double>> rows(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        rows[i] = row(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

std::vector<double> scan_row(double x, const PotentialBreakdown& p) {
  return {x, p.u0, p.ub, p.uab, p.ratio};
}

const std::vector<std::string> kScanTail = {"u0", "ub", "uab", "ratio"};

Table theta_scan(const RunConfig& cfg, unsigned threads) {
  Table t;
  t.columns = {"theta"};
  t.columns.insert(t.columns.end(), kScanTail.begin(), kScanTail.end());
  t.rows = evaluate(
      static_cast<std::size_t>(cfg.theta.count),
      [&](std::size_t i) {
        const double theta = cfg.theta.at(static_cast<int>(i));
        const auto g = Geometry::make(cfg.sphere.radius, cfg.scan_r, 0.5 * theta, cfg.scan_r,
                                      0.5 * theta);
        return scan_row(theta, body_potential(g, cfg.atom_a, cfg.atom_b, cfg.sphere, cfg.quad,
                                              cfg.series));
      },
      threads);
  return t;
}

Table l_scan(const RunConfig& cfg, unsigned threads) {
  Table t;
  t.columns = {"l"};
  t.columns.insert(t.columns.end(), kScanTail.begin(), kScanTail.end());
  t.rows = evaluate(
      static_cast<std::size_t>(cfg.l.count),
      [&](std::size_t i) {
        const double l = cfg.l.at(static_cast<int>(i));
        const auto g =
            Geometry::make(cfg.sphere.radius, cfg.scan_r_a, 0.0, cfg.scan_r_a + l, 0.0);
        return scan_row(l, body_potential(g, cfg.atom_a, cfg.atom_b, cfg.sphere, cfg.quad,
                                          cfg.series));
      },
      threads);
  return t;
}

Table single_point(const RunConfig& cfg, unsigned threads) {
  const auto g = Geometry::make(cfg.sphere.radius, cfg.r_a, cfg.theta_a, cfg.r_b, cfg.theta_b);
  Table t;
  t.columns = {"r_a", "theta_a", "r_b", "theta_b", "l", "u0"};
  for (const char* c : kComponentNames) t.columns.push_back(std::string("u1_") + c);
  for (const char* c : kComponentNames) t.columns.push_back(std::string("u2_") + c);
  for (const char* c : {"ub", "uab", "ratio", "u_a", "u_b"}) t.columns.push_back(c);

  // three independent integrals: the pair and both single atoms
  const auto parts = evaluate(
      3,
      [&](std::size_t i) -> std::vector<double> {
        if (i == 1) return {single_atom_potential(g.r_a(), cfg.atom_a, cfg.sphere, cfg.quad,
                                                  cfg.series)};
        if (i == 2) return {single_atom_potential(g.r_b(), cfg.atom_b, cfg.sphere, cfg.quad,
                                                  cfg.series)};
        const auto p = body_potential(g, cfg.atom_a, cfg.atom_b, cfg.sphere, cfg.quad,
                                      cfg.series);
        std::vector<double> v{p.u0};
        for (double x : p.u1.as_array()) v.push_back(x);
        for (double x : p.u2.as_array()) v.push_back(x);
        v.insert(v.end(), {p.ub, p.uab, p.ratio});
        return v;
      },
      threads);
  std::vector<double> row{g.r_a(), g.theta_a(), g.r_b(), g.theta_b(), g.separation()};
  row.insert(row.end(), parts[0].begin(), parts[0].end());
  row.push_back(parts[1][0]);
  row.push_back(parts[2][0]);
  t.rows.push_back(std::move(row));
  return t;
}

double relative_deviation(double exact, double asymptotic) {
  if (exact == 0.0) return asymptotic == 0.0 ? 0.0 : INFINITY;
  return (asymptotic - exact) / exact;
}

Table compare_limits(const RunConfig& cfg, unsigned threads) {
  Table t;
  t.columns = {"radius", "exact", "asymptotic", "rel_deviation"};
  std::vector<std::vector<std::string>> warnings(cfg.radii.size());
  t.rows = evaluate(
      cfg.radii.size(),
      [&](std::size_t i) {
        SphereResponse sphere = cfg.sphere;
        sphere.radius = cfg.radii[i];
        double exact = 0.0, asymptotic = 0.0;
        if (cfg.limit == LimitKind::small_sphere) {
          const auto g = Geometry::make(sphere.radius, cfg.r_a, cfg.theta_a, cfg.r_b,
                                        cfg.theta_b);
          warnings[i] = small_sphere_warnings(g);
          exact = body_potential(g, cfg.atom_a, cfg.atom_b, sphere, cfg.quad, cfg.series).ub;
          asymptotic = small_sphere(g, cfg.atom_a, cfg.atom_b, sphere, cfg.quad);
        } else {
          const auto geom = LargeSphereGeometry::make(sphere.radius, cfg.delta_a, cfg.delta_b,
                                                      cfg.x / sphere.radius);
          warnings[i] = geom.warnings();
          exact = body_potential(geom.geometry(), cfg.atom_a, cfg.atom_b, sphere, cfg.quad,
                                 cfg.series)
                      .ub;
          asymptotic = cfg.limit == LimitKind::large_sphere_electric
                           ? large_sphere_electric(geom, cfg.atom_a, cfg.atom_b, sphere, cfg.quad)
                           : large_sphere_magnetic(geom, cfg.atom_a, cfg.atom_b, sphere, cfg.quad);
        }
        return std::vector<double>{sphere.radius, exact, asymptotic,
                                   relative_deviation(exact, asymptotic)};
      },
      threads);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    for (const auto& w : warnings[i]) {
      t.warnings.push_back("R = " + std::to_string(cfg.radii[i]) + ": " + w);
    }
    if (!(std::abs(t.rows[i][3]) <= cfg.threshold)) t.threshold_exceeded = true;
  }
  return t;
}

}  // namespace

Table run(const RunConfig& cfg, unsigned threads) {
  switch (cfg.mode) {
    case Mode::theta_scan: return theta_scan(cfg, threads);
    case Mode::l_scan: return l_scan(cfg, threads);
    case Mode::single_point: return single_point(cfg, threads);
    case Mode::compare_limits: return compare_limits(cfg, threads);
  }
  return {};
}

}  // namespace vdw::cli
