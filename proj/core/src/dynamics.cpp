#include "meridian/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

namespace meridian {

namespace {

constexpr double kAxisFloor = 1e-6;
constexpr double kSpeedFloor = 1e-12;
constexpr double kStepFloor = 1e-12;

struct Vec2 {
  double x = 0.0;
  double r = 0.0;
};

Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.r + b.r}; }
Vec2 operator*(double c, Vec2 a) { return {c * a.x, c * a.r}; }

double norm(Vec2 a) { return std::hypot(a.x, a.r); }

/// Dormand-Prince 5(4) tableau.
struct Dopri5 {
  static constexpr double a21 = 1.0 / 5.0;
  static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                          a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
  static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                          a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
  static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                          b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
  static constexpr double e1 = 35.0 / 384.0 - 5179.0 / 57600.0;
  static constexpr double e3 = 500.0 / 1113.0 - 7571.0 / 16695.0;
  static constexpr double e4 = 125.0 / 192.0 - 393.0 / 640.0;
  static constexpr double e5 = -2187.0 / 6784.0 + 92097.0 / 339200.0;
  static constexpr double e6 = 11.0 / 84.0 - 187.0 / 2100.0;
  static constexpr double e7 = -1.0 / 40.0;
};

/// One adaptive meridian-plane integration shared by pathlines (rhs = V)
/// and streamlines (rhs = V/|V|).
Trajectory integrate_meridian(const MeridionalField& field, const Vec3& start, double t_end,
                              double tol, bool unit_speed) {
  const auto dec = meridian_of({start[0], start[1], start[2]});
  const Azimuth az = dec.az;

  auto velocity = [&](Vec2 p) -> Vec2 {
    const auto v = field.velocity({p.x, p.r});
    return {v[0], v[1]};
  };
  auto rhs = [&](Vec2 p) -> Vec2 {
    Vec2 v = velocity(p);
    if (unit_speed) {
      const double n = norm(v);
      return {v.x / n, v.r / n};
    }
    return v;
  };

  Trajectory traj;
  auto record = [&](double t, Vec2 p) {
    traj.times.push_back(t);
    traj.points.push_back({p.x, p.r * az.a1, p.r * az.a2});
    traj.h_values.push_back(field.potential({p.x, p.r}));
  };

  Vec2 y{dec.m.s, dec.m.t};
  double t = 0.0;
  record(t, y);

  if (unit_speed && norm(velocity(y)) < kSpeedFloor) {
    throw StagnationPointError();
  }

  double h = std::min(1e-2, t_end);
  double err_prev = 1.0;
  traj.termination = Termination::Completed;

  while (t < t_end) {
    if (h < kStepFloor) {
      traj.termination = Termination::StepSizeUnderflow;
      break;
    }
    h = std::min(h, t_end - t);

    const Vec2 k1 = rhs(y);
    const Vec2 k2 = rhs(y + (h * Dopri5::a21) * k1);
    const Vec2 k3 = rhs(y + h * (Dopri5::a31 * k1 + Dopri5::a32 * k2));
    const Vec2 k4 = rhs(y + h * (Dopri5::a41 * k1 + Dopri5::a42 * k2 + Dopri5::a43 * k3));
    const Vec2 k5 = rhs(y + h * (Dopri5::a51 * k1 + Dopri5::a52 * k2 + Dopri5::a53 * k3 +
                                 Dopri5::a54 * k4));
    const Vec2 k6 = rhs(y + h * (Dopri5::a61 * k1 + Dopri5::a62 * k2 + Dopri5::a63 * k3 +
                                 Dopri5::a64 * k4 + Dopri5::a65 * k5));
    const Vec2 y5 = y + h * (Dopri5::b1 * k1 + Dopri5::b3 * k3 + Dopri5::b4 * k4 +
                             Dopri5::b5 * k5 + Dopri5::b6 * k6);
    const Vec2 k7 = rhs(y5);
    const Vec2 err_v = h * (Dopri5::e1 * k1 + Dopri5::e3 * k3 + Dopri5::e4 * k4 +
                            Dopri5::e5 * k5 + Dopri5::e6 * k6 + Dopri5::e7 * k7);

    const double scale = tol * (1.0 + std::max(norm(y), norm(y5)));
    const double err = norm(err_v) / scale;

    if (err <= 1.0) {
      t += h;
      y = y5;
      record(t, y);
      if (y.r < kAxisFloor) {
        traj.termination = Termination::AxisReached;
        break;
      }
      if (norm(velocity(y)) < kSpeedFloor) {
        traj.termination = Termination::EquilibriumReached;
        break;
      }
      // PI controller (order 5)
      const double fac = 0.9 * std::pow(err > 0 ? err : 1e-10, -0.7 / 5.0) *
                         std::pow(err_prev > 0 ? err_prev : 1e-10, 0.4 / 5.0);
      h *= std::clamp(fac, 0.2, 5.0);
      err_prev = std::max(err, 1e-10);
    } else {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
    }
  }
  return traj;
}

struct Newton2Result {
  MeridianValue point;
  bool converged = false;
};

/// Damped Newton on (V0, Vrho) with Armijo backtracking on |V|^2.
Newton2Result newton_polish(const MeridionalField& f, MeridianValue seed, const MeridianBox& box,
                            double tol) {
  const double margin_x = 0.5 * (box.x0_max - box.x0_min) + 1.0;
  const double margin_r = 0.5 * (box.rho_max - box.rho_min) + 1.0;
  MeridianValue p = seed;
  for (int iter = 0; iter < 50; ++iter) {
    if (!(p.t > 1e-12)) return {p, false};
    if (p.s < box.x0_min - margin_x || p.s > box.x0_max + margin_x ||
        p.t < std::max(1e-12, box.rho_min - margin_r) || p.t > box.rho_max + margin_r) {
      return {p, false};
    }
    const FieldSample s = f.sample(p);
    const double phi = s.v0 * s.v0 + s.vrho * s.vrho;
    if (std::sqrt(phi) <= tol && std::abs(s.v0) <= tol && std::abs(s.vrho) <= tol) {
      return {p, true};
    }
    const double det = s.dv0_dx0 * s.dvrho_drho - s.dv0_drho * s.dvrho_dx0;
    double dx, dr;
    if (std::abs(det) > 1e-14 * (1.0 + phi)) {
      dx = -(s.v0 * s.dvrho_drho - s.vrho * s.dv0_drho) / det;
      dr = -(s.vrho * s.dv0_dx0 - s.v0 * s.dvrho_dx0) / det;
    } else {
      // singular meridian Jacobian: fall back to steepest descent on |V|^2
      dx = -(s.v0 * s.dv0_dx0 + s.vrho * s.dvrho_dx0);
      dr = -(s.v0 * s.dv0_drho + s.vrho * s.dvrho_drho);
      const double n = std::hypot(dx, dr);
      if (n < 1e-300) return {p, false};
      dx /= n;
      dr /= n;
    }
    double lambda = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 30; ++bt) {
      MeridianValue q{p.s + lambda * dx, p.t + lambda * dr};
      if (q.t > 1e-12) {
        const auto v = f.velocity(q);
        const double phi_q = v[0] * v[0] + v[1] * v[1];
        if (phi_q <= (1.0 - 1e-4 * lambda) * phi) {
          p = q;
          accepted = true;
          break;
        }
      }
      lambda *= 0.5;
    }
    if (!accepted) return {p, false};
  }
  return {p, false};
}

void dedupe_and_sort(std::vector<MeridianValue>& pts) {
  std::sort(pts.begin(), pts.end(), [](MeridianValue a, MeridianValue b) {
    return a.s != b.s ? a.s < b.s : a.t < b.t;
  });
  std::vector<MeridianValue> out;
  for (const auto& p : pts) {
    bool dup = false;
    for (const auto& q : out) {
      if (std::hypot(p.s - q.s, p.t - q.t) <= 1e-6) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(p);
  }
  pts = std::move(out);
}

bool inside(const MeridianBox& box, MeridianValue p, double slack) {
  return p.s >= box.x0_min - slack && p.s <= box.x0_max + slack && p.t >= box.rho_min - slack &&
         p.t <= box.rho_max + slack;
}

}  // namespace

Trajectory integrate_pathline(const GradientSystem& sys, const Vec3& start, double t_end,
                              double tol) {
  if (!(t_end > 0.0)) {
    throw DomainError("integrate_pathline: t_end must be positive");
  }
  return integrate_meridian(sys.field, start, t_end, tol, /*unit_speed=*/false);
}

Trajectory trace_streamline(const MeridionalField& f, const Vec3& start, double arclen,
                            double tol) {
  if (!(arclen > 0.0)) {
    throw DomainError("trace_streamline: arc length must be positive");
  }
  return integrate_meridian(f, start, arclen, tol, /*unit_speed=*/true);
}

std::vector<MeridianValue> find_equilibria(const MeridionalField& f, const MeridianBox& box,
                                           int grid, double tol) {
  if (!(box.rho_min > 0.0)) {
    throw DomainError("find_equilibria: box must satisfy rho_min > 0");
  }
  if (grid < 2) {
    throw DomainError("find_equilibria: grid must be >= 2");
  }
  std::vector<MeridianValue> found;
  for (int i = 0; i < grid; ++i) {
    const double x0 = box.x0_min + (box.x0_max - box.x0_min) * i / (grid - 1.0);
    for (int j = 0; j < grid; ++j) {
      const double rho = box.rho_min + (box.rho_max - box.rho_min) * j / (grid - 1.0);
      const auto res = newton_polish(f, {x0, rho}, box, tol);
      if (res.converged && inside(box, res.point, 1e-9)) {
        found.push_back(res.point);
      }
    }
  }
  dedupe_and_sort(found);
  return found;
}

EquilibriumReport classify(const MeridionalField& f, MeridianValue eq, double tol) {
  if (!(eq.t > 0.0)) {
    throw AxisPointError("classify: rho must be positive");
  }
  const FieldSample s = f.sample(eq);
  const double speed = std::hypot(s.v0, s.vrho);
  if (speed > tol) {
    throw NotAnEquilibriumError("classify: |V| = " + std::to_string(speed) +
                                " exceeds tolerance " + std::to_string(tol));
  }
  EquilibriumReport rep;
  rep.location = eq;
  rep.eigenvalues = spectrum_from_sample(f.alpha(), s, eq.t);
  const double scale = std::max({std::abs(rep.eigenvalues.lambda0), std::abs(rep.eigenvalues.lambda1),
                                 std::abs(rep.eigenvalues.lambda2)});
  const double zero_tol = 1e-7 * (1.0 + scale);
  int negative = 0, positive = 0, null_count = 0;
  for (double lam : {rep.eigenvalues.lambda0, rep.eigenvalues.lambda1, rep.eigenvalues.lambda2}) {
    if (lam < -zero_tol) {
      ++negative;
    } else if (lam > zero_tol) {
      ++positive;
    } else {
      ++null_count;
    }
  }
  rep.index = negative;
  rep.degree_of_instability = positive;
  rep.hyperbolic = (null_count == 0);
  rep.degenerate = (null_count > 0);
  return rep;
}

NullclineSet nullclines(const MeridionalField& f, const MeridianBox& box, int grid) {
  if (!(box.rho_min > 0.0)) {
    throw DomainError("nullclines: box must satisfy rho_min > 0");
  }
  if (grid < 2) {
    throw DomainError("nullclines: grid must be >= 2");
  }
  const int n = grid;
  std::vector<double> xs(n), rs(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = box.x0_min + (box.x0_max - box.x0_min) * i / (n - 1.0);
    rs[i] = box.rho_min + (box.rho_max - box.rho_min) * i / (n - 1.0);
  }
  std::vector<double> v0(n * n), vr(n * n);
  double field_scale = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto v = f.velocity({xs[i], rs[j]});
      v0[i * n + j] = v[0];
      vr[i * n + j] = v[1];
      field_scale = std::max({field_scale, std::abs(v[0]), std::abs(v[1])});
    }
  }
  const double zero_eps = 1e-13 * (1.0 + field_scale);

  NullclineSet out;
  auto dense_zero = [&](const std::vector<double>& vals) {
    int zero_count = 0;
    for (double v : vals) {
      if (std::abs(v) <= zero_eps) ++zero_count;
    }
    return zero_count > n * n / 2;
  };
  out.v0_dense_zero = dense_zero(v0);
  out.vrho_dense_zero = dense_zero(vr);

  // Marching squares: emit segments per cell from edge sign changes.
  auto contour = [&](const std::vector<double>& vals, std::vector<Segment>& segs,
                     std::vector<std::pair<int, int>>& cells) {
    for (int i = 0; i + 1 < n; ++i) {
      for (int j = 0; j + 1 < n; ++j) {
        const double f00 = vals[i * n + j], f10 = vals[(i + 1) * n + j];
        const double f01 = vals[i * n + j + 1], f11 = vals[(i + 1) * n + j + 1];
        MeridianValue pts[4];
        int count = 0;
        auto cross = [](double a, double b) { return (a < 0) != (b < 0) && a != 0.0; };
        auto lerp = [](double a, double fa, double b, double fb) {
          return a + (b - a) * (fa / (fa - fb));
        };
        if (cross(f00, f10)) pts[count++] = {lerp(xs[i], f00, xs[i + 1], f10), rs[j]};
        if (cross(f01, f11)) pts[count++] = {lerp(xs[i], f01, xs[i + 1], f11), rs[j + 1]};
        if (cross(f00, f01)) pts[count++] = {xs[i], lerp(rs[j], f00, rs[j + 1], f01)};
        if (cross(f10, f11)) pts[count++] = {xs[i + 1], lerp(rs[j], f10, rs[j + 1], f11)};
        if (count >= 2) {
          segs.push_back({pts[0], pts[1]});
          if (count == 4) segs.push_back({pts[2], pts[3]});
          cells.emplace_back(i, j);
        }
      }
    }
  };

  std::vector<std::pair<int, int>> cells_v0, cells_vr;
  if (!out.v0_dense_zero) contour(v0, out.v0_segments, cells_v0);
  if (!out.vrho_dense_zero) contour(vr, out.vrho_segments, cells_vr);

  // Candidate equilibria: cells crossed by both nullclines.
  std::vector<MeridianValue> candidates;
  for (const auto& c0 : cells_v0) {
    for (const auto& c1 : cells_vr) {
      if (std::abs(c0.first - c1.first) <= 1 && std::abs(c0.second - c1.second) <= 1) {
        candidates.push_back({0.5 * (xs[c0.first] + xs[c0.first + 1]),
                              0.5 * (rs[c0.second] + rs[c0.second + 1])});
      }
    }
  }
  for (const auto& seed : candidates) {
    const auto res = newton_polish(f, seed, box, 1e-10);
    if (res.converged && inside(box, res.point, 1e-9)) {
      out.intersections.push_back(res.point);
    }
  }
  dedupe_and_sort(out.intersections);
  return out;
}

std::vector<ScanRow> parameter_scan(const std::function<MeridionalField(double)>& family,
                                    double lo, double hi, int steps, const MeridianBox& box,
                                    int grid, double tol) {
  if (steps < 1) {
    throw DomainError("parameter_scan: steps must be >= 1");
  }
  auto run_sample = [&](double mu) {
    ScanRow row;
    row.mu = mu;
    try {
      const MeridionalField f = family(mu);
      const auto eqs = find_equilibria(f, box, grid, tol);
      for (const auto& eq : eqs) {
        row.reports.push_back(classify(f, eq, 10.0 * tol));
      }
    } catch (const Error& e) {
      row.error = e.what();
    }
    return row;
  };

  // samples fan out across threads; the merge by index keeps output order
  // (and therefore bytes) deterministic
  std::vector<std::future<ScanRow>> futures;
  futures.reserve(steps);
  for (int k = 0; k < steps; ++k) {
    const double mu = (steps == 1) ? lo : lo + (hi - lo) * k / (steps - 1.0);
    futures.push_back(std::async(std::launch::async, run_sample, mu));
  }
  std::vector<ScanRow> rows;
  rows.reserve(steps);
  for (auto& fut : futures) {
    rows.push_back(fut.get());
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ScanRow& a, const ScanRow& b) { return a.mu < b.mu; });
  return rows;
}

}  // namespace meridian
