#ifndef MERIDIAN_DYNAMICS_HPP
#define MERIDIAN_DYNAMICS_HPP

#include <functional>
#include <string>
#include <vector>

#include "meridian/field.hpp"

namespace meridian {

/// Gradient system dx/dt = V = grad h (plus-sign convention, so h is
/// nondecreasing along trajectories).
struct GradientSystem {
  MeridionalField field;
};

enum class Termination {
  Completed,          ///< reached t_end / arc length
  AxisReached,        ///< rho fell below 1e-6
  EquilibriumReached, ///< |V| fell below 1e-12
  StepSizeUnderflow,  ///< adaptive step hit the 1e-12 floor
};

struct Trajectory {
  std::vector<double> times;   ///< t (pathlines) or s (streamlines)
  std::vector<Vec3> points;
  std::vector<double> h_values;
  Termination termination = Termination::Completed;
};

/// Adaptive embedded RK4(5) (Dormand-Prince) with PI step control.
/// The meridional structure keeps the azimuth constant, so integration runs
/// in the meridian plane and is embedded back with the start azimuth.
Trajectory integrate_pathline(const GradientSystem& sys, const Vec3& start, double t_end,
                              double tol);

/// Arc-length parameterized streamline through a regular point; for these
/// steady fields its point set coincides with the pathline's.
/// Throws StagnationPointError when |V(start)| < 1e-12.
Trajectory trace_streamline(const MeridionalField& f, const Vec3& start, double arclen,
                            double tol);

struct MeridianBox {
  double x0_min, x0_max;
  double rho_min, rho_max;  ///< rho_min must be positive
};

/// Multistart damped Newton on (V0, Vrho) from a grid x grid seed lattice.
/// Returned points satisfy |V0|, |Vrho| <= tol, deduplicated within 1e-6,
/// sorted by (x0, rho).  An empty result is a valid outcome.
std::vector<MeridianValue> find_equilibria(const MeridionalField& f, const MeridianBox& box,
                                           int grid, double tol);

struct EquilibriumReport {
  MeridianValue location;
  Spectrum eigenvalues;
  bool degenerate = false;
  bool hyperbolic = false;
  int index = 0;                 ///< eigenvalues below -tol (counting multiplicity)
  int degree_of_instability = 0; ///< eigenvalues above +tol
};

/// Stability report at an equilibrium; throws NotAnEquilibriumError when
/// |V(eq)| > tol.  The zero test for eigenvalues uses
/// 1e-7 * (1 + spectral scale).
EquilibriumReport classify(const MeridionalField& f, MeridianValue eq, double tol);

using Segment = std::array<MeridianValue, 2>;

struct NullclineSet {
  std::vector<Segment> v0_segments;
  std::vector<Segment> vrho_segments;
  std::vector<MeridianValue> intersections;
  bool v0_dense_zero = false;    ///< component vanishes on most of the grid
  bool vrho_dense_zero = false;
};

/// Marching-squares zero contours of V0 and Vrho; intersections are
/// Newton-polished and agree with find_equilibria.
NullclineSet nullclines(const MeridionalField& f, const MeridianBox& box, int grid);

struct ScanRow {
  double mu = 0.0;
  std::vector<EquilibriumReport> reports;
  std::string error;  ///< nonempty when this sample failed; scan continues
};

/// Sweeps mu over `steps` equally spaced samples of [lo, hi] (steps = 1
/// samples lo only), running find_equilibria + classify per sample.
std::vector<ScanRow> parameter_scan(const std::function<MeridionalField(double)>& family,
                                    double lo, double hi, int steps, const MeridianBox& box,
                                    int grid, double tol);

}  // namespace meridian

#endif  // MERIDIAN_DYNAMICS_HPP
