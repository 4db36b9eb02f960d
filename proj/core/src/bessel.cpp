#include "meridian/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

namespace meridian {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-290;
constexpr int kMaxIter = 20000;
constexpr int kMaxSeriesTerms = 200;

void check_domain(double nu, double x) {
  if (!(x > 0.0)) {
    throw DomainError("bessel: argument must be positive, got x = " + std::to_string(x));
  }
  if (!(nu >= 0.0)) {
    throw DomainError("bessel: order must be nonnegative, got nu = " + std::to_string(nu));
  }
  if (nu > kBesselMaxOrder) {
    throw UnsupportedOrderError("bessel: order " + std::to_string(nu) + " exceeds supported maximum 50");
  }
}

/// Ascending series J_nu(x) = (x/2)^nu sum_k (-x^2/4)^k / (k! Gamma(nu+k+1)).
/// Safe from cancellation for x <= 2 (any order here).
double bessel_j_series(double nu, double x) {
  const double lead = std::exp(nu * std::log(0.5 * x) - std::lgamma(nu + 1.0));
  double term = lead;
  double sum = term;
  const double q = -0.25 * x * x;
  for (int k = 1; k < kMaxSeriesTerms; ++k) {
    term *= q / (k * (nu + k));
    sum += term;
    if (std::abs(term) < kEps * std::abs(sum)) break;
  }
  return sum;
}

/// Ascending series for I_nu(x); all terms positive, valid for any x.
double bessel_i_series(double nu, double x) {
  const double lead = std::exp(nu * std::log(0.5 * x) - std::lgamma(nu + 1.0));
  double term = lead;
  double sum = term;
  const double q = 0.25 * x * x;
  for (int k = 1; k < 2 * kMaxSeriesTerms; ++k) {
    term *= q / (k * (nu + k));
    sum += term;
    if (term < kEps * sum) break;
  }
  return sum;
}

/// mu / sin(mu*pi), continuous through mu = 0.
double mu_over_sin_mupi(double mu) {
  const double z = mu * kPi;
  if (std::abs(z) < 1e-4) {
    const double z2 = z * z;
    return (1.0 + z2 / 6.0 * (1.0 + 7.0 * z2 / 60.0)) / kPi;
  }
  return mu / std::sin(z);
}

double sinhc(double s) {
  if (std::abs(s) < 1e-4) {
    const double s2 = s * s;
    return 1.0 + s2 / 6.0 * (1.0 + s2 / 20.0);
  }
  return std::sinh(s) / s;
}

/// Gamma1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu) and
/// Gamma2 = (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2, stable through mu = 0.
///
/// Near zero uses the Maclaurin coefficients of 1/Gamma(1+z)
/// (Abramowitz & Stegun 6.1.34).
void gamma_pair(double mu, double& g1, double& g2, double& inv_gamma_plus, double& inv_gamma_minus) {
  if (std::abs(mu) > 0.01) {
    inv_gamma_plus = 1.0 / std::tgamma(1.0 + mu);
    inv_gamma_minus = 1.0 / std::tgamma(1.0 - mu);
    g1 = (inv_gamma_minus - inv_gamma_plus) / (2.0 * mu);
    g2 = 0.5 * (inv_gamma_minus + inv_gamma_plus);
    return;
  }
  constexpr double a1 = 0.57721566490153286060651209008240;   // Euler gamma
  constexpr double a2 = -0.65587807152025388107701951514539;
  constexpr double a3 = -0.04200263503409523552900393487542;
  constexpr double a4 = 0.16653861138229148950170079510210;
  constexpr double a5 = -0.04219773455554433674820830128918;
  constexpr double a6 = -0.00962197152787697356211492167234;
  constexpr double a7 = 0.00721894324666309954239501034044;
  const double m2 = mu * mu;
  g1 = -(a1 + m2 * (a3 + m2 * (a5 + m2 * a7)));
  g2 = 1.0 + m2 * (a2 + m2 * (a4 + m2 * a6));
  const double odd = mu * (a1 + m2 * (a3 + m2 * (a5 + m2 * a7)));
  const double even = g2;
  inv_gamma_plus = even + odd;
  inv_gamma_minus = even - odd;
}

/// Stable small-x evaluation of Y_mu and Y_{mu+1} for |mu| <= 1/2, x <= 2.
///
/// Rearranges the connection formula Y_mu = (J_mu cos(mu pi) - J_{-mu}) /
/// sin(mu pi) term by term so that every coefficient stays finite as mu
/// approaches an integer:
///   Y_mu     = -sum_k c_k D_k - tan(mu pi/2) J_mu,
///   Y_{mu+1} = -(2/x)(mu/sin(mu pi)) A_0 + (x/2) sum_k c_k Dt_k,
/// with c_k = (-x^2/4)^k / k!,
///   A_k = (x/2)^{-mu}/Gamma(k+1-mu),  B_k = (x/2)^{mu}/Gamma(k+1+mu),
///   D_k = (A_k - B_k)/sin(mu pi),
///   Dt_k = -D_k/(k+1+mu) - (mu/sin(mu pi)) A_k/((k+1)(k+1+mu))
///          - tan(mu pi/2) B_k/(k+1+mu).
void bessel_y_small_x(double mu, double x, double& y_mu, double& y_mu1) {
  const double log_half_x = std::log(2.0 / x);
  const double sigma = mu * log_half_x;
  double g1, g2, igp, igm;
  gamma_pair(mu, g1, g2, igp, igm);
  const double mos = mu_over_sin_mupi(mu);
  const double e_sigma = std::exp(sigma);

  double a = e_sigma * igm;
  double b = igp / e_sigma;
  const double a0 = a;
  double d = 2.0 * mos * (g1 * std::cosh(sigma) + g2 * log_half_x * sinhc(sigma));
  const double tan_half = std::tan(0.5 * mu * kPi);

  double c = 1.0;
  double sum_y = c * d;
  double sum_j = c * b;
  double sum_y1 = c * (-d / (1.0 + mu) - mos * a / (1.0 + mu) - tan_half * b / (1.0 + mu));
  const double q = -0.25 * x * x;
  for (int k = 1; k < kMaxSeriesTerms; ++k) {
    d = (k * d + mos * (a + b)) / (k * k - mu * mu);
    a /= (k - mu);
    b /= (k + mu);
    c *= q / k;
    const double del_y = c * d;
    const double del_y1 = c * (-d / (k + 1.0 + mu) - mos * a / ((k + 1.0) * (k + 1.0 + mu)) -
                               tan_half * b / (k + 1.0 + mu));
    sum_y += del_y;
    sum_j += c * b;
    sum_y1 += del_y1;
    if (std::abs(del_y) < kEps * std::abs(sum_y) && std::abs(del_y1) < kEps * std::abs(sum_y1)) {
      break;
    }
  }
  y_mu = -sum_y - tan_half * sum_j;
  y_mu1 = -(2.0 / x) * mos * a0 + 0.5 * x * sum_y1;
}

/// CF1: f = J'_nu/J_nu by modified Lentz.  `sign` receives the sign of J_nu.
double bessel_cf1(double nu, double x, int& sign) {
  const double xi = 1.0 / x;
  const double xi2 = 2.0 * xi;
  sign = 1;
  double h = nu * xi;
  if (h < kTiny) h = kTiny;
  double b = xi2 * nu;
  double d = 0.0;
  double c = h;
  for (int i = 1; i <= kMaxIter; ++i) {
    b += xi2;
    d = b - d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b - 1.0 / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = c * d;
    h *= del;
    if (d < 0.0) sign = -sign;
    if (std::abs(del - 1.0) < 4.0 * kEps) {
      return h;
    }
  }
  throw Error("bessel: CF1 failed to converge for nu = " + std::to_string(nu) +
              ", x = " + std::to_string(x));
}

/// CF2: p + i q = (J' + iY')/(J + iY) at order mu, x >= 2, by complex
/// modified Lentz on the tail a1/(b1 + a2/(b2 + ...)) with
/// a_i = (i - 1/2)^2 - mu^2 and b_i = 2(x + i*I).
std::complex<double> bessel_cf2(double mu, double x) {
  using cd = std::complex<double>;
  cd f(kTiny, 0.0);
  cd big_c = f;
  cd big_d(0.0, 0.0);
  double a = 0.25 - mu * mu;
  cd b(2.0 * x, 2.0);
  for (int i = 1; i <= kMaxIter; ++i) {
    if (i > 1) {
      a += 2.0 * (i - 1);
      b += cd(0.0, 2.0);
    }
    big_d = b + a * big_d;
    if (std::abs(big_d) < kTiny) big_d = cd(kTiny, 0.0);
    big_c = b + a / big_c;
    if (std::abs(big_c) < kTiny) big_c = cd(kTiny, 0.0);
    big_d = 1.0 / big_d;
    const cd del = big_c * big_d;
    f *= del;
    if (std::abs(del - cd(1.0, 0.0)) < 4.0 * kEps) {
      return cd(-0.5 / x, 1.0) + cd(0.0, 1.0 / x) * f;
    }
  }
  throw Error("bessel: CF2 failed to converge for mu = " + std::to_string(mu) +
              ", x = " + std::to_string(x));
}

BesselJY bessel_jy_impl(double nu, double x) {
  BesselJY out{};
  if (x < 2.0) {
    // Reduce to |mu| <= 1/2 for the stabilized Y series; J directly by series.
    const int nl = static_cast<int>(nu + 0.5);
    const double mu = nu - nl;
    double y_mu, y_mu1;
    bessel_y_small_x(mu, x, y_mu, y_mu1);
    // Upward recurrence on Y (dominant solution: stable).
    double y0 = y_mu;
    double y1 = y_mu1;
    for (int i = 1; i < nl; ++i) {
      const double y2 = (2.0 * (mu + i) / x) * y1 - y0;
      y0 = y1;
      y1 = y2;
    }
    double y_nu, y_nu_prev;
    if (nl == 0) {
      y_nu = y0;
      out.y = y_nu;
      out.yp = (mu / x) * y0 - y1;  // y1 = Y_{mu+1}
    } else {
      y_nu_prev = y0;
      y_nu = y1;
      out.y = y_nu;
      out.yp = y_nu_prev - (nu / x) * y_nu;
    }
    out.j = bessel_j_series(nu, x);
    out.jp = (nu / x) * out.j - bessel_j_series(nu + 1.0, x);
    return out;
  }

  // Steed's method for x >= 2.
  const int nl = std::max(0, static_cast<int>(nu - x + 1.5));
  const double mu = nu - nl;
  const double w = 2.0 / (kPi * x);

  int sign = 1;
  const double f_nu = bessel_cf1(nu, x, sign);
  double j_un = sign * kTiny;
  double jp_un = f_nu * j_un;
  const double j_un_nu = j_un;
  const double jp_un_nu = jp_un;
  double fact = nu / x;
  for (int l = nl; l >= 1; --l) {
    const double j_prev = fact * j_un + jp_un;
    fact -= 1.0 / x;
    jp_un = fact * j_prev - j_un;
    j_un = j_prev;
  }
  if (j_un == 0.0) j_un = kTiny;
  const double f_mu = jp_un / j_un;

  const std::complex<double> pq = bessel_cf2(mu, x);
  const double p = pq.real();
  const double q = pq.imag();
  const double gamma = (p - f_mu) / q;
  double j_mu = std::sqrt(w / ((p - f_mu) * gamma + q));
  j_mu = std::copysign(j_mu, j_un);
  const double y_mu = gamma * j_mu;
  const double yp_mu = y_mu * p + j_mu * q;

  const double scale = j_mu / j_un;
  out.j = j_un_nu * scale;
  out.jp = jp_un_nu * scale;

  double y0 = y_mu;
  double y1 = (mu / x) * y_mu - yp_mu;  // Y_{mu+1}
  for (int i = 1; i < nl; ++i) {
    const double y2 = (2.0 * (mu + i) / x) * y1 - y0;
    y0 = y1;
    y1 = y2;
  }
  if (nl == 0) {
    out.y = y0;
    out.yp = (mu / x) * y0 - y1;
  } else {
    out.y = y1;
    out.yp = y0 - (nu / x) * y1;
  }
  return out;
}

/// log(cosh(u)) computed without overflow.
double log_cosh(double u) {
  const double a = std::abs(u);
  return a + std::log1p(std::exp(-2.0 * a)) - 0.6931471805599453094172321214582;
}

/// K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt.
///
/// The integrand extends to an even analytic function with double-exponential
/// decay, so the trapezoid rule converges geometrically in 1/h.  Sums are
/// log-scaled to survive the huge dynamic range at small x / large nu.
double bessel_k_integral(double nu, double x) {
  const double t_peak = (nu > 0.0) ? std::asinh(nu / x) : 0.0;
  const double li_peak = std::max(log_cosh(nu * t_peak) - x * std::cosh(t_peak), -x);
  double t_end = std::max(t_peak + 2.0, 2.0);
  while (log_cosh(nu * t_end) - x * std::cosh(t_end) > li_peak - 140.0) {
    t_end += 1.0;
    if (t_end > 800.0) {
      throw IntegrationFailureError("bessel: K integral range search failed");
    }
  }

  auto scaled_trapezoid = [&](int n) {
    const double h = t_end / n;
    double sum = 0.5 * std::exp(log_cosh(0.0) - x - li_peak);
    for (int i = 1; i <= n; ++i) {
      const double t = i * h;
      sum += std::exp(log_cosh(nu * t) - x * std::cosh(t) - li_peak);
    }
    return h * sum;
  };

  double prev = scaled_trapezoid(64);
  for (int n = 128; n <= 65536; n *= 2) {
    const double cur = scaled_trapezoid(n);
    if (std::abs(cur - prev) <= 1e-14 * std::abs(cur)) {
      return std::exp(li_peak) * cur;
    }
    prev = cur;
  }
  throw IntegrationFailureError("bessel: K integral did not reach tolerance");
}

}  // namespace

BesselJY bessel_jy(double nu, double x) {
  check_domain(nu, x);
  return bessel_jy_impl(nu, x);
}

double bessel(BesselKind kind, double nu, double x) {
  check_domain(nu, x);
  switch (kind) {
    case BesselKind::J:
      return (x < 2.0) ? bessel_j_series(nu, x) : bessel_jy_impl(nu, x).j;
    case BesselKind::Y:
      return bessel_jy_impl(nu, x).y;
    case BesselKind::I:
      return bessel_i_series(nu, x);
    case BesselKind::K:
      return bessel_k_integral(nu, x);
  }
  throw Error("bessel: unreachable kind");
}

double bessel_half(BesselKind kind, double x) {
  if (!(x > 0.0)) {
    throw DomainError("bessel_half: argument must be positive");
  }
  const double amp = std::sqrt(2.0 / (kPi * x));
  switch (kind) {
    case BesselKind::J:
      return amp * std::sin(x);
    case BesselKind::Y:
      return -amp * std::cos(x);
    default:
      throw DomainError("bessel_half: only J and Y have the half-integer closed forms here");
  }
}

double bessel_derivative(BesselKind kind, double nu, double x) {
  check_domain(nu, x);
  switch (kind) {
    case BesselKind::J: {
      if (x < 2.0) {
        return (nu / x) * bessel_j_series(nu, x) - bessel_j_series(nu + 1.0, x);
      }
      return bessel_jy_impl(nu, x).jp;
    }
    case BesselKind::Y:
      return bessel_jy_impl(nu, x).yp;
    case BesselKind::I:
      return (nu / x) * bessel_i_series(nu, x) + bessel_i_series(nu + 1.0, x);
    case BesselKind::K:
      return (nu / x) * bessel_k_integral(nu, x) - bessel_k_integral(nu + 1.0, x);
  }
  throw Error("bessel_derivative: unreachable kind");
}

}  // namespace meridian
