// Copyright 2026 The auxmode Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "auxmode/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace auxmode::oracle {

namespace {

constexpr Complex kI{0.0, 1.0};

using Mat = std::array<Complex, 4>;  // row-major 2x2
using Vec = std::array<Complex, 2>;

Mat multiply(const Mat& p, const Mat& q) {
  return {p[0] * q[0] + p[1] * q[2], p[0] * q[1] + p[1] * q[3],
          p[2] * q[0] + p[3] * q[2], p[2] * q[1] + p[3] * q[3]};
}

Vec apply(const Mat& p, const Vec& v) {
  return {p[0] * v[0] + p[1] * v[1], p[2] * v[0] + p[3] * v[1]};
}

double norm1(const Mat& p) {
  return std::max(std::abs(p[0]) + std::abs(p[2]), std::abs(p[1]) + std::abs(p[3]));
}

// Lab-frame coupling matrix, built here independently of dynamics.
Mat coupling_matrix(const CavityParams& p) {
  const double c = p.kind == CavityKind::OneSided ? 0.5 : 1.0;
  const Complex cross = -c * std::sqrt(p.kappa_a * p.kappa_b);
  return {Complex(-c * p.kappa_a, -p.omega_a), cross, cross,
          Complex(-c * p.kappa_b, -p.omega_b)};
}

// Scaling and squaring with a truncated Taylor series.
Mat expm(const Mat& a) {
  const double n = norm1(a);
  int squarings = 0;
  if (n > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(n / 0.5)));
  }
  const double scale = std::ldexp(1.0, -squarings);
  const Mat b{a[0] * scale, a[1] * scale, a[2] * scale, a[3] * scale};
  Mat result{1.0, 0.0, 0.0, 1.0};
  Mat term{1.0, 0.0, 0.0, 1.0};
  for (int k = 1; k <= 20; ++k) {
    term = multiply(term, b);
    for (auto& entry : term) entry /= static_cast<double>(k);
    for (int i = 0; i < 4; ++i) result[i] += term[i];
  }
  for (int i = 0; i < squarings; ++i) {
    result = multiply(result, result);
  }
  return result;
}

bool finite(const Complex& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

// Output-port reading for unit input: one-sided reflection subtracts c_in.
Complex boundary(const CavityParams& p, const Vec& fields, Complex c_in) {
  const Complex radiated = std::sqrt(p.kappa_a) * fields[0] + std::sqrt(p.kappa_b) * fields[1];
  return p.kind == CavityKind::OneSided ? radiated - c_in : radiated;
}

}  // namespace

StationaryFields direct_solve(const CavityParams& params, double omega) {
  params.validate();
  const Mat m = coupling_matrix(params);
  // m_ij are the elements of -(M + i w I).
  const Complex m11 = -(m[0] + kI * omega);
  const Complex m12 = -m[1];
  const Complex m21 = -m[2];
  const Complex m22 = -(m[3] + kI * omega);
  const Complex det = m11 * m22 - m12 * m21;
  if (det == Complex{0.0, 0.0}) {
    throw DomainError("direct_solve: singular system matrix");
  }
  const double ka = std::sqrt(params.kappa_a);
  const double kb = std::sqrt(params.kappa_b);
  StationaryFields out;
  out.a = (m22 * ka - m12 * kb) / det;
  out.b = (-m21 * ka + m11 * kb) / det;
  out.s = boundary(params, {out.a, out.b}, 1.0);
  return out;
}

Complex input_field(const Drive& drive, double t) {
  return drive.alpha_in * std::exp(-kI * drive.omega_p * t);
}

OdeTrajectory ode_integrate(const CavityParams& params, const Drive& drive,
                            const QubitShift& shift, double t_end, long steps,
                            long record_every) {
  params.validate();
  drive.validate();
  shift.validate();
  if (steps < 1000 || !(t_end > 0.0) || record_every < 1) {
    throw DomainError("ode_integrate requires steps >= 1000 and t_end > 0");
  }
  CavityParams shifted = params;
  shifted.omega_a += state_sign(shift.state) * shift.chi;
  const Mat m = coupling_matrix(shifted);
  const Vec k{std::sqrt(shifted.kappa_a), std::sqrt(shifted.kappa_b)};
  const double h = t_end / static_cast<double>(steps);

  auto rhs = [&](double t, const Vec& y) {
    const Complex c_in = input_field(drive, t);
    const Vec my = apply(m, y);
    return Vec{my[0] + k[0] * c_in, my[1] + k[1] * c_in};
  };

  OdeTrajectory traj;
  const std::size_t reserve = static_cast<std::size_t>(steps / record_every + 2);
  traj.times.reserve(reserve);
  traj.a_vals.reserve(reserve);
  traj.b_vals.reserve(reserve);
  traj.out_vals.reserve(reserve);

  auto record = [&](double t, const Vec& y) {
    traj.times.push_back(t);
    traj.a_vals.push_back(y[0]);
    traj.b_vals.push_back(y[1]);
    traj.out_vals.push_back(boundary(shifted, y, input_field(drive, t)));
  };

  Vec y{0.0, 0.0};
  record(0.0, y);
  for (long n = 0; n < steps; ++n) {
    const double t = h * static_cast<double>(n);
    const Vec k1 = rhs(t, y);
    const Vec k2 = rhs(t + 0.5 * h, {y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]});
    const Vec k3 = rhs(t + 0.5 * h, {y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]});
    const Vec k4 = rhs(t + h, {y[0] + h * k3[0], y[1] + h * k3[1]});
    for (int i = 0; i < 2; ++i) {
      y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    if (!finite(y[0]) || !finite(y[1])) {
      throw IntegrationDiverged();
    }
    if ((n + 1) % record_every == 0 || n + 1 == steps) {
      record(h * static_cast<double>(n + 1), y);
    }
  }
  return traj;
}

long recommended_steps(const CavityParams& params, const Drive& drive,
                       const QubitShift& shift, double t_end,
                       double steps_per_radian) {
  CavityParams shifted = params;
  shifted.omega_a += state_sign(shift.state) * shift.chi;
  // The 1-norm bounds every eigenvalue modulus.
  const double bound = norm1(coupling_matrix(shifted)) + std::abs(drive.omega_p);
  const double wanted = std::ceil(steps_per_radian * t_end * bound);
  return std::max(1000L, static_cast<long>(wanted));
}

GridMaximum golden_maximize(const ScalarFunction& f, double lo, double hi,
                            double width) {
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > width) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    // Guards against a width below the floating point spacing.
    if (c >= d) break;
  }
  return fc >= fd ? GridMaximum{c, fc} : GridMaximum{d, fd};
}

namespace {

std::vector<double> uniform_grid(double lo, double hi, long n) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    xs[static_cast<std::size_t>(i)] =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return xs;
}

void check_scan(double lo, double hi, long n) {
  if (n < 1000 || !(lo < hi)) {
    throw DomainError("grid scan requires n >= 1000 and lo < hi");
  }
}

GridMaximum refine_around(const ScalarFunction& f, const std::vector<double>& xs,
                          std::size_t i, double sample) {
  const double lo = xs[i == 0 ? 0 : i - 1];
  const double hi = xs[std::min(i + 1, xs.size() - 1)];
  GridMaximum refined = golden_maximize(f, lo, hi);
  if (refined.max < sample) {
    return {xs[i], sample};
  }
  return refined;
}

}  // namespace

GridMaximum grid_maximize(const ScalarFunction& f, double lo, double hi,
                          long n) {
  check_scan(lo, hi, n);
  const std::vector<double> xs = uniform_grid(lo, hi, n);
  std::size_t best = 0;
  double best_value = f(xs[0]);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double v = f(xs[i]);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  return refine_around(f, xs, best, best_value);
}

std::vector<GridMaximum> grid_local_maxima(const ScalarFunction& f, double lo,
                                           double hi, long n) {
  check_scan(lo, hi, n);
  const std::vector<double> xs = uniform_grid(lo, hi, n);
  std::vector<double> ys(xs.size());
  std::transform(xs.begin(), xs.end(), ys.begin(), f);
  std::vector<GridMaximum> found;
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    if (ys[i] >= ys[i - 1] && ys[i] > ys[i + 1]) {
      found.push_back(refine_around(f, xs, i, ys[i]));
    }
  }
  return found;
}

std::vector<GridMaximum> grid_local_minima(const ScalarFunction& f, double lo,
                                           double hi, long n) {
  auto negated = [&f](double x) { return -f(x); };
  std::vector<GridMaximum> found = grid_local_maxima(negated, lo, hi, n);
  for (auto& m : found) m.max = -m.max;
  return found;
}

double snr_quadrature(const CavityParams& params, const Drive& drive,
                      double chi, double tau, long steps) {
  params.validate();
  drive.validate();
  if (steps < 10000 || !(tau > 0.0)) {
    throw DomainError("snr_quadrature requires steps >= 10^4 and tau > 0");
  }
  if (chi == 0.0) {
    return 0.0;
  }

  struct StateData {
    Mat rotating;  // M + i wp I
    Vec stationary;
    CavityParams shifted;
  };
  std::array<StateData, 2> states;
  Complex delta_s{0.0, 0.0};
  for (int l = 0; l < 2; ++l) {
    StateData& sd = states[static_cast<std::size_t>(l)];
    sd.shifted = params;
    sd.shifted.omega_a += (l == 0 ? 1.0 : -1.0) * chi;
    sd.rotating = coupling_matrix(sd.shifted);
    sd.rotating[0] += kI * drive.omega_p;
    sd.rotating[3] += kI * drive.omega_p;
    const StationaryFields st = direct_solve(sd.shifted, drive.omega_p);
    sd.stationary = {st.a, st.b};
    delta_s += (l == 0 ? 1.0 : -1.0) * st.s;
  }
  if (std::abs(delta_s) == 0.0) {
    throw DomainError("no contrast: homodyne angle undefined");
  }
  const Complex rotation = std::polar(1.0, -std::arg(delta_s));

  // Rotating-frame fields from an empty cavity: y(t) = (I - e^{M't}) y_st.
  auto signal = [&](const std::array<Mat, 2>& propagators) {
    Complex diff{0.0, 0.0};
    for (int l = 0; l < 2; ++l) {
      const StateData& sd = states[static_cast<std::size_t>(l)];
      const Vec decayed = apply(propagators[static_cast<std::size_t>(l)], sd.stationary);
      const Vec fields{sd.stationary[0] - decayed[0], sd.stationary[1] - decayed[1]};
      diff += (l == 0 ? 1.0 : -1.0) * boundary(sd.shifted, fields, 1.0);
    }
    return (rotation * diff).real();
  };

  std::array<Mat, 2> propagators{Mat{1.0, 0.0, 0.0, 1.0}, Mat{1.0, 0.0, 0.0, 1.0}};
  double previous_t = 0.0;
  double previous_f = signal(propagators);
  double integral = 0.0;
  for (long j = 1; j <= steps; ++j) {
    const double u = static_cast<double>(j) / static_cast<double>(steps);
    const double t = tau * u * u * u;
    const double h = t - previous_t;
    for (int l = 0; l < 2; ++l) {
      const Mat& r = states[static_cast<std::size_t>(l)].rotating;
      const Mat step = expm({r[0] * h, r[1] * h, r[2] * h, r[3] * h});
      propagators[static_cast<std::size_t>(l)] =
          multiply(step, propagators[static_cast<std::size_t>(l)]);
    }
    const double f = signal(propagators);
    integral += 0.5 * h * (f + previous_f);
    previous_t = t;
    previous_f = f;
  }
  return std::abs(integral) / tau;
}

}  // namespace auxmode::oracle
