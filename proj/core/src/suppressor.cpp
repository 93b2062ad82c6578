#include "fqc/suppressor.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "fqc/errors.hpp"

namespace fqc {

namespace {

double smooth_step(double t) noexcept {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (t * (6.0 * t - 15.0) + 10.0);
}

double target(double x, double theta, double w) noexcept {
  return kAmplitudeBound * x * smooth_step((std::abs(x) - theta) / w);
}

double grid_point(std::size_t i, std::size_t points) noexcept {
  return -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(points - 1);
}

}  // namespace

double chebyshev_clenshaw(std::span<const double> c, double x) noexcept {
  if (c.empty()) return 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t m = c.size() - 1; m >= 1; --m) {
    const double b0 = 2.0 * x * b1 - b2 + c[m];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + c[0];
}

double horner(std::span<const double> c, double x) noexcept {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double SuppressionPolynomial::operator()(double x) const noexcept {
  return basis == PolynomialBasis::kChebyshev ? chebyshev_clenshaw(coefficients, x)
                                               : horner(coefficients, x);
}

double grid_max_abs(const SuppressionPolynomial& q, std::size_t points) {
  if (points < 2) throw ContractViolation("certification grid needs at least 2 points");
  std::vector<double> v(points);
  for (std::size_t i = 0; i < points; ++i) v[i] = std::abs(q(grid_point(i, points)));
  double best = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    best = std::max(best, v[i]);
    const bool peak = (i == 0 || v[i] >= v[i - 1]) && (i + 1 == points || v[i] >= v[i + 1]);
    if (!peak) continue;
    // Golden-section refinement of the peak between neighbouring grid points.
    double lo = grid_point(i == 0 ? 0 : i - 1, points);
    double hi = grid_point(i + 1 == points ? i : i + 1, points);
    constexpr double kInvPhi = 0.6180339887498949;
    double a = hi - kInvPhi * (hi - lo);
    double b = lo + kInvPhi * (hi - lo);
    double fa = std::abs(q(a));
    double fb = std::abs(q(b));
    for (int it = 0; it < 60 && hi - lo > 1e-15; ++it) {
      if (fa < fb) {
        lo = a;
        a = b;
        fa = fb;
        b = lo + kInvPhi * (hi - lo);
        fb = std::abs(q(b));
      } else {
        hi = b;
        b = a;
        fb = fa;
        a = hi - kInvPhi * (hi - lo);
        fa = std::abs(q(a));
      }
    }
    best = std::max({best, fa, fb});
  }
  return best;
}

SuppressionPolynomial SuppressionPolynomial::from_coefficients(std::vector<double> coefficients,
                                                               PolynomialBasis basis,
                                                               std::size_t certify_points) {
  SuppressionPolynomial q;
  q.degree = coefficients.empty() ? 0 : coefficients.size() - 1;
  q.basis = basis;
  q.coefficients = std::move(coefficients);
  q.gamma = grid_max_abs(q, certify_points);
  return q;
}

SuppressionPolynomial build_suppressor(double theta, std::size_t degree, double softness,
                                       const SuppressorOptions& options) {
  if (!(theta > 0.0 && theta <= 1.0)) throw ContractViolation("threshold must lie in (0, 1]");
  if (degree < 2) throw ContractViolation("degree must be at least 2");
  if (!(softness > 0.0) || !std::isfinite(softness)) throw ContractViolation("softness must be positive");
  if (options.fit_nodes < 4 || options.certify_points < 2) {
    throw ContractViolation("suppressor grids are too small");
  }

  SuppressionPolynomial q;
  q.degree = degree;
  q.threshold = theta;
  q.softness = softness;
  q.basis = PolynomialBasis::kChebyshev;
  q.coefficients.assign(degree + 1, 0.0);

  // Basis b_m(x) = (x^2 - theta^2) T_{2m+1}(x), odd and vanishing at 0 and +-theta.
  std::size_t columns = 0;
  while (2 * columns + 3 <= degree) ++columns;

  // Positive half of the Chebyshev nodes; odd symmetry covers the rest.
  std::vector<double> nodes;
  for (std::size_t i = 0; i < options.fit_nodes / 2; ++i) {
    nodes.push_back(std::cos(std::numbers::pi * (static_cast<double>(i) + 0.5) /
                             static_cast<double>(options.fit_nodes)));
  }

  const double pass_start = theta + softness;
  if (!q.passband_empty() && columns > 0) {
    const auto rows = static_cast<Eigen::Index>(nodes.size());
    Eigen::MatrixXd design = Eigen::MatrixXd::Zero(rows, static_cast<Eigen::Index>(columns));
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double x = nodes[static_cast<std::size_t>(r)];
      double weight = 0.0;  // transition band: unconstrained
      if (x <= theta) weight = options.stopband_weight;
      else if (x >= pass_start) weight = 1.0;
      if (weight == 0.0) continue;
      const double factor = x * x - theta * theta;
      // T_{m} by recurrence, keeping the odd orders.
      double t_prev = 1.0;
      double t_cur = x;
      for (std::size_t m = 1, col = 0; col < columns; ++m) {
        if (m % 2 == 1) {
          design(r, static_cast<Eigen::Index>(col)) = weight * factor * t_cur;
          ++col;
        }
        const double t_next = 2.0 * x * t_cur - t_prev;
        t_prev = t_cur;
        t_cur = t_next;
      }
      rhs(r) = weight * target(x, theta, softness);
    }
    const Eigen::VectorXd sol = design.colPivHouseholderQr().solve(rhs);

    // (x^2 - theta^2) T_j = T_{j+2}/4 + T_{|j-2|}/4 + (1/2 - theta^2) T_j
    for (std::size_t col = 0; col < columns; ++col) {
      const double a = sol(static_cast<Eigen::Index>(col));
      const std::size_t j = 2 * col + 1;
      q.coefficients[j + 2] += 0.25 * a;
      q.coefficients[j >= 2 ? j - 2 : 2 - j] += 0.25 * a;
      q.coefficients[j] += (0.5 - theta * theta) * a;
    }
  }

  double scale = 1.0;
  const double raw_gamma = grid_max_abs(q, options.certify_points);
  if (raw_gamma > kAmplitudeBound) {
    scale = kAmplitudeBound * (1.0 - 1e-12) / raw_gamma;
    for (double& c : q.coefficients) c *= scale;
  }
  q.gamma = grid_max_abs(q, options.certify_points);

  q.stopband_leak = 0.0;
  q.passband_floor = std::numeric_limits<double>::infinity();
  for (std::size_t i = (options.certify_points - 1) / 2; i < options.certify_points; ++i) {
    const double x = grid_point(i, options.certify_points);
    const double v = std::abs(q(x));
    if (x <= theta) q.stopband_leak = std::max(q.stopband_leak, v);
    if (x >= pass_start) q.passband_floor = std::min(q.passband_floor, v);
  }
  if (!std::isfinite(q.passband_floor)) q.passband_floor = 0.0;

  q.max_residual = 0.0;
  for (double x : nodes) {
    if (x > theta && x < pass_start) continue;
    q.max_residual = std::max(q.max_residual, std::abs(q(x) - scale * target(x, theta, softness)));
  }

  if (!q.passband_empty() && !(q.passband_floor > q.stopband_leak)) {
    throw ApproximationError("degree " + std::to_string(degree) + " cannot separate |x| <= " +
                                 std::to_string(theta) + " from |x| >= " +
                                 std::to_string(pass_start) + " (max residual " +
                                 std::to_string(q.max_residual) + ")",
                             q.max_residual);
  }
  return q;
}

TransformResult apply_transform(const AmplitudeVector& av, const SuppressionPolynomial& q,
                                double relative_floor) {
  if (av.amps.empty()) throw ContractViolation("amplitude vector is empty");
  TransformResult out;
  out.transformed.resize(av.amps.size());
  double weight = 0.0;
  for (std::size_t j = 0; j < av.amps.size(); ++j) {
    const double v = q(av.amps[j]);
    out.transformed[j] = v;
    weight += v * v;
  }
  out.success_weight = weight;
  out.floor = relative_floor * av.total_weight();
  if (!(weight > out.floor)) {
    out.converged = true;
    return out;
  }
  out.resample_distribution.resize(out.transformed.size());
  for (std::size_t j = 0; j < out.transformed.size(); ++j) {
    out.resample_distribution[j] = out.transformed[j] * out.transformed[j] / weight;
  }
  return out;
}

QueryCost query_cost(std::size_t degree, double gamma, std::size_t total_qubits,
                     double success_weight) {
  if (!(success_weight > 0.0)) throw DomainError("success weight must be positive");
  QueryCost cost;
  cost.degree = degree;
  cost.gamma = gamma;
  cost.total_qubits = total_qubits;
  cost.success_weight = success_weight;
  cost.per_iteration = static_cast<double>(degree) * gamma *
                       std::sqrt(std::ldexp(1.0, static_cast<int>(total_qubits)) / success_weight);
  return cost;
}

}  // namespace fqc
