#pragma once

// Bounded odd polynomials that suppress small amplitudes, their elementwise
// action on an amplitude vector, and the modeled query cost of realizing that
// action with the nonlinear amplitude transformation.

#include <cstddef>
#include <span>
#include <vector>

#include "fqc/oracle.hpp"

namespace fqc {

enum class PolynomialBasis { kChebyshev, kMonomial };

inline constexpr double kAmplitudeBound = 0.25;

struct SuppressorOptions {
  /// Chebyshev nodes used for the least-squares fit (both halves of [-1, 1]).
  std::size_t fit_nodes = 2000;
  /// Relative weight of the stop band |x| <= theta against the pass band.
  double stopband_weight = 100.0;
  /// Uniform grid (endpoints included); its local peaks are refined to certify |Q| <= 1/4.
  std::size_t certify_points = 20001;
};

/// Q(x) ~ (1/4) x s((|x| - theta) / w) with s a quintic smooth step rising
/// from 0 at |x| = theta to 1 at |x| = theta + w. Q is odd and carries the
/// factor (x^2 - theta^2), so Q(0) = Q(+-theta) = 0.
struct SuppressionPolynomial {
  std::size_t degree = 0;
  double threshold = 0.0;
  double softness = 0.0;
  PolynomialBasis basis = PolynomialBasis::kChebyshev;
  std::vector<double> coefficients;
  /// max |Q| on the certification grid.
  double gamma = 0.0;

  // Fit diagnostics, measured on the certification grid.
  double stopband_leak = 0.0;   ///< max |Q(x)| for |x| <= theta
  double passband_floor = 0.0;  ///< min |Q(x)| for |x| >= theta + w (0 if empty)
  double max_residual = 0.0;    ///< max |Q - target| outside the transition band

  double operator()(double x) const noexcept;

  bool passband_empty() const noexcept { return threshold + softness >= 1.0; }

  /// Wraps raw coefficients; gamma is certified on `certify_points`.
  static SuppressionPolynomial from_coefficients(std::vector<double> coefficients,
                                                 PolynomialBasis basis,
                                                 std::size_t certify_points = 20001);
};

/// Clenshaw recurrence for sum_m c_m T_m(x).
double chebyshev_clenshaw(std::span<const double> coefficients, double x) noexcept;
/// Horner scheme for sum_m c_m x^m.
double horner(std::span<const double> coefficients, double x) noexcept;

/// max |Q(x)| on [-1, 1]: `points` uniform grid samples, each local peak refined.
double grid_max_abs(const SuppressionPolynomial& q, std::size_t points);

/// Requires 0 < theta <= 1, degree >= 2 and softness > 0 (ContractViolation
/// otherwise). Throws ApproximationError when the pass band is non-empty and
/// its smallest |Q| does not exceed the stop-band leak.
SuppressionPolynomial build_suppressor(double theta, std::size_t degree, double softness,
                                       const SuppressorOptions& options = {});

struct TransformResult {
  std::vector<double> transformed;
  double success_weight = 0.0;
  /// Empty when converged.
  std::vector<double> resample_distribution;
  /// success_weight fell to or below the floor: nothing survives suppression.
  bool converged = false;
  double floor = 0.0;
};

/// transformed[j] = Q(amps[j]). Convergence floor = relative_floor * sum_j amps[j]^2.
TransformResult apply_transform(const AmplitudeVector& av, const SuppressionPolynomial& q,
                                double relative_floor = 1e-12);

struct QueryCost {
  double per_iteration = 0.0;
  std::size_t degree = 0;
  double gamma = 0.0;
  std::size_t total_qubits = 0;
  double success_weight = 0.0;
};

/// degree * gamma * sqrt(2^M / success_weight), big-O constant 1.
/// Throws DomainError when success_weight <= 0.
QueryCost query_cost(std::size_t degree, double gamma, std::size_t total_qubits,
                     double success_weight);

}  // namespace fqc
