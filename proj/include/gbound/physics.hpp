#pragma once

// Square-barrier tunnelling (hbar = 1), the rescaling matrix and projector
// blocks it induces, the 2x2 "exDC" matrix built from the reflection
// amplitude, and the damped/amplified oscillator factors.

#include <cstdint>

#include "gbound/core.hpp"
#include "gbound/forms.hpp"

namespace gbound {

/// Particle of mass m and momentum k hitting a barrier of height V0 and
/// width a. Requires E = k^2 / 2m < V0.
struct BarrierParams {
  double m = 1.0;
  double k = 1.0;
  double V0 = 1.0;
  double a = 1.0;

  double energy() const { return k * k / (2.0 * m); }
  void validate() const;
};

struct ScatterAmps {
  cplx B;      // reflection
  cplx C;      // transmission
  cplx kappa;  // i sqrt(2 m V0 - k^2)
};

struct TunnelStates {
  CVec u_L;
  CVec u_R;
  CMat W;
};

struct TunnelBlocks {
  double xi_L = 0.0;
  double xi_R = 0.0;
  CMat varpi_L;
  CMat varpi_R;
  CMat Pi_L;
  CMat Pi_R;
  CMat Wcal;
  // residuals of the structural identities
  double orthogonality_residual = 0.0;  // |Pi_L Pi_R|
  double transfer_residual = 0.0;       // |xi_L Wcal Pi_L Wcal^+ - xi_R Pi_R|
};

struct Interval {
  double lo = 0.0;  // open
  double hi = 0.0;  // closed
  bool empty() const { return !(lo < hi); }
  double length() const { return empty() ? 0.0 : hi - lo; }
};

struct ExdcReport {
  double B = 0.0;
  double m_over_k = 1.0;
  CMat theta;
  double g = 0.0;        // (m/k)(1+B)^2
  double g_prime = 0.0;  // (2m/k)(1+B^2)
  double g_grid = 0.0;   // numerical cross-check
  double g_prime_numeric = 0.0;
  Interval window;
};

struct DampingParams {
  double omega = 1.0;
  double gamma = 0.0;

  double epsilon() const;
  void validate() const;
};

enum class DampingBranch { damped, amplified };

ScatterAmps scattering_amplitudes(const BarrierParams& p);

/// u_L = sqrt(m/k) (1, B), u_R = sqrt(m/k) (C, 0), W = diag(C, 0).
TunnelStates tunnel_states(const ScatterAmps& amps, double m_over_k);
TunnelStates tunnel_states(const BarrierParams& p);

TunnelBlocks tunnel_blocks(const ScatterAmps& amps, double m_over_k);
TunnelBlocks tunnel_blocks(const BarrierParams& p);

/// (m/k) [[1, B], [B, B^2]].
CMat exdc_theta(double b, double m_over_k = 1.0);

/// Closed forms for g, g' and the window (1/g', 1/g], cross-checked against
/// the grid optimizer; throws NumericalError if they disagree beyond 1e-6.
ExdcReport exdc_report(double b, double m_over_k = 1.0);

/// max |Tr(lambda theta V W^+)| over n pairs (V, W) sampled from S_2.
double exdc_Q_bound_sample(double b, double lambda, long long n, std::uint64_t seed, double m_over_k = 1.0);
double exdc_Q_bound_sample_serial(double b, double lambda, long long n, std::uint64_t seed, double m_over_k = 1.0);

/// exp(i eps t) exp(-+ gamma t / 2).
cplx damping_factor(const DampingParams& p, double t, DampingBranch branch);

}  // namespace gbound
