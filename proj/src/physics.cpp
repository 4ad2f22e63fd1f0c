#include "gbound/physics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gbound/random.hpp"

namespace gbound {

namespace {

constexpr double kFluxTol = 1e-10;
constexpr double kDegenerateDenominator = 1e-14;
// fixed shard count keeps the sampler independent of the thread count
constexpr long long kSampleShards = 64;

void check_m_over_k(double m_over_k) {
  if (!(m_over_k > 0.0) || !std::isfinite(m_over_k)) throw ValidationError("m/k must be positive and finite");
}

Interval exdc_window(double b, double m_over_k) {
  return {1.0 / (2.0 * m_over_k * (1.0 + b * b)), 1.0 / (m_over_k * (1.0 + b) * (1.0 + b))};
}

void check_exdc_b(double b) {
  if (!(b > 0.0 && b <= 1.0)) throw ValidationError("exDC: B must lie in (0, 1]");
}

double sample_shard(const CMat& lambda_theta, long long begin, long long end, std::uint64_t seed, long long shard) {
  Rng rng = make_stream(seed, static_cast<std::uint64_t>(shard));
  double best = 0.0;
  for (long long i = begin; i < end; ++i) {
    const CMat v = random_rescaling(2, rng);
    const CMat w = random_rescaling(2, rng);
    best = std::max(best, std::abs(trace_product(lambda_theta, v * w.adjoint())));
  }
  return best;
}

void check_sample_args(double b, double lambda, long long n, double m_over_k) {
  check_exdc_b(b);
  check_m_over_k(m_over_k);
  if (n < 1) throw ValidationError("exdc_Q_bound_sample: n must be >= 1");
  const Interval w = exdc_window(b, m_over_k);
  if (!(lambda > w.lo && lambda <= w.hi * (1.0 + 1e-12)))
    throw ValidationError("exdc_Q_bound_sample: lambda outside the exDC window");
}

}  // namespace

void BarrierParams::validate() const {
  for (double x : {m, k, V0, a})
    if (!(x > 0.0) || !std::isfinite(x)) throw ValidationError("barrier: m, k, V0, a must be positive and finite");
  if (!(energy() < V0)) throw ValidationError("barrier: energy k^2/2m must be below V0");
}

double DampingParams::epsilon() const { return std::sqrt(omega * omega - gamma * gamma / 4.0); }

void DampingParams::validate() const {
  if (!(omega > 0.0) || !(gamma >= 0.0)) throw ValidationError("damping: need omega > 0 and gamma >= 0");
  if (!(omega > gamma / 2.0)) throw ValidationError("damping: only under-critical damping (omega > gamma/2) is supported");
}

ScatterAmps scattering_amplitudes(const BarrierParams& p) {
  p.validate();
  const cplx i(0.0, 1.0);
  const cplx lam = i * std::sqrt(2.0 * p.m * p.V0 - p.k * p.k);
  const cplx phase = std::exp(2.0 * i * lam * p.a);
  const cplx den = (p.k + lam) * (p.k + lam) - (p.k - lam) * (p.k - lam) * phase;
  if (std::abs(den) < kDegenerateDenominator) throw NumericalError("scattering_amplitudes: degenerate denominator");

  ScatterAmps out;
  out.kappa = lam;
  out.B = (p.k * p.k - lam * lam) * (1.0 - phase) / den;
  out.C = 4.0 * p.k * lam * std::exp(i * (lam - p.k) * p.a) / den;
  const double flux = std::norm(out.B) + std::norm(out.C);
  if (std::abs(flux - 1.0) > kFluxTol) throw NumericalError("scattering_amplitudes: |B|^2 + |C|^2 deviates from 1");
  return out;
}

TunnelStates tunnel_states(const ScatterAmps& amps, double m_over_k) {
  check_m_over_k(m_over_k);
  const double amp = std::sqrt(m_over_k);
  TunnelStates s;
  s.u_L = CVec(2);
  s.u_L << amp, amp * amps.B;
  s.u_R = CVec(2);
  s.u_R << amp * amps.C, 0.0;
  s.W = CMat::Zero(2, 2);
  s.W(0, 0) = amps.C;
  if ((s.W * s.u_L - s.u_R).norm() > 1e-12 * std::max(1.0, amp))
    throw NumericalError("tunnel_states: u_R != W u_L");
  return s;
}

TunnelStates tunnel_states(const BarrierParams& p) { return tunnel_states(scattering_amplitudes(p), p.m / p.k); }

TunnelBlocks tunnel_blocks(const ScatterAmps& amps, double m_over_k) {
  const TunnelStates st = tunnel_states(amps, m_over_k);
  const double b2 = std::norm(amps.B);

  TunnelBlocks t;
  t.xi_L = m_over_k * (1.0 + b2);
  t.xi_R = m_over_k * std::norm(amps.C);
  t.varpi_L = CMat(2, 2);
  t.varpi_L << 1.0, std::conj(amps.B), amps.B, b2;
  t.varpi_L /= (1.0 + b2);
  t.varpi_R = CMat::Zero(2, 2);
  t.varpi_R(0, 0) = 1.0;

  t.Pi_L = CMat::Zero(4, 4);
  t.Pi_L.topLeftCorner(2, 2) = t.varpi_L;
  t.Pi_R = CMat::Zero(4, 4);
  t.Pi_R.bottomRightCorner(2, 2) = t.varpi_R;
  t.Wcal = CMat::Zero(4, 4);
  t.Wcal.bottomLeftCorner(2, 2) = st.W;

  t.orthogonality_residual = (t.Pi_L * t.Pi_R).norm();
  t.transfer_residual = (t.xi_L * t.Wcal * t.Pi_L * t.Wcal.adjoint() - t.xi_R * t.Pi_R).norm();

  const double scale = std::max(1.0, m_over_k);
  if (!matrix_flags(t.varpi_L, 1e-10).projector || !matrix_flags(t.varpi_R, 1e-10).projector)
    throw NumericalError("tunnel_blocks: block is not a projector");
  if (t.orthogonality_residual > 1e-12) throw NumericalError("tunnel_blocks: Pi_L Pi_R != 0");
  if (t.transfer_residual > 1e-10 * scale) throw NumericalError("tunnel_blocks: xi_L W Pi_L W^+ != xi_R Pi_R");
  return t;
}

TunnelBlocks tunnel_blocks(const BarrierParams& p) { return tunnel_blocks(scattering_amplitudes(p), p.m / p.k); }

CMat exdc_theta(double b, double m_over_k) {
  check_exdc_b(b);
  check_m_over_k(m_over_k);
  CMat theta(2, 2);
  theta << 1.0, b, b, b * b;
  return m_over_k * theta;
}

ExdcReport exdc_report(double b, double m_over_k) {
  ExdcReport r;
  r.B = b;
  r.m_over_k = m_over_k;
  r.theta = exdc_theta(b, m_over_k);
  r.g = m_over_k * (1.0 + b) * (1.0 + b);
  r.g_prime = 2.0 * m_over_k * (1.0 + b * b);
  r.window = exdc_window(b, m_over_k);
  r.g_grid = g_grid(r.theta, default_grid_k(2)).value;
  r.g_prime_numeric = g_prime(r.theta);
  if (std::abs(r.g_grid - r.g) > 1e-6 * std::max(1.0, r.g))
    throw NumericalError("exdc_report: grid optimizer disagrees with the closed form for g");
  return r;
}

double exdc_Q_bound_sample(double b, double lambda, long long n, std::uint64_t seed, double m_over_k) {
  check_sample_args(b, lambda, n, m_over_k);
  const CMat lt = lambda * exdc_theta(b, m_over_k);
  std::vector<double> shard_max(static_cast<std::size_t>(kSampleShards), 0.0);
#pragma omp parallel for schedule(static)
  for (long long s = 0; s < kSampleShards; ++s)
    shard_max[static_cast<std::size_t>(s)] =
        sample_shard(lt, n * s / kSampleShards, n * (s + 1) / kSampleShards, seed, s);
  return *std::max_element(shard_max.begin(), shard_max.end());
}

double exdc_Q_bound_sample_serial(double b, double lambda, long long n, std::uint64_t seed, double m_over_k) {
  check_sample_args(b, lambda, n, m_over_k);
  const CMat lt = lambda * exdc_theta(b, m_over_k);
  double best = 0.0;
  for (long long s = 0; s < kSampleShards; ++s)
    best = std::max(best, sample_shard(lt, n * s / kSampleShards, n * (s + 1) / kSampleShards, seed, s));
  return best;
}

cplx damping_factor(const DampingParams& p, double t, DampingBranch branch) {
  p.validate();
  const double sign = branch == DampingBranch::damped ? -1.0 : 1.0;
  return std::polar(std::exp(sign * p.gamma * t / 2.0), p.epsilon() * t);
}

}  // namespace gbound
