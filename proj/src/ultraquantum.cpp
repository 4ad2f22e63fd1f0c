#include "gbound/ultraquantum.hpp"

#include <cmath>

namespace gbound {

namespace {

void check_unit(cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(std::abs(z) - 1.0) > 1e-12)
    throw ValidationError("z must have unit modulus");
}

}  // namespace

cplx unit_phase(double phi) {
  if (!std::isfinite(phi)) throw ValidationError("phase must be finite");
  return std::polar(1.0, phi);
}

SemiUnitary build_M(cplx z) {
  check_unit(z);
  CMat m(3, 6);
  // clang-format off
  m << 1.0, z,   0.0, 1.0, -z,  0.0,
       z,   0.0, 1.0, -z,  0.0, 1.0,
       0.0, 1.0, z,   0.0, 1.0, -z;
  // clang-format on
  m *= 0.5;
  if ((m * m.adjoint() - CMat::Identity(3, 3)).norm() > 1e-12) throw NumericalError("build_M: M M^+ != 1_3");
  const CMat pi = m.adjoint() * m;
  if (!matrix_flags(pi, 1e-10).projector) throw NumericalError("build_M: M^+ M is not a projector");
  return {z, m};
}

CMat build_Pi(cplx z) {
  const SemiUnitary su = build_M(z);
  return su.M.adjoint() * su.M;
}

ComplementarityReport verify_complementarity(cplx z, double tol) {
  check_unit(z);
  const CMat mz = build_M(z).M;
  const CMat mmz = build_M(-z).M;
  const CMat pz = mz.adjoint() * mz;
  const CMat pmz = mmz.adjoint() * mmz;
  const CMat w = mmz.adjoint() * mz;

  ComplementarityReport r;
  r.z = z;
  r.tol = tol;
  r.semi_unitary = (mz * mz.adjoint() - CMat::Identity(3, 3)).norm();
  r.completeness = (pz + pmz - CMat::Identity(6, 6)).norm();
  r.orthogonality = (pmz * pz).norm();
  r.cross = (mmz * mz.adjoint()).norm();
  r.transfer = (w.adjoint() * pmz * w - pz).norm();
  r.ok = r.semi_unitary <= tol && r.completeness <= tol && r.orthogonality <= tol && r.cross <= tol &&
         r.transfer <= tol;
  return r;
}

double ultra_Q(double xi, cplx z) {
  if (!(xi > 0.0)) throw ValidationError("ultra_Q: xi must be positive");
  const CMat pi = build_Pi(z);
  const CMat v = std::sqrt(2.0) * pi;
  const double q = quantum_form(xi * pi, v, v);
  if (std::abs(q - 6.0 * xi) > 1e-12 * std::max(1.0, xi)) throw NumericalError("ultra_Q: value differs from 6 xi");
  return q;
}

UltraReport ultra_window(cplx z, const UltraOptions& opts) {
  const CMat pi = build_Pi(z);
  const AscentResult asc = g_ascent(pi, opts.ascent);

  UltraReport r;
  r.z = z;
  r.g_pi_est = asc.best.value;
  r.g_prime = g_prime(pi);
  r.xi_window = {1.0 / 6.0, 1.0 / r.g_pi_est};
  r.q_range = {1.0, 6.0 / r.g_pi_est};
  r.xi_L = opts.xi.value_or(r.xi_window.hi);
  if (!(r.xi_L > 0.0)) throw ValidationError("ultra_window: xi must be positive");
  r.Q_value = ultra_Q(r.xi_L, z);
  r.xi_in_window = r.xi_L > r.xi_window.lo && r.xi_L <= r.xi_window.hi;
  r.optimizer = {opts.ascent.restarts, opts.ascent.max_iters, opts.ascent.seed, asc.converged_restarts};
  if (r.g_pi_est > 6.0 + 1e-9) throw NumericalError("ultra_window: ascent value exceeds g' = 6");
  return r;
}

}  // namespace gbound
