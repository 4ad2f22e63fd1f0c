#pragma once

// The 3x6 semi-unitary M(z), the rank-3 projector Pi(z) = M(z)^+ M(z) on
// C^6, and the Q(xi Pi(z)) = 6 xi > 1 construction.

#include "gbound/core.hpp"
#include "gbound/forms.hpp"
#include "gbound/physics.hpp"

namespace gbound {

struct SemiUnitary {
  cplx z;
  CMat M;  // 3x6
};

struct ComplementarityReport {
  cplx z;
  double tol = 0.0;
  double semi_unitary = 0.0;   // |M M^+ - 1_3|
  double completeness = 0.0;   // |Pi(z) + Pi(-z) - 1_6|
  double orthogonality = 0.0;  // |Pi(-z) Pi(z)|
  double cross = 0.0;          // |M(-z) M(z)^+|
  double transfer = 0.0;       // |W^+ Pi(-z) W - Pi(z)|, W = M(-z)^+ M(z)
  bool ok = false;
};

struct UltraOptions {
  AscentOptions ascent{200, 500, 42, 1e-12};
  std::optional<double> xi;  // defaults to 1 / g_pi_est
};

struct UltraReport {
  cplx z;
  double g_pi_est = 0.0;   // ascent lower bound on g(Pi(z))
  double g_prime = 0.0;    // 6
  Interval xi_window;      // (1/6, 1/g_pi_est]
  Interval q_range;        // (1, 6/g_pi_est]
  double xi_L = 0.0;
  double Q_value = 0.0;    // 6 xi_L
  bool xi_in_window = false;
  OptimizerInfo optimizer;
};

cplx unit_phase(double phi);

SemiUnitary build_M(cplx z);
CMat build_Pi(cplx z);

ComplementarityReport verify_complementarity(cplx z, double tol = 1e-12);

/// |Tr(xi Pi (sqrt2 Pi)(sqrt2 Pi)^+)|; checked against 6 xi.
double ultra_Q(double xi, cplx z);

UltraReport ultra_window(cplx z, const UltraOptions& opts = {});

}  // namespace gbound
