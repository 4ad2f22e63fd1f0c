#pragma once

// Rescaling matrices S_d (max row norm <= 1), the dequantisation subset T_d
// (constant rows a_r / sqrt(d)) and the maps they induce onto scalars.

#include <span>
#include <utility>
#include <vector>

#include "gbound/core.hpp"

namespace gbound {

struct RescalingCert {
  CMat matrix;
  double capacity = 0.0;
  double tol = kDefaultTol;
  bool in_S = false;
  bool in_T = false;
};

/// Coefficients a_i of a dequantisation matrix; each |a_i| <= 1.
class DequantSpec {
 public:
  explicit DequantSpec(std::vector<cplx> coeffs);

  int dim() const { return static_cast<int>(coeffs_.size()); }
  const std::vector<cplx>& coeffs() const { return coeffs_; }

 private:
  std::vector<cplx> coeffs_;
};

/// N(V): the largest row norm.
double capacity(const CMat& v);

RescalingCert certify(const CMat& v, double tol = kDefaultTol);

/// R * V / sqrt(d). Both factors must be in S_d.
RescalingCert star_product(const CMat& r, const CMat& v, double tol = kDefaultTol);

/// Largest lambda with lambda*V in S_d, and the certificate of lambda*V.
/// A zero matrix yields lambda = +infinity and the zero certificate.
std::pair<double, RescalingCert> scale_into_S(const CMat& v);

/// A_rs = a_r / sqrt(d).
CMat build_dequantisation(const DequantSpec& spec);

/// Row coefficients a_r of a matrix in T_d (A_r0 * sqrt(d)).
std::vector<cplx> dequantisation_coeffs(const CMat& a, double tol = kDefaultTol);

struct Dequantised {
  cplx lambda;
  double residual = 0.0;
};

/// A^dagger f = lambda |J>; lambda = sum_r conj(a_r) f_r.
Dequantised dequantise_vector(const CMat& a, const CVec& f, double tol = kDefaultTol);

/// A1^dagger theta A2 = (lambda / d) J_d with A1 = A(conj a), A2 = A(b);
/// lambda = sum_rs a_r theta_rs b_s.
Dequantised dequantise_matrix(const CMat& a1, const CMat& theta, const CMat& a2, double tol = kDefaultTol);

/// Row r is scales[r] * units[r].
RescalingCert rescaling_from_rows(std::span<const double> scales, std::span<const CVec> units);

}  // namespace gbound
