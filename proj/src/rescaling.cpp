#include "gbound/rescaling.hpp"

#include <cmath>
#include <limits>

namespace gbound {

namespace {

constexpr double kUnitDiscSlack = 1e-12;
constexpr double kNormalisedTol = 1e-10;

}  // namespace

DequantSpec::DequantSpec(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw ValidationError("dequantisation: no coefficients");
  for (const cplx& a : coeffs_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw ValidationError("dequantisation: non-finite coefficient");
    if (std::abs(a) > 1.0 + kUnitDiscSlack) throw ValidationError("dequantisation: coefficient outside the unit disc");
  }
}

double capacity(const CMat& v) {
  require_square(v, "capacity");
  return v.rowwise().norm().maxCoeff();
}

RescalingCert certify(const CMat& v, double tol) {
  require_square(v, "certify");
  require_finite(v, "certify");
  RescalingCert cert;
  cert.matrix = v;
  cert.tol = tol;
  cert.capacity = capacity(v);
  cert.in_S = cert.capacity <= 1.0 + tol;

  const double sqrt_d = std::sqrt(static_cast<double>(v.rows()));
  bool constant_rows = true;
  for (Eigen::Index r = 0; r < v.rows() && constant_rows; ++r) {
    const cplx head = v(r, 0);
    double deviation = 0.0;
    for (Eigen::Index s = 1; s < v.cols(); ++s) deviation = std::max(deviation, std::abs(v(r, s) - head));
    constant_rows = deviation <= tol && std::abs(head) * sqrt_d <= 1.0 + tol;
  }
  cert.in_T = constant_rows && cert.in_S;
  return cert;
}

RescalingCert star_product(const CMat& r, const CMat& v, double tol) {
  require_same_shape(r, v, "star_product");
  if (!certify(r, tol).in_S) throw ValidationError("star_product: left factor is not a rescaling matrix");
  if (!certify(v, tol).in_S) throw ValidationError("star_product: right factor is not a rescaling matrix");
  return certify(r * v / std::sqrt(static_cast<double>(r.rows())), tol);
}

std::pair<double, RescalingCert> scale_into_S(const CMat& v) {
  const double cap = capacity(v);
  if (cap == 0.0) return {std::numeric_limits<double>::infinity(), certify(v)};
  const double lambda = 1.0 / cap;
  return {lambda, certify(lambda * v)};
}

CMat build_dequantisation(const DequantSpec& spec) {
  const int d = spec.dim();
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
  CMat a(d, d);
  for (int r = 0; r < d; ++r) a.row(r).setConstant(spec.coeffs()[static_cast<std::size_t>(r)] * inv_sqrt_d);
  return a;
}

std::vector<cplx> dequantisation_coeffs(const CMat& a, double tol) {
  if (!certify(a, tol).in_T) throw ValidationError("dequantisation: matrix is not in T_d");
  const double sqrt_d = std::sqrt(static_cast<double>(a.rows()));
  std::vector<cplx> coeffs(static_cast<std::size_t>(a.rows()));
  for (Eigen::Index r = 0; r < a.rows(); ++r) coeffs[static_cast<std::size_t>(r)] = a(r, 0) * sqrt_d;
  return coeffs;
}

Dequantised dequantise_vector(const CMat& a, const CVec& f, double tol) {
  const auto coeffs = dequantisation_coeffs(a, tol);
  if (f.size() != a.rows()) throw ValidationError("dequantise_vector: vector length does not match matrix");
  if (std::abs(f.norm() - 1.0) > kNormalisedTol) throw ValidationError("dequantise_vector: vector is not normalised");

  Dequantised out{};
  for (Eigen::Index r = 0; r < f.size(); ++r) out.lambda += std::conj(coeffs[static_cast<std::size_t>(r)]) * f(r);
  const CVec image = a.adjoint() * f;
  out.residual = (image - out.lambda * ones_objects(static_cast<int>(f.size())).ket).norm();
  return out;
}

Dequantised dequantise_matrix(const CMat& a1, const CMat& theta, const CMat& a2, double tol) {
  require_same_shape(a1, theta, "dequantise_matrix");
  require_same_shape(a2, theta, "dequantise_matrix");
  // a1 = A(conj a): its coefficients are conj(a_r)
  const auto conj_a = dequantisation_coeffs(a1, tol);
  const auto b = dequantisation_coeffs(a2, tol);
  const Eigen::Index d = theta.rows();

  Dequantised out{};
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index s = 0; s < d; ++s)
      out.lambda += std::conj(conj_a[static_cast<std::size_t>(r)]) * theta(r, s) * b[static_cast<std::size_t>(s)];

  const CMat product = a1.adjoint() * theta * a2;
  out.residual = (product - CMat::Constant(d, d, out.lambda / static_cast<double>(d))).norm();
  return out;
}

RescalingCert rescaling_from_rows(std::span<const double> scales, std::span<const CVec> units) {
  if (scales.empty() || scales.size() != units.size())
    throw ValidationError("rescaling_from_rows: need one scale per unit vector");
  const auto d = static_cast<Eigen::Index>(scales.size());
  CMat v(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    const double scale = scales[static_cast<std::size_t>(r)];
    const CVec& unit = units[static_cast<std::size_t>(r)];
    if (!(scale >= 0.0 && scale <= 1.0)) throw ValidationError("rescaling_from_rows: scale outside [0, 1]");
    if (unit.size() != d) throw ValidationError("rescaling_from_rows: row vector has wrong length");
    if (std::abs(unit.norm() - 1.0) > kNormalisedTol) throw ValidationError("rescaling_from_rows: row vector is not normalised");
    v.row(r) = scale * unit.transpose();
  }
  return certify(v);
}

}  // namespace gbound
