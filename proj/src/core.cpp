#include "gbound/core.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace gbound {

namespace {

std::string shape_of(const CMat& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

}  // namespace

PermSpec::PermSpec(std::vector<int> map) : map_(std::move(map)) {
  if (map_.empty()) throw ValidationError("permutation: empty map");
  std::vector<bool> seen(map_.size(), false);
  for (int v : map_) {
    if (v < 0 || static_cast<std::size_t>(v) >= map_.size() || seen[static_cast<std::size_t>(v)])
      throw ValidationError("permutation: map is not a bijection on {0..d-1}");
    seen[static_cast<std::size_t>(v)] = true;
  }
}

PermSpec PermSpec::identity(int d) {
  std::vector<int> map(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) map[static_cast<std::size_t>(i)] = i;
  return PermSpec(std::move(map));
}

void require_square(const CMat& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols())
    throw ValidationError(std::string(what) + ": expected a nonempty square matrix, got " + shape_of(m));
}

void require_finite(const CMat& m, const char* what) {
  if (!m.allFinite()) throw ValidationError(std::string(what) + ": non-finite entry");
}

void require_same_shape(const CMat& a, const CMat& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ValidationError(std::string(what) + ": dimension mismatch " + shape_of(a) + " vs " + shape_of(b));
}

double frobenius_norm(const CMat& m) { return m.norm(); }

cplx trace_product(const CMat& m, const CMat& k) {
  require_square(m, "trace_product");
  require_same_shape(m, k, "trace_product");
  // Tr(MK) = sum_rs M_rs K_sr, without forming the product.
  return (m.array() * k.transpose().array()).sum();
}

CMat fourier_matrix(int d) {
  if (d < 1) throw ValidationError("fourier_matrix: d must be >= 1");
  CMat f(d, d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (int r = 0; r < d; ++r) {
    for (int s = 0; s < d; ++s) {
      // reduce rs mod d first so the angle stays small
      const long long k = (static_cast<long long>(r) * s) % d;
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / d;
      f(r, s) = std::polar(scale, angle);
    }
  }
  return f;
}

CMat permutation_matrix(const PermSpec& p) {
  const int d = p.size();
  CMat m = CMat::Zero(d, d);
  for (int j = 0; j < d; ++j) m(p(j), j) = 1.0;
  return m;
}

CMat permute_conjugate(const CMat& theta, const PermSpec& p) {
  require_square(theta, "permute_conjugate");
  if (theta.rows() != p.size()) throw ValidationError("permute_conjugate: permutation size does not match matrix");
  const int d = p.size();
  CMat out(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out(i, j) = theta(p(i), p(j));
  return out;
}

OnesObjects ones_objects(int d) {
  if (d < 1) throw ValidationError("ones_objects: d must be >= 1");
  return {CVec::Constant(d, 1.0 / std::sqrt(static_cast<double>(d))), CMat::Ones(d, d)};
}

double max_singular_value(const CMat& m) {
  require_finite(m, "max_singular_value");
  if (m.size() == 0) throw ValidationError("max_singular_value: empty matrix");
  // Jacobi SVD works on the matrix directly (no M^dagger M squaring).
  Eigen::JacobiSVD<CMat> svd(m);
  const auto& sv = svd.singularValues();
  if (!sv.allFinite()) throw NumericalError("max_singular_value: SVD produced non-finite singular values");
  return sv(0);
}

double max_abs_eigenvalue(const CMat& m) {
  require_square(m, "max_abs_eigenvalue");
  require_finite(m, "max_abs_eigenvalue");
  Eigen::ComplexEigenSolver<CMat> es(m, false);
  if (es.info() != Eigen::Success) throw NumericalError("max_abs_eigenvalue: eigen decomposition did not converge");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

MatrixFlags matrix_flags(const CMat& m, double tol) {
  require_square(m, "matrix_flags");
  const CMat mh = m.adjoint();
  const CMat mmh = m * mh;
  MatrixFlags f;
  f.normal = (mmh - mh * m).norm() <= tol;
  f.unitary = (mmh - CMat::Identity(m.rows(), m.cols())).norm() <= tol;
  f.projector = (m * m - m).norm() <= tol && (m - mh).norm() <= tol;
  return f;
}

}  // namespace gbound
