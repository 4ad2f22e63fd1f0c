#pragma once

// Dense complex linear algebra shared by every gbound module.

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gbound {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

/// Default tolerance for structural predicates (normal, unitary, projector,
/// rescaling membership).
inline constexpr double kDefaultTol = 1e-9;

/// Bad input: wrong shape, constraint violation, malformed file.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A decomposition or identity check failed numerically.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A permutation of {0, ..., d-1}, stored as the image of each index.
class PermSpec {
 public:
  explicit PermSpec(std::vector<int> map);

  static PermSpec identity(int d);

  int size() const { return static_cast<int>(map_.size()); }
  int operator()(int i) const { return map_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& map() const { return map_; }

 private:
  std::vector<int> map_;
};

struct MatrixFlags {
  bool normal = false;
  bool unitary = false;
  bool projector = false;
};

void require_square(const CMat& m, const char* what);
void require_finite(const CMat& m, const char* what);
void require_same_shape(const CMat& a, const CMat& b, const char* what);

double frobenius_norm(const CMat& m);

/// Tr(MK) for square matrices of equal size.
cplx trace_product(const CMat& m, const CMat& k);

/// F_rs = w^{rs} / sqrt(d), w = exp(2 pi i / d).
CMat fourier_matrix(int d);

/// [M(p)]_ij = delta(i, p(j)).
CMat permutation_matrix(const PermSpec& p);

/// M(p)^dagger theta M(p); entry (i, j) is theta(p(i), p(j)).
CMat permute_conjugate(const CMat& theta, const PermSpec& p);

/// The normalised vector of ones |J> and the matrix of ones J_d = d |J><J|.
struct OnesObjects {
  CVec ket;
  CMat matrix;
};
OnesObjects ones_objects(int d);

double max_singular_value(const CMat& m);

/// Largest eigenvalue modulus (e_max). Meaningful mainly for normal matrices.
double max_abs_eigenvalue(const CMat& m);

MatrixFlags matrix_flags(const CMat& m, double tol = kDefaultTol);

}  // namespace gbound
