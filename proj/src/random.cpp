#include "gbound/random.hpp"

#include <cmath>
#include <numbers>

namespace gbound {

Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

cplx random_gaussian(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

cplx random_phase(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  return std::polar(1.0, u(rng));
}

CMat random_complex_matrix(int rows, int cols, Rng& rng) {
  CMat m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = random_gaussian(rng);
  return m;
}

CMat random_unitary(int d, Rng& rng) {
  const CMat g = random_complex_matrix(d, d, rng);
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ();
  const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

CVec random_unit_ball_vector(int d, Rng& rng) {
  CVec v(d);
  for (int i = 0; i < d; ++i) v(i) = random_gaussian(rng);
  const double n = v.norm();
  // C^d is R^{2d}: radius u^{1/(2d)} gives the uniform ball measure
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double radius = std::pow(1.0 - u(rng), 1.0 / (2.0 * d));
  return n > 0.0 ? CVec(v * (radius / n)) : CVec(CVec::Zero(d));
}

CMat random_rescaling(int d, Rng& rng) {
  CMat v(d, d);
  for (int r = 0; r < d; ++r) v.row(r) = random_unit_ball_vector(d, rng).transpose();
  return v;
}

CMat random_normal_matrix(int d, Rng& rng) {
  const CMat u = random_unitary(d, rng);
  CVec ev(d);
  for (int i = 0; i < d; ++i) ev(i) = random_gaussian(rng);
  return u * ev.asDiagonal() * u.adjoint();
}

}  // namespace gbound
