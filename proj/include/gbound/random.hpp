#pragma once

// Seeded samplers for the randomized checks and the S_d sampler.

#include <cstdint>
#include <random>

#include "gbound/core.hpp"

namespace gbound {

using Rng = std::mt19937_64;

/// Independent stream for (seed, stream) - used to give each restart or
/// sampling shard its own generator so results do not depend on scheduling.
Rng make_stream(std::uint64_t seed, std::uint64_t stream);

cplx random_gaussian(Rng& rng);
cplx random_phase(Rng& rng);

CMat random_complex_matrix(int rows, int cols, Rng& rng);

/// Haar-distributed unitary (QR of a Gaussian matrix with the R-diagonal
/// phases divided out).
CMat random_unitary(int d, Rng& rng);

/// A vector uniform in the complex unit ball of C^d.
CVec random_unit_ball_vector(int d, Rng& rng);

/// A matrix in S_d: every row uniform in the unit ball.
CMat random_rescaling(int d, Rng& rng);

/// U diag(ev) U^dagger with Haar U and Gaussian eigenvalues.
CMat random_normal_matrix(int d, Rng& rng);

}  // namespace gbound
