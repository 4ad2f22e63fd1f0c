#pragma once

// Optimizer kernels for g(theta) = sup |sum_rs theta_rs a_r b_s| over the
// unit polydisc. Each kernel has a serial reference and an OpenMP version;
// both must return bitwise-identical results for the same inputs.

#include <cstdint>
#include <vector>

#include "gbound/core.hpp"

namespace gbound {

/// Unit-disc coefficient vectors (a, b) and the form value they reach.
struct PhaseAssignment {
  CVec a;
  CVec b;
  double value = 0.0;
};

struct AscentOptions {
  int restarts = 64;
  int max_iters = 500;
  std::uint64_t seed = 42;
  double rel_tol = 1e-12;
};

struct AscentResult {
  PhaseAssignment best;
  int best_start = -1;  // index into the start list; 0 and 1 are deterministic
  int starts = 0;
  int converged_restarts = 0;
};

struct AscentRun {
  PhaseAssignment result;
  int iterations = 0;
  bool converged = false;
};

struct GridPoint {
  double value = 0.0;
  std::vector<int> a_index;  // a_index[0] is always 0 (global phase fixed)
  std::vector<int> b_index;
};

namespace kernels {

/// |a^T theta b|.
double form_value(const CMat& theta, const CVec& a, const CVec& b);

/// Alternating phase ascent from (a, b). When `trace` is non-null the
/// objective after every half-step is appended to it.
AscentRun ascend(const CMat& theta, CVec a, CVec b, int max_iters, double rel_tol,
                 std::vector<double>* trace = nullptr);

/// Start `index` of the multistart schedule: 0 = all ones, 1 = conjugate
/// phases of the row and column sums, >= 2 seeded random phases.
std::pair<CVec, CVec> start_point(const CMat& theta, int index, std::uint64_t seed);

AscentResult ascent_serial(const CMat& theta, const AscentOptions& opts);
AscentResult ascent_parallel(const CMat& theta, const AscentOptions& opts);

/// Exhaustive search with a_r, b_s in {exp(2 pi i k / K)} (a_0 = 1).
GridPoint grid_serial(const CMat& theta, int k);
GridPoint grid_parallel(const CMat& theta, int k);

int max_threads();

}  // namespace kernels
}  // namespace gbound
