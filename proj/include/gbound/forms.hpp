#pragma once

// Classical form C(theta) = |sum theta_rs a_r b_s| with unit-disc scalars,
// quantum form Q(theta) = |Tr(theta V W^dagger)| with V, W in S_d, the
// suprema g(theta) and g'(theta) = d * s_max, and the set classification
// G'_d, G_d \ G'_d derived from them.

#include <optional>
#include <span>
#include <string>

#include "gbound/core.hpp"
#include "gbound/kernels.hpp"

namespace gbound {

/// Published upper bound on the complex Grothendieck constant.
struct KGConstant {
  static constexpr double upper = 1.4049;
};

enum class GEstimateKind {
  closed_form,                // exact value from a recognised structure
  grid_refined_exact_target,  // exhaustive grid + ascent refinement (d <= 3)
  ascent_lower_bound,         // multistart ascent only: a lower bound on g
};

enum class Membership { in_G_prime, in_G_minus_G_prime, outside_G, unknown };

std::string to_string(GEstimateKind kind);
std::string to_string(Membership m);

struct OptimizerInfo {
  int restarts = 0;
  int max_iters = 0;
  std::uint64_t seed = 0;
  int converged_restarts = 0;
};

struct Classification {
  double lambda = 0.0;
  Membership verdict = Membership::unknown;
};

struct GrothendieckReport {
  int d = 0;
  double g_est = 0.0;
  GEstimateKind g_est_kind = GEstimateKind::ascent_lower_bound;
  double g_prime = 0.0;
  double s_max = 0.0;
  PhaseAssignment witness;
  double window_lo = 0.0;  // open end: 1 / (d s_max)
  double window_hi = 0.0;  // closed end: 1 / g_est
  std::optional<Classification> classification;
  OptimizerInfo optimizer;

  bool window_empty() const { return !(window_lo < window_hi); }
};

struct AnalyzeOptions {
  AscentOptions ascent;
  double tol = kDefaultTol;
  std::optional<double> lambda;
  /// Grid resolution; 0 selects the default (16 for d = 2, 8 for d = 3).
  int grid_k = 0;
};

struct ClosedFormG {
  double value = 0.0;
  std::string rule;  // "diagonal", "exdc", "rank_one"
  PhaseAssignment witness;
};

double classical_form(const CMat& theta, std::span<const cplx> a, std::span<const cplx> b);

/// Throws ValidationError unless V and W are in S_d.
double quantum_form(const CMat& theta, const CMat& v, const CMat& w, double tol = kDefaultTol);

struct QuantumFormDiagnostic {
  double value = 0.0;
  bool v_in_S = false;
  bool w_in_S = false;
  bool membership_violated() const { return !(v_in_S && w_in_S); }
};

/// Warn-and-proceed variant: evaluates Q regardless of membership and flags it.
QuantumFormDiagnostic quantum_form_diagnostic(const CMat& theta, const CMat& v, const CMat& w,
                                              double tol = kDefaultTol);

double g_prime(const CMat& theta);

/// Multistart alternating ascent; a certified lower bound on g(theta).
AscentResult g_ascent(const CMat& theta, const AscentOptions& opts = {});

int default_grid_k(int d);

struct GridResult {
  double value = 0.0;
  double grid_value = 0.0;  // best value on the grid before refinement
  PhaseAssignment witness;
};

/// Exhaustive grid over the torus (d <= 3) refined by one ascent run.
GridResult g_grid(const CMat& theta, int k, int max_iters = 500);

std::optional<ClosedFormG> closed_form_g(const CMat& theta);

GrothendieckReport analyze(const CMat& theta, const AnalyzeOptions& opts = {});

/// Membership of lambda*theta given the quantities in `report`.
Membership classify(const GrothendieckReport& report, double lambda, double tol = kDefaultTol);

/// |Tr((theta / g) (V / N(V)) (W / N(W))^dagger)|.
double normalized_Q(const CMat& theta, const CMat& v, const CMat& w, double g_value);

struct NecessaryConditionReport {
  double lambda = 0.0;
  double e_max = 0.0;
  double g_est = 0.0;
  GEstimateKind g_est_kind = GEstimateKind::ascent_lower_bound;
  double window_lo = 0.0;
  double window_hi = 0.0;
  double q_value = 0.0;
  bool v_in_S = false;
  bool w_in_S = false;
  bool strict_gap_and_window = false;  // requirement 1
  bool off_diagonal_present = false;   // requirement 2
  bool proper_rescaling = false;       // requirement 3
  bool q_le_one_guaranteed = false;    // lambda <= 1/(d e_max)
  bool all_requirements_hold() const {
    return strict_gap_and_window && off_diagonal_present && proper_rescaling;
  }
  std::string verdict;
};

/// Necessary (not sufficient) conditions for Q(lambda theta) > 1. Requires a
/// normal theta.
NecessaryConditionReport necessary_condition_report(const CMat& theta, double lambda, const CMat& v,
                                                     const CMat& w, const AnalyzeOptions& opts = {});

/// Checks Q, g' and the capacities of V, W are unchanged by conjugating
/// everything with M(p).
bool permutation_invariance_check(const CMat& theta, const CMat& v, const CMat& w, const PermSpec& p,
                                  double tol = 1e-10);

}  // namespace gbound
