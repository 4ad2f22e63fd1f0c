#include "gbound/forms.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "gbound/rescaling.hpp"

namespace gbound {

namespace {

constexpr double kUnitDiscSlack = 1e-12;
constexpr double kRankOneGap = 1e-10;

void check_unit_disc(std::span<const cplx> xs, const char* name) {
  for (const cplx& x : xs)
    if (!(std::abs(x) <= 1.0 + kUnitDiscSlack))
      throw ValidationError(std::string("classical_form: coefficient ") + name + " outside the unit disc");
}

void require_nonzero(const CMat& theta, const char* what) {
  if (theta.cwiseAbs().maxCoeff() == 0.0) throw ValidationError(std::string(what) + ": zero matrix");
}

cplx conj_phase_or_one(cplx z) { return std::abs(z) > 0.0 ? std::conj(z) / std::abs(z) : cplx(1.0); }

std::optional<ClosedFormG> diagonal_rule(const CMat& theta) {
  const double scale = theta.cwiseAbs().maxCoeff();
  const Eigen::Index d = theta.rows();
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index s = 0; s < d; ++s)
      if (r != s && std::abs(theta(r, s)) > 1e-14 * scale) return std::nullopt;

  ClosedFormG out;
  out.rule = "diagonal";
  out.witness.a = CVec(d);
  out.witness.b = CVec::Ones(d);
  for (Eigen::Index r = 0; r < d; ++r) {
    out.value += std::abs(theta(r, r));
    out.witness.a(r) = conj_phase_or_one(theta(r, r));
  }
  out.witness.value = kernels::form_value(theta, out.witness.a, out.witness.b);
  return out;
}

// (m/k) [[1, B], [B, B^2]] with real 0 < B <= 1.
std::optional<ClosedFormG> exdc_rule(const CMat& theta) {
  if (theta.rows() != 2) return std::nullopt;
  const double scale = theta.cwiseAbs().maxCoeff();
  const double eps = 1e-12 * scale;
  if (theta.imag().cwiseAbs().maxCoeff() > eps) return std::nullopt;
  const double c = theta(0, 0).real();
  if (!(c > 0.0)) return std::nullopt;
  const double b = theta(0, 1).real() / c;
  if (!(b > 0.0 && b <= 1.0 + 1e-12)) return std::nullopt;
  if (std::abs(theta(1, 0).real() - c * b) > eps || std::abs(theta(1, 1).real() - c * b * b) > eps)
    return std::nullopt;

  ClosedFormG out;
  out.rule = "exdc";
  out.value = c * (1.0 + b) * (1.0 + b);
  out.witness.a = CVec::Ones(2);
  out.witness.b = CVec::Ones(2);
  out.witness.value = kernels::form_value(theta, out.witness.a, out.witness.b);
  return out;
}

// theta = s u v^dagger: g = s * sum|u_r| * sum|v_s|.
std::optional<ClosedFormG> rank_one_rule(const CMat& theta) {
  Eigen::JacobiSVD<CMat> svd(theta, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv.size() > 1 && sv(1) > kRankOneGap * std::max(1.0, sv(0))) return std::nullopt;

  const CVec u = svd.matrixU().col(0);
  const CVec v = svd.matrixV().col(0);
  ClosedFormG out;
  out.rule = "rank_one";
  out.value = sv(0) * u.cwiseAbs().sum() * v.cwiseAbs().sum();
  const Eigen::Index d = theta.rows();
  out.witness.a = CVec(d);
  out.witness.b = CVec(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    out.witness.a(i) = conj_phase_or_one(u(i));
    out.witness.b(i) = std::conj(conj_phase_or_one(v(i)));
  }
  out.witness.value = kernels::form_value(theta, out.witness.a, out.witness.b);
  return out;
}

}  // namespace

std::string to_string(GEstimateKind kind) {
  switch (kind) {
    case GEstimateKind::closed_form: return "closed_form";
    case GEstimateKind::grid_refined_exact_target: return "grid_refined_exact_target";
    case GEstimateKind::ascent_lower_bound: return "ascent_lower_bound";
  }
  return "unknown";
}

std::string to_string(Membership m) {
  switch (m) {
    case Membership::in_G_prime: return "in_G_prime";
    case Membership::in_G_minus_G_prime: return "in_G_minus_G_prime";
    case Membership::outside_G: return "outside_G";
    case Membership::unknown: return "unknown";
  }
  return "unknown";
}

double classical_form(const CMat& theta, std::span<const cplx> a, std::span<const cplx> b) {
  require_square(theta, "classical_form");
  const auto d = static_cast<std::size_t>(theta.rows());
  if (a.size() != d || b.size() != d) throw ValidationError("classical_form: coefficient count does not match matrix");
  check_unit_disc(a, "a");
  check_unit_disc(b, "b");
  const Eigen::Map<const CVec> av(a.data(), static_cast<Eigen::Index>(d));
  const Eigen::Map<const CVec> bv(b.data(), static_cast<Eigen::Index>(d));
  return kernels::form_value(theta, av, bv);
}

QuantumFormDiagnostic quantum_form_diagnostic(const CMat& theta, const CMat& v, const CMat& w, double tol) {
  require_square(theta, "quantum_form");
  require_same_shape(theta, v, "quantum_form");
  require_same_shape(theta, w, "quantum_form");
  QuantumFormDiagnostic out;
  out.v_in_S = capacity(v) <= 1.0 + tol;
  out.w_in_S = capacity(w) <= 1.0 + tol;
  out.value = std::abs(trace_product(theta, v * w.adjoint()));
  return out;
}

double quantum_form(const CMat& theta, const CMat& v, const CMat& w, double tol) {
  const auto q = quantum_form_diagnostic(theta, v, w, tol);
  if (!q.v_in_S) throw ValidationError("quantum_form: V is not a rescaling matrix");
  if (!q.w_in_S) throw ValidationError("quantum_form: W is not a rescaling matrix");
  return q.value;
}

double g_prime(const CMat& theta) {
  require_square(theta, "g_prime");
  return static_cast<double>(theta.rows()) * max_singular_value(theta);
}

AscentResult g_ascent(const CMat& theta, const AscentOptions& opts) {
  if (theta.size() > 0 && theta.cwiseAbs().maxCoeff() == 0.0) {
    require_square(theta, "g_ascent");
    AscentResult zero;
    zero.best.a = CVec::Ones(theta.rows());
    zero.best.b = CVec::Ones(theta.rows());
    zero.best_start = 0;
    return zero;
  }
  return kernels::ascent_parallel(theta, opts);
}

int default_grid_k(int d) { return d <= 2 ? 16 : 8; }

GridResult g_grid(const CMat& theta, int k, int max_iters) {
  require_square(theta, "g_grid");
  require_finite(theta, "g_grid");
  const int d = static_cast<int>(theta.rows());
  if (d > 3) throw ValidationError("g_grid: dimension above 3 is not supported by exhaustive search");
  if (k < 8) throw ValidationError("g_grid: K must be at least 8");

  const GridPoint p = kernels::grid_parallel(theta, k);
  CVec a(d), b(d);
  for (int i = 0; i < d; ++i) {
    a(i) = std::polar(1.0, 2.0 * std::numbers::pi * p.a_index[static_cast<std::size_t>(i)] / k);
    b(i) = std::polar(1.0, 2.0 * std::numbers::pi * p.b_index[static_cast<std::size_t>(i)] / k);
  }
  AscentRun refined = kernels::ascend(theta, a, b, max_iters, 1e-12);
  GridResult out;
  out.grid_value = p.value;
  out.value = refined.result.value;
  out.witness = std::move(refined.result);
  return out;
}

std::optional<ClosedFormG> closed_form_g(const CMat& theta) {
  require_square(theta, "closed_form_g");
  require_finite(theta, "closed_form_g");
  if (auto r = diagonal_rule(theta)) return r;
  if (auto r = exdc_rule(theta)) return r;
  return rank_one_rule(theta);
}

Membership classify(const GrothendieckReport& report, double lambda, double tol) {
  if (lambda <= report.window_lo + tol) return Membership::in_G_prime;
  const bool certified = report.g_est_kind != GEstimateKind::ascent_lower_bound;
  if (lambda <= report.window_hi + tol) return certified ? Membership::in_G_minus_G_prime : Membership::unknown;
  // lambda * g_est > 1 is witnessed by an explicit phase assignment, so this
  // holds even when g_est is only a lower bound.
  return Membership::outside_G;
}

GrothendieckReport analyze(const CMat& theta, const AnalyzeOptions& opts) {
  require_square(theta, "analyze");
  require_finite(theta, "analyze");
  require_nonzero(theta, "analyze");

  GrothendieckReport rep;
  rep.d = static_cast<int>(theta.rows());
  rep.s_max = max_singular_value(theta);
  rep.g_prime = rep.d * rep.s_max;
  rep.optimizer.restarts = opts.ascent.restarts;
  rep.optimizer.max_iters = opts.ascent.max_iters;
  rep.optimizer.seed = opts.ascent.seed;

  if (auto cf = closed_form_g(theta)) {
    rep.g_est = cf->value;
    rep.g_est_kind = GEstimateKind::closed_form;
    rep.witness = std::move(cf->witness);
  } else if (rep.d <= 3) {
    const int k = opts.grid_k > 0 ? opts.grid_k : default_grid_k(rep.d);
    auto grid = g_grid(theta, k, opts.ascent.max_iters);
    rep.g_est = grid.value;
    rep.g_est_kind = GEstimateKind::grid_refined_exact_target;
    rep.witness = std::move(grid.witness);
  } else {
    auto asc = g_ascent(theta, opts.ascent);
    rep.g_est = asc.best.value;
    rep.g_est_kind = GEstimateKind::ascent_lower_bound;
    rep.witness = std::move(asc.best);
    rep.optimizer.converged_restarts = asc.converged_restarts;
  }

  if (rep.g_est > rep.g_prime * (1.0 + 1e-12) + 1e-9)
    throw NumericalError("analyze: g estimate exceeds g' (singular value decomposition inaccurate?)");

  rep.window_lo = 1.0 / rep.g_prime;
  rep.window_hi = 1.0 / rep.g_est;
  if (opts.lambda) rep.classification = Classification{*opts.lambda, classify(rep, *opts.lambda, opts.tol)};
  return rep;
}

double normalized_Q(const CMat& theta, const CMat& v, const CMat& w, double g_value) {
  require_square(theta, "normalized_Q");
  require_same_shape(theta, v, "normalized_Q");
  require_same_shape(theta, w, "normalized_Q");
  if (!(g_value > 0.0)) throw ValidationError("normalized_Q: g must be positive");
  const double nv = capacity(v);
  const double nw = capacity(w);
  if (nv == 0.0 || nw == 0.0) throw ValidationError("normalized_Q: zero capacity");
  return std::abs(trace_product(theta / g_value, (v / nv) * (w / nw).adjoint()));
}

NecessaryConditionReport necessary_condition_report(const CMat& theta, double lambda, const CMat& v,
                                                     const CMat& w, const AnalyzeOptions& opts) {
  require_square(theta, "necessary_condition_report");
  require_same_shape(theta, v, "necessary_condition_report");
  require_same_shape(theta, w, "necessary_condition_report");
  if (!(lambda > 0.0)) throw ValidationError("necessary_condition_report: lambda must be positive");
  const double scale = std::max(1.0, theta.squaredNorm());
  if (!matrix_flags(theta, opts.tol * scale).normal)
    throw ValidationError("necessary_condition_report: theta is not normal");

  const double tol = opts.tol;
  const auto rep = analyze(theta, opts);
  const int d = rep.d;

  NecessaryConditionReport out;
  out.lambda = lambda;
  out.e_max = max_abs_eigenvalue(theta);
  out.g_est = rep.g_est;
  out.g_est_kind = rep.g_est_kind;
  out.window_lo = 1.0 / (d * out.e_max);
  out.window_hi = rep.window_hi;

  out.strict_gap_and_window =
      rep.g_est < d * out.e_max - tol && lambda > out.window_lo && lambda <= out.window_hi + tol;

  for (Eigen::Index r = 0; r < d && !out.off_diagonal_present; ++r)
    for (Eigen::Index s = 0; s < d; ++s)
      if (r != s && std::abs(lambda * theta(r, s)) > tol) {
        out.off_diagonal_present = true;
        break;
      }

  const auto cv = certify(v, tol);
  const auto cw = certify(w, tol);
  out.v_in_S = cv.in_S;
  out.w_in_S = cw.in_S;
  out.proper_rescaling = (cv.in_S && !cv.in_T) || (cw.in_S && !cw.in_T);
  out.q_le_one_guaranteed = lambda <= out.window_lo + tol;
  out.q_value = quantum_form_diagnostic(lambda * theta, v, w, tol).value;

  std::ostringstream os;
  if (out.q_le_one_guaranteed) os << "lambda <= 1/(d e_max): Q <= 1 guaranteed. ";
  os << "requirements: window=" << (out.strict_gap_and_window ? "holds" : "fails")
     << " off_diagonal=" << (out.off_diagonal_present ? "holds" : "fails (diagonal matrices give Q <= 1)")
     << " proper_rescaling=" << (out.proper_rescaling ? "holds" : "fails (V, W both dequantisation)") << ". ";
  if (out.g_est_kind == GEstimateKind::ascent_lower_bound) os << "g is an ascent lower bound. ";
  os << "These conditions are necessary, not sufficient, for Q > 1.";
  out.verdict = os.str();
  return out;
}

bool permutation_invariance_check(const CMat& theta, const CMat& v, const CMat& w, const PermSpec& p, double tol) {
  require_same_shape(theta, v, "permutation_invariance_check");
  require_same_shape(theta, w, "permutation_invariance_check");
  const CMat pt = permute_conjugate(theta, p);
  const CMat pv = permute_conjugate(v, p);
  const CMat pw = permute_conjugate(w, p);

  const double q0 = std::abs(trace_product(theta, v * w.adjoint()));
  const double q1 = std::abs(trace_product(pt, pv * pw.adjoint()));
  const double g0 = g_prime(theta);
  const double g1 = g_prime(pt);
  return std::abs(q0 - q1) <= tol * std::max(1.0, q0) && std::abs(g0 - g1) <= tol * std::max(1.0, g0) &&
         std::abs(capacity(v) - capacity(pv)) <= tol && std::abs(capacity(w) - capacity(pw)) <= tol;
}

}  // namespace gbound
