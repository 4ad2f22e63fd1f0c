#include "gbound/kernels.hpp"

#include <cassert>
#include <cmath>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gbound/random.hpp"

namespace gbound::kernels {

namespace {

cplx unit_phase_of(cplx z) { return z / std::abs(z); }

// Replaces x_i by conj(v_i)/|v_i|; entries with v_i == 0 keep their value.
// Returns sum |v_i|, the objective after the update.
double align(CVec& x, const CVec& v) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > 0.0) x(i) = std::conj(v(i)) / mag;
    total += mag;
  }
  return total;
}

bool better(double value, int index, double best_value, int best_index) {
  return value > best_value || (value == best_value && index < best_index);
}

std::vector<cplx> phase_table(int k) {
  std::vector<cplx> t(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) t[static_cast<std::size_t>(i)] = std::polar(1.0, 2.0 * std::numbers::pi * i / k);
  return t;
}

long long ipow(int base, int exp) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

void decode(long long flat, int k, std::vector<int>& digits) {
  for (auto& digit : digits) {
    digit = static_cast<int>(flat % k);
    flat /= k;
  }
}

// Best b for a fixed a-index: returns (value, flat b index).
std::pair<double, long long> best_b_for(const CMat& theta, const std::vector<cplx>& phases, long long a_flat) {
  const int d = static_cast<int>(theta.rows());
  const int k = static_cast<int>(phases.size());
  std::vector<int> a_digits(static_cast<std::size_t>(d - 1));
  decode(a_flat, k, a_digits);
  CVec a(d);
  a(0) = 1.0;
  for (int r = 1; r < d; ++r) a(r) = phases[static_cast<std::size_t>(a_digits[static_cast<std::size_t>(r - 1)])];
  const CVec w = theta.transpose() * a;  // w_s = sum_r a_r theta_rs

  const long long b_count = ipow(k, d);
  std::vector<int> b_digits(static_cast<std::size_t>(d));
  double best = -1.0;
  long long best_flat = 0;
  for (long long bf = 0; bf < b_count; ++bf) {
    decode(bf, k, b_digits);
    cplx sum = 0.0;
    for (int s = 0; s < d; ++s) sum += w(s) * phases[static_cast<std::size_t>(b_digits[static_cast<std::size_t>(s)])];
    const double v = std::abs(sum);
    if (v > best) {
      best = v;
      best_flat = bf;
    }
  }
  return {best, best_flat};
}

GridPoint make_grid_point(int d, int k, double value, long long a_flat, long long b_flat) {
  GridPoint p;
  p.value = value;
  std::vector<int> a_tail(static_cast<std::size_t>(d - 1));
  decode(a_flat, k, a_tail);
  p.a_index.push_back(0);
  p.a_index.insert(p.a_index.end(), a_tail.begin(), a_tail.end());
  p.b_index.resize(static_cast<std::size_t>(d));
  decode(b_flat, k, p.b_index);
  return p;
}

void check_grid_args(const CMat& theta, int k) {
  require_square(theta, "grid search");
  if (k < 1) throw ValidationError("grid search: K must be positive");
}

AscentResult reduce(std::vector<AscentRun>& runs) {
  AscentResult out;
  out.starts = static_cast<int>(runs.size());
  double best_value = -1.0;
  for (int i = 0; i < out.starts; ++i) {
    const auto& run = runs[static_cast<std::size_t>(i)];
    if (run.converged) ++out.converged_restarts;
    if (better(run.result.value, i, best_value, out.best_start)) {
      best_value = run.result.value;
      out.best_start = i;
    }
  }
  out.best = std::move(runs[static_cast<std::size_t>(out.best_start)].result);
  return out;
}

void check_ascent_args(const CMat& theta, const AscentOptions& opts) {
  require_square(theta, "g_ascent");
  require_finite(theta, "g_ascent");
  if (opts.restarts < 0) throw ValidationError("g_ascent: restarts must be >= 0");
  if (opts.max_iters < 1) throw ValidationError("g_ascent: max_iters must be >= 1");
}

}  // namespace

double form_value(const CMat& theta, const CVec& a, const CVec& b) {
  return std::abs(a.cwiseProduct(theta * b).sum());
}

AscentRun ascend(const CMat& theta, CVec a, CVec b, int max_iters, double rel_tol, std::vector<double>* trace) {
  AscentRun run;
  double previous = form_value(theta, a, b);
  if (trace) trace->push_back(previous);
  for (int it = 0; it < max_iters; ++it) {
    const double after_a = align(a, theta * b);
    const double after_b = align(b, theta.transpose() * a);
    if (trace) {
      trace->push_back(after_a);
      trace->push_back(after_b);
    }
    assert(after_a >= previous * (1.0 - 1e-12) - 1e-300);
    assert(after_b >= after_a * (1.0 - 1e-12) - 1e-300);
    run.iterations = it + 1;
    if (after_b - previous <= rel_tol * after_b) {
      run.converged = true;
      break;
    }
    previous = after_b;
  }
  run.result.value = form_value(theta, a, b);
  run.result.a = std::move(a);
  run.result.b = std::move(b);
  return run;
}

std::pair<CVec, CVec> start_point(const CMat& theta, int index, std::uint64_t seed) {
  const Eigen::Index d = theta.rows();
  CVec a = CVec::Ones(d);
  CVec b = CVec::Ones(d);
  if (index == 1) {
    const CVec rows = theta.rowwise().sum();
    const CVec cols = theta.colwise().sum().transpose();
    for (Eigen::Index i = 0; i < d; ++i) {
      if (std::abs(rows(i)) > 0.0) a(i) = std::conj(unit_phase_of(rows(i)));
      if (std::abs(cols(i)) > 0.0) b(i) = std::conj(unit_phase_of(cols(i)));
    }
  } else if (index >= 2) {
    Rng rng = make_stream(seed, static_cast<std::uint64_t>(index));
    for (Eigen::Index i = 0; i < d; ++i) a(i) = random_phase(rng);
    for (Eigen::Index i = 0; i < d; ++i) b(i) = random_phase(rng);
  }
  return {a, b};
}

AscentResult ascent_serial(const CMat& theta, const AscentOptions& opts) {
  check_ascent_args(theta, opts);
  const int starts = opts.restarts + 2;
  std::vector<AscentRun> runs(static_cast<std::size_t>(starts));
  for (int i = 0; i < starts; ++i) {
    auto [a, b] = start_point(theta, i, opts.seed);
    runs[static_cast<std::size_t>(i)] = ascend(theta, std::move(a), std::move(b), opts.max_iters, opts.rel_tol);
  }
  return reduce(runs);
}

AscentResult ascent_parallel(const CMat& theta, const AscentOptions& opts) {
  check_ascent_args(theta, opts);
  const int starts = opts.restarts + 2;
  std::vector<AscentRun> runs(static_cast<std::size_t>(starts));
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < starts; ++i) {
    auto [a, b] = start_point(theta, i, opts.seed);
    runs[static_cast<std::size_t>(i)] = ascend(theta, std::move(a), std::move(b), opts.max_iters, opts.rel_tol);
  }
  return reduce(runs);
}

GridPoint grid_serial(const CMat& theta, int k) {
  check_grid_args(theta, k);
  const int d = static_cast<int>(theta.rows());
  const auto phases = phase_table(k);
  const long long a_count = ipow(k, d - 1);
  double best = -1.0;
  long long best_a = 0, best_b = 0;
  for (long long af = 0; af < a_count; ++af) {
    const auto [v, bf] = best_b_for(theta, phases, af);
    if (v > best) {
      best = v;
      best_a = af;
      best_b = bf;
    }
  }
  return make_grid_point(d, k, best, best_a, best_b);
}

GridPoint grid_parallel(const CMat& theta, int k) {
  check_grid_args(theta, k);
  const int d = static_cast<int>(theta.rows());
  const auto phases = phase_table(k);
  const long long a_count = ipow(k, d - 1);
  std::vector<std::pair<double, long long>> per_a(static_cast<std::size_t>(a_count));
#pragma omp parallel for schedule(static)
  for (long long af = 0; af < a_count; ++af) per_a[static_cast<std::size_t>(af)] = best_b_for(theta, phases, af);

  double best = -1.0;
  long long best_a = 0, best_b = 0;
  for (long long af = 0; af < a_count; ++af) {
    if (per_a[static_cast<std::size_t>(af)].first > best) {
      best = per_a[static_cast<std::size_t>(af)].first;
      best_a = af;
      best_b = per_a[static_cast<std::size_t>(af)].second;
    }
  }
  return make_grid_point(d, k, best, best_a, best_b);
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace gbound::kernels
