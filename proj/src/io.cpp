#include "gbound/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace gbound::io {

namespace {

double finite_number(const json& j, const char* what) {
  if (!j.is_number()) throw ValidationError(std::string(what) + ": expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw ValidationError(std::string(what) + ": non-finite number");
  return x;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
  return j.at(key);
}

json cvec_to_json(const CVec& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(complex_to_json(v(i)));
  return arr;
}

json interval_to_json(const Interval& w) { return {{"lo", w.lo}, {"hi", w.hi}, {"empty", w.empty()}}; }

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ValidationError("complex entry must be [re, im]");
  return {finite_number(j[0], "complex re"), finite_number(j[1], "complex im")};
}

json matrix_to_json(const CMat& m) {
  json data = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(complex_to_json(m(r, c)));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

CMat matrix_from_json(const json& j) {
  const json& rows = field(j, "rows");
  const json& cols = field(j, "cols");
  const json& data = field(j, "data");
  if (!rows.is_number_integer() || !cols.is_number_integer() || rows.get<long long>() < 1 || cols.get<long long>() < 1)
    throw ValidationError("matrix: rows and cols must be positive integers");
  if (!data.is_array()) throw ValidationError("matrix: data must be an array");
  const auto r = rows.get<long long>();
  const auto c = cols.get<long long>();
  if (static_cast<long long>(data.size()) != r * c) throw ValidationError("matrix: data length does not equal rows*cols");
  CMat m(r, c);
  for (long long i = 0; i < r; ++i)
    for (long long k = 0; k < c; ++k) m(i, k) = complex_from_json(data[static_cast<std::size_t>(i * c + k)]);
  return m;
}

json dequant_to_json(const DequantSpec& s) {
  json coeffs = json::array();
  for (const cplx& a : s.coeffs()) coeffs.push_back(complex_to_json(a));
  return {{"coeffs", std::move(coeffs)}};
}

DequantSpec dequant_from_json(const json& j) {
  const json& coeffs = field(j, "coeffs");
  if (!coeffs.is_array()) throw ValidationError("dequantisation: coeffs must be an array");
  std::vector<cplx> out;
  for (const auto& c : coeffs) out.push_back(complex_from_json(c));
  return DequantSpec(std::move(out));
}

BarrierParams barrier_from_json(const json& j) {
  BarrierParams p{finite_number(field(j, "m"), "m"), finite_number(field(j, "k"), "k"),
                  finite_number(field(j, "V0"), "V0"), finite_number(field(j, "a"), "a")};
  p.validate();
  return p;
}

json barrier_to_json(const BarrierParams& p) { return {{"m", p.m}, {"k", p.k}, {"V0", p.V0}, {"a", p.a}}; }

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

CMat read_matrix_file(const std::filesystem::path& path) { return matrix_from_json(read_json_file(path)); }

json to_json(const PhaseAssignment& p) {
  return {{"a", cvec_to_json(p.a)}, {"b", cvec_to_json(p.b)}, {"value", p.value}};
}

json to_json(const GrothendieckReport& r) {
  json j = {{"d", r.d},
            {"g_est", r.g_est},
            {"g_est_kind", to_string(r.g_est_kind)},
            {"g_prime", r.g_prime},
            {"s_max", r.s_max},
            {"witness", to_json(r.witness)},
            {"window_lo", r.window_lo},
            {"window_hi", r.window_hi},
            {"window_empty", r.window_empty()}};
  if (r.classification)
    j["classification_at"] = {{"lambda", r.classification->lambda}, {"verdict", to_string(r.classification->verdict)}};
  else
    j["classification_at"] = nullptr;
  j["optimizer"] = {{"restarts", r.optimizer.restarts},
                    {"max_iters", r.optimizer.max_iters},
                    {"seed", r.optimizer.seed},
                    {"converged_restarts", r.optimizer.converged_restarts}};
  return j;
}

json to_json(const RescalingCert& c) {
  return {{"capacity", c.capacity}, {"tol", c.tol}, {"in_S", c.in_S}, {"in_T", c.in_T}};
}

json to_json(const ScatterAmps& a) {
  return {{"B", complex_to_json(a.B)},
          {"C", complex_to_json(a.C)},
          {"kappa", complex_to_json(a.kappa)},
          {"abs_B", std::abs(a.B)},
          {"abs_C", std::abs(a.C)},
          {"flux", std::norm(a.B) + std::norm(a.C)}};
}

json to_json(const TunnelBlocks& t) {
  return {{"xi_L", t.xi_L},
          {"xi_R", t.xi_R},
          {"varpi_L", matrix_to_json(t.varpi_L)},
          {"varpi_R", matrix_to_json(t.varpi_R)},
          {"orthogonality_residual", t.orthogonality_residual},
          {"transfer_residual", t.transfer_residual}};
}

json to_json(const ExdcReport& r) {
  return {{"B", r.B},
          {"m_over_k", r.m_over_k},
          {"theta", matrix_to_json(r.theta)},
          {"g", r.g},
          {"g_prime", r.g_prime},
          {"g_grid", r.g_grid},
          {"g_prime_numeric", r.g_prime_numeric},
          {"window", interval_to_json(r.window)}};
}

json to_json(const UltraReport& r) {
  return {{"z", complex_to_json(r.z)},
          {"g_pi_est", r.g_pi_est},
          {"g_pi_est_kind", "ascent_lower_bound"},
          {"g_prime", r.g_prime},
          {"xi_window", interval_to_json(r.xi_window)},
          {"q_range", interval_to_json(r.q_range)},
          {"window_is_outer_estimate", true},
          {"xi_L", r.xi_L},
          {"Q_value", r.Q_value},
          {"xi_in_window", r.xi_in_window},
          {"optimizer",
           {{"restarts", r.optimizer.restarts},
            {"max_iters", r.optimizer.max_iters},
            {"seed", r.optimizer.seed},
            {"converged_restarts", r.optimizer.converged_restarts}}}};
}

json to_json(const NecessaryConditionReport& r) {
  return {{"lambda", r.lambda},
          {"e_max", r.e_max},
          {"g_est", r.g_est},
          {"g_est_kind", to_string(r.g_est_kind)},
          {"window_lo", r.window_lo},
          {"window_hi", r.window_hi},
          {"q_value", r.q_value},
          {"v_in_S", r.v_in_S},
          {"w_in_S", r.w_in_S},
          {"requirement_window", r.strict_gap_and_window},
          {"requirement_off_diagonal", r.off_diagonal_present},
          {"requirement_proper_rescaling", r.proper_rescaling},
          {"all_requirements_hold", r.all_requirements_hold()},
          {"q_le_one_guaranteed", r.q_le_one_guaranteed},
          {"sufficient", false},
          {"verdict", r.verdict}};
}

std::string to_csv(const json& report) {
  std::vector<std::pair<std::string, std::string>> cells;
  flatten(report, "", cells);
  std::string header, row;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) {
      header += ',';
      row += ',';
    }
    header += csv_cell(cells[i].first);
    row += csv_cell(cells[i].second);
  }
  return header + "\n" + row + "\n";
}

void require_finite_numbers(const json& j) {
  if (j.is_number_float() && !std::isfinite(j.get<double>())) throw NumericalError("report contains a non-finite number");
  if (j.is_structured())
    for (const auto& el : j) require_finite_numbers(el);
}

}  // namespace gbound::io
