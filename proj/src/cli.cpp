#include "gbound/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "gbound/io.hpp"

namespace gbound::cli {

namespace {

using io::json;

struct Common {
  std::uint64_t seed = 42;
  int restarts = 64;
  int max_iters = 500;
  double tol = kDefaultTol;
  std::string format = "json";

  AscentOptions ascent() const { return {restarts, max_iters, seed, 1e-12}; }
};

double parse_double(const std::string& token) {
  double x = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec != std::errc() || ptr != last || !std::isfinite(x))
    throw ValidationError("invalid number '" + token + "'");
  return x;
}

void emit(const json& report, const Common& c, std::ostream& out) {
  io::require_finite_numbers(report);
  if (c.format == "csv")
    out << io::to_csv(report);
  else
    out << report.dump(2) << "\n";
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

std::vector<std::complex<double>> parse_coeff_list(const std::string& text) {
  std::vector<std::complex<double>> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    token.erase(std::remove_if(token.begin(), token.end(), [](unsigned char ch) { return std::isspace(ch); }), token.end());
    if (token.empty()) throw ValidationError("empty entry in coefficient list");
    const auto colon = token.find(':');
    if (colon == std::string::npos)
      out.emplace_back(parse_double(token), 0.0);
    else
      out.emplace_back(parse_double(token.substr(0, colon)), parse_double(token.substr(colon + 1)));
  }
  if (out.empty()) throw ValidationError("empty coefficient list");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grothendieck bound certification for single quantum systems", "gbound"};
  app.require_subcommand(1);

  Common common;
  app.add_option("--seed", common.seed, "seed for the multistart optimizer")->capture_default_str();
  app.add_option("--restarts", common.restarts, "random restarts for the ascent")->capture_default_str()->check(CLI::NonNegativeNumber);
  app.add_option("--max-iters", common.max_iters, "ascent iteration cap")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--tol", common.tol, "tolerance for membership predicates")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--format", common.format, "output format")->capture_default_str()->check(CLI::IsMember({"json", "csv"}));

  auto* certify_cmd = app.add_subcommand("certify", "analyze a matrix: g, g', window, classification");
  std::string certify_path;
  std::optional<double> certify_lambda;
  certify_cmd->add_option("matrix", certify_path, "matrix JSON file")->required();
  certify_cmd->add_option("--lambda", certify_lambda, "classify lambda*theta");

  auto* forms_cmd = app.add_subcommand("forms", "evaluate the classical and quantum forms");
  std::string theta_path, v_path, w_path, a_list, b_list;
  std::optional<double> forms_lambda;
  bool allow_nonrescaling = false;
  forms_cmd->add_option("--theta", theta_path, "theta matrix JSON file")->required();
  auto* v_opt = forms_cmd->add_option("--V", v_path, "V matrix JSON file");
  auto* w_opt = forms_cmd->add_option("--W", w_path, "W matrix JSON file");
  v_opt->needs(w_opt);
  w_opt->needs(v_opt);
  auto* a_opt = forms_cmd->add_option("--a", a_list, "coefficients a_r as re or re:im, comma separated");
  auto* b_opt = forms_cmd->add_option("--b", b_list, "coefficients b_s");
  a_opt->needs(b_opt);
  b_opt->needs(a_opt);
  forms_cmd->add_option("--lambda", forms_lambda, "with --V/--W: necessary-condition report for lambda*theta");
  forms_cmd->add_flag("--allow-nonrescaling", allow_nonrescaling, "evaluate Q even if V or W is outside S_d (flagged)");

  auto* tunnel_cmd = app.add_subcommand("tunnel", "square-barrier amplitudes, projector blocks, exDC window");
  BarrierParams barrier;
  std::string params_path;
  std::optional<double> exdc_b;
  auto* m_opt = tunnel_cmd->add_option("--m", barrier.m, "mass");
  auto* k_opt = tunnel_cmd->add_option("--k", barrier.k, "momentum");
  auto* v0_opt = tunnel_cmd->add_option("--V0", barrier.V0, "barrier height");
  auto* width_opt = tunnel_cmd->add_option("--a", barrier.a, "barrier width");
  auto* params_opt = tunnel_cmd->add_option("--params", params_path, "barrier parameters JSON file");
  for (auto* o : {m_opt, k_opt, v0_opt, width_opt}) o->excludes(params_opt);
  tunnel_cmd->add_option("--exdc-B", exdc_b, "real reflection amplitude for the exDC matrix (default |B|)");

  auto* ultra_cmd = app.add_subcommand("ultra", "the 6x6 projector construction with Q = 6 xi");
  double phase = 0.0;
  std::optional<double> xi;
  ultra_cmd->add_option("--phase", phase, "z = exp(i phase)")->required();
  ultra_cmd->add_option("--xi", xi, "coefficient xi_L (default 1/g estimate)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name

  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: validation: " << one_line(e.what()) << "\n";
    return kValidation;
  }

  try {
    if (certify_cmd->parsed()) {
      const CMat theta = io::read_matrix_file(certify_path);
      AnalyzeOptions opts;
      opts.ascent = common.ascent();
      opts.tol = common.tol;
      opts.lambda = certify_lambda;
      json report = io::to_json(analyze(theta, opts));
      report["rescaling"] = io::to_json(certify(theta, common.tol));
      emit(report, common, out);
    } else if (forms_cmd->parsed()) {
      const CMat theta = io::read_matrix_file(theta_path);
      require_square(theta, "theta");
      json report = json::object();
      if (!a_list.empty()) {
        const auto a = parse_coeff_list(a_list);
        const auto b = parse_coeff_list(b_list);
        report["C"] = classical_form(theta, a, b);
      }
      if (!v_path.empty()) {
        const CMat v = io::read_matrix_file(v_path);
        const CMat w = io::read_matrix_file(w_path);
        const auto q = quantum_form_diagnostic(theta, v, w, common.tol);
        if (q.membership_violated() && !allow_nonrescaling)
          throw ValidationError(std::string("quantum form: ") + (q.v_in_S ? "W" : "V") + " is not a rescaling matrix");
        report["Q"] = q.value;
        report["Q_membership_violated"] = q.membership_violated();
        report["V"] = io::to_json(certify(v, common.tol));
        report["W"] = io::to_json(certify(w, common.tol));
        if (forms_lambda) {
          AnalyzeOptions opts;
          opts.ascent = common.ascent();
          opts.tol = common.tol;
          report["necessary_condition"] = io::to_json(necessary_condition_report(theta, *forms_lambda, v, w, opts));
        }
      } else if (forms_lambda) {
        throw ValidationError("--lambda requires --V and --W");
      }
      if (report.empty()) throw ValidationError("forms: give --a/--b and/or --V/--W");
      report["optimizer"] = {{"restarts", common.restarts}, {"seed", common.seed}};
      emit(report, common, out);
    } else if (tunnel_cmd->parsed()) {
      if (!params_path.empty()) {
        barrier = io::barrier_from_json(io::read_json_file(params_path));
      } else if (!(m_opt->count() && k_opt->count() && v0_opt->count() && width_opt->count())) {
        throw ValidationError("tunnel: give --m --k --V0 --a or --params");
      }
      const ScatterAmps amps = scattering_amplitudes(barrier);
      const double m_over_k = barrier.m / barrier.k;
      const double b = exdc_b.value_or(std::abs(amps.B));
      json report = {{"params", io::barrier_to_json(barrier)},
                     {"amps", io::to_json(amps)},
                     {"blocks", io::to_json(tunnel_blocks(amps, m_over_k))},
                     {"exdc", io::to_json(exdc_report(b, m_over_k))}};
      report["optimizer"] = {{"restarts", common.restarts}, {"seed", common.seed}};
      emit(report, common, out);
    } else if (ultra_cmd->parsed()) {
      const cplx z = unit_phase(phase);
      UltraOptions opts;
      opts.ascent = common.ascent();
      opts.xi = xi;
      json report = io::to_json(ultra_window(z, opts));
      const auto comp = verify_complementarity(z, 1e-10);
      report["phase"] = phase;
      report["complementarity_ok"] = comp.ok;
      emit(report, common, out);
    }
  } catch (const ValidationError& e) {
    err << "error: validation: " << one_line(e.what()) << "\n";
    return kValidation;
  } catch (const NumericalError& e) {
    err << "error: numerical: " << one_line(e.what()) << "\n";
    return kNumerical;
  } catch (const std::exception& e) {
    err << "error: numerical: " << one_line(e.what()) << "\n";
    return kNumerical;
  }
  return kOk;
}

}  // namespace gbound::cli
