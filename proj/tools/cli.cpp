#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "hadamard_frac/errors.hpp"
#include "hadamard_frac/estimate_probe.hpp"
#include "hadamard_frac/frac_kernels.hpp"
#include "hadamard_frac/initial_data.hpp"
#include "hadamard_frac/serialize.hpp"
#include "hadamard_frac/verify.hpp"

namespace hfrac::cli {

namespace {

struct Global {
  std::string format = "json";
  double rel_tol = 1e-12;
  std::string out_path;
};

struct ProblemFlags {
  double alpha = 0.5;
  double gamma = 0.0;
  int N = 1;
  double p = 2.0;
  double lambda1 = 1.0;
  double lambda2 = 0.0;
  double a = 1.0;

  ProblemParams params() const { return {alpha, gamma, N, p, lambda1, lambda2, a}; }
};

void add_problem_flags(CLI::App* sub, ProblemFlags& f, bool required) {
  auto* alpha = sub->add_option("--alpha", f.alpha, "order alpha in (0, 1)");
  auto* gamma = sub->add_option("--gamma", f.gamma, "time-weight exponent gamma");
  auto* N = sub->add_option("--N", f.N, "space dimension");
  auto* p = sub->add_option("--p", f.p, "nonlinearity exponent p > 1");
  if (required) {
    alpha->required();
    gamma->required();
    N->required();
    p->required();
  }
  sub->add_option("--lambda1", f.lambda1, "Re lambda")->capture_default_str();
  sub->add_option("--lambda2", f.lambda2, "Im lambda")->capture_default_str();
  sub->add_option("--a", f.a, "initial time a > 0")->capture_default_str();
}

Part parse_part(const std::string& s) {
  if (s == "real") return Part::Real;
  if (s == "imag") return Part::Imaginary;
  throw DomainError("--part must be real or imag");
}

RadialProfile parse_profile(const std::string& spec, int N, Part part) {
  if (spec.rfind("csv:", 0) == 0) return RadialProfile::from_csv(spec.substr(4), N, part);
  switch (profile_tag_from_string(spec)) {
    case ProfileTag::InverseWeight:
      return RadialProfile::inverse_weight(N, part);
    case ProfileTag::GaussWeight:
      return RadialProfile::gauss_weight(N, part);
    case ProfileTag::ExpDecay:
      return RadialProfile::exp_decay(N, part);
    case ProfileTag::Custom:
      break;
  }
  throw DomainError("unsupported profile '" + spec + "'");
}

double parse_real(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw DomainError("cannot parse " + what + " '" + s + "'");
  return v;
}

LogGridFunction grid_from_csv(const std::string& path, double a, double T) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open integrand CSV '" + path + "'");
  std::string line;
  std::getline(in, line);  // header
  std::vector<double> ts;
  std::vector<double> vs;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw DomainError("integrand CSV rows must be 't,f'");
    std::string tv = line.substr(0, comma);
    std::string fv = line.substr(comma + 1);
    if (!fv.empty() && fv.back() == '\r') fv.pop_back();
    ts.push_back(parse_real(tv, "CSV time"));
    vs.push_back(parse_real(fv, "CSV value"));
  }
  if (ts.size() < 2) throw DomainError("integrand CSV needs at least two rows");
  LogGridFunction g(a, T, vs);
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (std::abs(ts[k] - g.node(k)) > 1e-6 * g.node(k)) {
      throw DomainError("integrand CSV times must be the log-uniform grid on [a, T]");
    }
  }
  return g;
}

Integrand parse_integrand(const std::string& spec, double a, double T) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw DomainError("integrand must look like kind:value");
  const std::string kind = spec.substr(0, colon);
  std::string arg = spec.substr(colon + 1);
  if (kind == "const") return Integrand::constant(parse_real(arg, "constant"));
  if (kind == "logpow") return Integrand::log_power(parse_real(arg, "log power"));
  if (kind == "pow") return Integrand::linear_power(parse_real(arg, "power"));
  if (kind == "mu") {
    if (arg.rfind("kappa=", 0) == 0) arg = arg.substr(6);
    return Integrand::mu_family(parse_real(arg, "kappa"));
  }
  if (kind == "csv") return Integrand::sampled(grid_from_csv(arg, a, T));
  throw DomainError("unknown integrand kind '" + kind + "' (const, logpow, pow, mu, csv)");
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

void check_format(const std::string& f) {
  if (f != "json" && f != "csv" && f != "text") throw DomainError("--format must be json, csv or text");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out_stream, std::ostream& err) {
  CLI::App app{"Hadamard fractional operators, nonexistence criteria and estimate probes",
               "hadamard-frac"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--format", g.format, "output format: json, csv or text")
      ->capture_default_str();
  app.add_option("--rel-tol", g.rel_tol, "quadrature relative tolerance")->capture_default_str();
  app.add_option("--out", g.out_path, "write the output to this file");

  // op
  auto* op = app.add_subcommand("op", "evaluate a fractional operator");
  std::string kind;
  std::string integrand_spec;
  double sigma = 1.0;
  double alpha_op = 0.5;
  double a_op = 1.0;
  double T_op = std::numbers::e;
  std::vector<double> ts;
  op->add_option("--kind", kind, "Ia, IT, Ja, JT or D")->required();
  op->add_option("--integrand", integrand_spec,
                 "const:c, logpow:b, pow:b, mu:kappa=k or csv:path")
      ->required();
  op->add_option("--sigma", sigma, "integral order")->capture_default_str();
  op->add_option("--alpha", alpha_op, "derivative order for --kind D")->capture_default_str();
  op->add_option("--a", a_op, "left endpoint")->capture_default_str();
  op->add_option("--T", T_op, "right endpoint")->capture_default_str();
  op->add_option("--t", ts, "evaluation time (repeatable)")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "run the identity suites");
  std::string suite;
  bool inject_bug = false;
  verify->add_option("--suite", suite, "run only this suite");
  verify->add_flag("--inject-bug", inject_bug, "flip a closed-form sign (harness self-test)");

  // criterion
  auto* crit = app.add_subcommand("criterion", "evaluate the nonexistence criteria");
  ProblemFlags cf;
  add_problem_flags(crit, cf, true);
  std::string crit_profile;
  std::string crit_part = "real";
  std::optional<double> f1_int;
  std::optional<double> f2_int;
  crit->add_option("--profile", crit_profile, "inverse, gauss, exp or csv:path");
  crit->add_option("--part", crit_part, "profile feeds the real or imag part")
      ->capture_default_str();
  crit->add_option("--f1-integral", f1_int, "precomputed integral of Re f");
  crit->add_option("--f2-integral", f2_int, "precomputed integral of Im f");

  // integrals
  auto* integ = app.add_subcommand("integrals", "integrate an initial-data profile over R^N");
  std::string int_profile;
  int int_N = 1;
  std::optional<double> int_R;
  int int_ell = 2;
  integ->add_option("--profile", int_profile, "inverse, gauss, exp or csv:path")->required();
  integ->add_option("--N", int_N, "space dimension")->required();
  integ->add_option("--R", int_R, "also report the cutoff-weighted integral at this radius");
  integ->add_option("--ell", int_ell, "cutoff power for --R")->capture_default_str();

  // probe
  auto* probe = app.add_subcommand("probe", "sweep the master inequality over R");
  ProblemFlags pf;
  add_problem_flags(probe, pf, false);
  double kappa = 0.0;
  int ell = 0;
  std::vector<double> R_grid{10.0, 20.0, 40.0, 80.0};
  std::optional<double> theta;
  std::string probe_profile = "exp";
  std::string probe_part = "real";
  std::string csv_path;
  probe->add_option("--kappa", kappa, "time exponent (default from alpha, p)");
  probe->add_option("--ell", ell, "cutoff power (default from p)");
  probe->add_option("--R", R_grid, "radii")->delimiter(',')->capture_default_str();
  probe->add_option("--theta", theta, "T = a exp(R^theta); default 2/alpha");
  probe->add_option("--profile", probe_profile, "initial data profile")->capture_default_str();
  probe->add_option("--part", probe_part, "profile part")->capture_default_str();
  probe->add_option("--csv", csv_path, "also write the sweep CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out_stream << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out_stream << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  std::ostringstream buffer;
  int code = kOk;
  try {
    check_format(g.format);
    QuadratureSpec quad = QuadratureSpec::from_environment();
    quad.rel_tol = g.rel_tol;
    quad.validate();

    if (op->parsed()) {
      const FracParams p{kind == "D" ? 1.0 : sigma, a_op, T_op};
      p.validate();
      const Integrand f = parse_integrand(integrand_spec, a_op, T_op);
      Json results = Json::array();
      for (double t : ts) {
        Approx v;
        if (kind == "Ia") v = rl_left_integral(f, p, t, quad);
        else if (kind == "IT") v = rl_right_integral(f, p, t, quad);
        else if (kind == "Ja") v = hadamard_left_integral(f, p, t, quad);
        else if (kind == "JT") v = hadamard_right_integral(f, p, t, quad);
        else if (kind == "D") v = hadamard_caputo_derivative(f, alpha_op, p, t, quad);
        else throw DomainError("--kind must be Ia, IT, Ja, JT or D");
        results.push_back({{"t", t}, {"value", v.value}, {"error", v.error}});
      }
      if (g.format == "json") {
        Json j = schema_object();
        j["command"] = "op";
        j["kind"] = kind;
        j["integrand"] = f.describe();
        if (kind == "D") j["alpha"] = alpha_op;
        else j["sigma"] = sigma;
        j["a"] = a_op;
        j["T"] = T_op;
        j["results"] = results;
        buffer << dump_json(j);
      } else {
        const char* sep = g.format == "csv" ? "," : " ";
        if (g.format == "csv") buffer << "t,value,error\r\n";
        for (const auto& r : results) {
          buffer << fmt(r["t"].get<double>()) << sep << fmt(r["value"].get<double>()) << sep
                 << fmt(r["error"].get<double>()) << (g.format == "csv" ? "\r\n" : "\n");
        }
      }
    } else if (verify->parsed()) {
      VerifyOptions vo;
      if (!suite.empty()) vo.suite = suite;
      vo.inject_bug = inject_bug;
      vo.quad = quad;
      const VerifyReport r = run_verify(vo);
      if (g.format == "json") {
        Json j = schema_object();
        j["command"] = "verify";
        const Json body = to_json(r);
        for (const auto& [k, v] : body.items()) j[k] = v;
        buffer << dump_json(j);
      } else {
        if (g.format == "csv") buffer << "suite,passed,checks,worst\r\n";
        for (const auto& s : r.suites) {
          if (g.format == "csv") {
            buffer << s.name << ',' << (s.passed ? "true" : "false") << ',' << s.checks.size()
                   << ',' << fmt(s.worst) << "\r\n";
          } else {
            buffer << s.name << ' ' << (s.passed ? "PASS" : "FAIL") << " checks=" << s.checks.size()
                   << " worst=" << fmt(s.worst) << '\n';
            for (const auto& name : s.failing()) buffer << "  failed: " << name << '\n';
          }
        }
      }
      if (!r.passed) {
        for (const auto& s : r.suites) {
          for (const auto& name : s.failing()) err << "failed identity [" << s.name << "]: " << name << '\n';
        }
        code = kVerifyFailed;
      }
    } else if (crit->parsed()) {
      const ProblemParams pp = cf.params();
      pp.validate();
      double i1 = 0.0;
      double i2 = 0.0;
      Json source = Json::object();
      if (!crit_profile.empty()) {
        if (f1_int || f2_int) throw DomainError("give either --profile or --f1/--f2-integral");
        const RadialProfile rp = parse_profile(crit_profile, pp.N, parse_part(crit_part));
        const auto [a1, a2] = make_initial_value(rp).integrals(quad);
        i1 = a1;
        i2 = a2;
        source["profile"] = crit_profile;
        source["part"] = crit_part;
      } else if (f1_int || f2_int) {
        i1 = f1_int.value_or(0.0);
        i2 = f2_int.value_or(0.0);
        source["profile"] = nullptr;
      } else {
        throw DomainError("criterion needs --profile or --f1-integral/--f2-integral");
      }
      source["f1_integral"] = i1;
      source["f2_integral"] = i2;
      const CriterionReport rep = evaluate(pp, sign_functionals(pp, i1, i2));
      if (g.format == "json") {
        Json j = schema_object();
        j["command"] = "criterion";
        j["params"] = to_json(pp);
        j["initial_data"] = source;
        j["report"] = to_json(rep);
        buffer << dump_json(j);
      } else if (g.format == "csv") {
        buffer << "verdict,p,p_lower,p_upper_T1,p_upper_T2,p_upper_combined,I1,I2\r\n";
        const auto o = [](const std::optional<double>& v) { return v ? fmt(*v) : std::string(); };
        buffer << to_string(rep.verdict) << ',' << fmt(rep.p) << ',' << fmt(rep.p_lower) << ','
               << o(rep.p_upper_T1) << ',' << o(rep.p_upper_T2) << ',' << o(rep.p_upper_combined)
               << ',' << fmt(rep.sign.I1) << ',' << fmt(rep.sign.I2) << "\r\n";
      } else {
        buffer << "verdict: " << to_string(rep.verdict) << '\n';
        for (const auto& c : rep.conditions) {
          buffer << "  " << (c.holds ? "[x] " : "[ ] ") << c.name << '\n';
        }
        buffer << rep.note << '\n';
      }
    } else if (integ->parsed()) {
      const RadialProfile rp = parse_profile(int_profile, int_N, Part::Real);
      const RadialIntegral total = total_integral(rp, quad);
      std::optional<Approx> cut;
      if (int_R) cut = cutoff_weighted_integral(rp, CutoffParams{*int_R, int_ell, int_N}, quad);
      if (g.format == "json") {
        Json j = schema_object();
        j["command"] = "integrals";
        j["profile"] = int_profile;
        j["N"] = int_N;
        j["sphere_area"] = sphere_area(int_N);
        j["total"] = to_json(total);
        if (cut) {
          j["cutoff"] = {{"R", *int_R}, {"ell", int_ell}, {"value", cut->value},
                         {"error", cut->error}};
        }
        buffer << dump_json(j);
      } else if (g.format == "csv") {
        buffer << "profile,N,value,closed_form\r\n"
               << csv_field(int_profile) << ',' << int_N << ',' << fmt(total.value) << ','
               << (total.closed_form ? fmt(*total.closed_form) : "") << "\r\n";
      } else {
        buffer << "integral: " << fmt(total.value) << '\n';
        if (total.closed_form) buffer << "closed form: " << fmt(*total.closed_form) << '\n';
        if (cut) buffer << "cutoff-weighted: " << fmt(cut->value) << '\n';
      }
    } else if (probe->parsed()) {
      ProbeConfig cfg;
      cfg.pp = pf.params();
      cfg.kappa = kappa;
      cfg.ell = ell;
      cfg.R_grid = R_grid;
      cfg.theta = theta;
      cfg.quad = quad;
      cfg.validate();
      const InitialValue f =
          make_initial_value(parse_profile(probe_profile, cfg.pp.N, parse_part(probe_part)));
      const SweepResult s = sweep(cfg, f);
      const std::string csv = probe_csv(s.rows);
      if (!csv_path.empty()) {
        std::ofstream cf_out(csv_path, std::ios::binary);
        if (!cf_out) throw DomainError("cannot write '" + csv_path + "'");
        cf_out << csv;
      }
      if (g.format == "csv") {
        buffer << csv;
      } else if (g.format == "json") {
        Json j = schema_object();
        j["command"] = "probe";
        j["params"] = to_json(cfg.pp);
        j["kappa"] = cfg.resolved_kappa();
        j["ell"] = cfg.resolved_ell();
        const Json body = to_json(s);
        for (const auto& [k, v] : body.items()) j[k] = v;
        buffer << dump_json(j);
      } else {
        buffer << "slope " << fmt(s.slope) << " vs decay exponent " << fmt(s.decay_exponent)
               << '\n';
        buffer << "R exponents " << fmt(s.exponents.first) << ' ' << fmt(s.exponents.second)
               << (s.exponents_equal ? " (equal)" : " (not equal)") << '\n';
        buffer << (s.contradiction_regime ? "contradiction regime" : "no contradiction regime")
               << '\n';
      }
      if (g.format != "text") {
        err << "slope " << fmt(s.slope) << " vs decay exponent " << fmt(s.decay_exponent) << '\n';
      }
    }
  } catch (const RegimeError& e) {
    err << "regime error: " << e.what() << '\n';
    return kRegime;
  } catch (const QuadratureError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumerical;
  } catch (const DivergentIntegral& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumerical;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  if (g.out_path.empty()) {
    out_stream << buffer.str();
  } else {
    std::ofstream f(g.out_path, std::ios::binary);
    if (!f) {
      err << "error: cannot write '" << g.out_path << "'\n";
      return kUsage;
    }
    f << buffer.str();
  }
  return code;
}

}  // namespace hfrac::cli
