#include "hadamard_frac/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace hfrac {

namespace {

std::string fmt17(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json opt(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

void emit(const Json& j, std::ostringstream& os, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    bool first = true;
    for (const auto& [k, v] : j.items()) {
      if (!first) os << ",\n";
      first = false;
      os << pad << Json(k).dump() << ": ";
      emit(v, os, depth + 1);
    }
    os << '\n' << close << '}';
  } else if (j.is_array()) {
    if (j.empty()) {
      os << "[]";
      return;
    }
    os << "[\n";
    bool first = true;
    for (const auto& v : j) {
      if (!first) os << ",\n";
      first = false;
      os << pad;
      emit(v, os, depth + 1);
    }
    os << '\n' << close << ']';
  } else if (j.is_number_float()) {
    os << fmt17(j.get<double>());
  } else {
    os << j.dump();
  }
}

}  // namespace

Json schema_object() {
  Json j = Json::object();
  j["schema"] = kSchema;
  return j;
}

Json to_json(const ProblemParams& pp) {
  Json j = Json::object();
  j["alpha"] = pp.alpha;
  j["gamma"] = pp.gamma;
  j["N"] = pp.N;
  j["p"] = pp.p;
  j["lambda1"] = pp.lambda1;
  j["lambda2"] = pp.lambda2;
  j["a"] = pp.a;
  return j;
}

Json to_json(const CriterionReport& r) {
  Json j = Json::object();
  j["verdict"] = to_string(r.verdict);
  j["p"] = r.p;
  j["p_lower"] = r.p_lower;
  j["p_upper_T1"] = opt(r.p_upper_T1);
  j["p_upper_T2"] = opt(r.p_upper_T2);
  j["p_upper_combined"] = opt(r.p_upper_combined);
  j["active_branch"] = r.active_branch ? Json(to_string(*r.active_branch)) : Json(nullptr);
  j["sign_functionals"] = {{"I1", r.sign.I1}, {"I2", r.sign.I2}};
  j["duality"] = {{"r_alpha", r.duality.r_alpha}, {"s_alpha", r.duality.s_alpha}};
  Json conds = Json::array();
  for (const auto& c : r.conditions) {
    conds.push_back({{"name", c.name}, {"holds", c.holds}, {"margin", opt(c.margin)}});
  }
  j["conditions"] = conds;
  j["failed"] = r.failed();
  j["comparison_exponents"] = {{"kirane_nabti", opt(r.comparison_exponents.kirane_nabti)},
                               {"fujita", r.comparison_exponents.fujita}};
  j["note"] = r.note;
  return j;
}

Json to_json(const ProbeRow& row) {
  Json j = Json::object();
  j["R"] = row.R;
  j["log_span"] = row.log_span;
  j["T"] = row.T;
  j["K11_quad"] = row.K11_quad;
  j["K11_bound"] = row.K11_bound;
  j["K12"] = row.K12;
  j["K21_quad"] = row.K21_quad;
  j["K21_bound"] = row.K21_bound;
  j["K22"] = row.K22;
  j["K22_bound"] = row.K22_bound;
  j["K1"] = row.K1;
  j["K2"] = row.K2;
  j["lhs"] = row.lhs;
  j["lhs_weighted"] = row.lhs_weighted;
  j["rhs_term1"] = row.rhs_term1;
  j["rhs_term2"] = row.rhs_term2;
  j["rhs_bound"] = row.rhs_bound;
  j["decay_exponent"] = row.decay_exponent;
  j["exponent1"] = row.exponent1;
  j["exponent2"] = row.exponent2;
  return j;
}

Json to_json(const SweepResult& s) {
  Json j = Json::object();
  j["theta"] = s.theta;
  j["functional"] = s.functional == 1 ? "I1" : "I2";
  j["slope"] = s.slope;
  j["decay_exponent"] = s.decay_exponent;
  j["exponent1"] = s.exponents.first;
  j["exponent2"] = s.exponents.second;
  j["exponents_equal"] = s.exponents_equal;
  j["contradiction_regime"] = s.contradiction_regime;
  j["regime"] = s.contradiction_regime ? "contradiction regime" : "no contradiction regime";
  bool k11 = true;
  bool k21 = true;
  bool k22 = true;
  for (const auto& r : s.rows) {
    k11 = k11 && r.k11_ok(1e-9);
    k21 = k21 && r.k21_ok(1e-9);
    k22 = k22 && r.k22_ok(1e-9);
  }
  j["K11_within_bound"] = k11;
  j["K21_within_bound"] = k21;
  j["K22_within_bound"] = k22;
  Json rows = Json::array();
  for (const auto& r : s.rows) rows.push_back(to_json(r));
  j["rows"] = rows;
  return j;
}

Json to_json(const VerifyReport& r) {
  Json j = Json::object();
  j["passed"] = r.passed;
  j["worst_relative_error"] = r.worst;
  Json suites = Json::array();
  for (const auto& s : r.suites) {
    Json sj = Json::object();
    sj["name"] = s.name;
    sj["passed"] = s.passed;
    sj["checks"] = s.checks.size();
    sj["worst"] = s.worst;
    sj["failing"] = s.failing();
    suites.push_back(sj);
  }
  j["suites"] = suites;
  return j;
}

Json to_json(const RadialIntegral& r) {
  Json j = Json::object();
  j["value"] = r.value;
  j["error"] = r.error;
  j["r_max"] = r.r_max;
  j["closed_form"] = opt(r.closed_form);
  j["relative_difference"] =
      r.closed_form ? Json(std::abs(r.value - *r.closed_form) / std::abs(*r.closed_form))
                    : Json(nullptr);
  return j;
}

Json to_json(const WeakResiduals& w) {
  Json j = Json::object();
  j["res1"] = w.res1;
  j["res2"] = w.res2;
  j["nonlinear"] = w.nonlinear;
  j["initial1"] = w.initial1;
  j["initial2"] = w.initial2;
  j["laplacian1"] = w.laplacian1;
  j["laplacian2"] = w.laplacian2;
  j["time1"] = w.time1;
  j["time2"] = w.time2;
  return j;
}

std::string dump_json(const Json& j) {
  std::ostringstream os;
  emit(j, os, 0);
  os << '\n';
  return os.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

const std::vector<std::string>& probe_csv_header() {
  static const std::vector<std::string> h{
      "R",         "log_span",  "T",          "K11_quad",     "K11_bound",
      "K12",       "K21_quad",  "K21_bound",  "K22",          "K22_bound",
      "K1",        "K2",        "lhs",        "lhs_weighted", "rhs_term1",
      "rhs_term2", "rhs_bound", "decay_exponent", "exponent1", "exponent2"};
  return h;
}

std::string probe_csv(const std::vector<ProbeRow>& rows) {
  std::ostringstream os;
  const auto& h = probe_csv_header();
  for (std::size_t i = 0; i < h.size(); ++i) os << (i ? "," : "") << csv_field(h[i]);
  os << "\r\n";
  for (const auto& r : rows) {
    const Json j = to_json(r);
    bool first = true;
    for (const auto& name : h) {
      const double v = j[name].get<double>();
      os << (first ? "" : ",") << (std::isfinite(v) ? fmt17(v) : std::string("inf"));
      first = false;
    }
    os << "\r\n";
  }
  return os.str();
}

}  // namespace hfrac
