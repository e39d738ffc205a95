// Command-line front end: kernel coefficient export, verification suites,
// and pairwise equivalence comparison of parameter sets.
//
// Exit codes: 0 success, 1 verification/consistency failures, 2 usage or
// parameter errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <homogop/verify.hpp>

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    const double v = std::stod(item, &pos);
    while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
    if (pos != item.size()) throw std::invalid_argument("bad number: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty number list");
  return out;
}

homogop::ParameterSet make_params(int m, double lambda, const std::string& mu_csv) {
  if (mu_csv.empty()) return homogop::ParameterSet(m, lambda);
  return homogop::ParameterSet(m, lambda, parse_doubles(mu_csv));
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string iso_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << text;
}

json params_json(const homogop::ParameterSet& p) {
  return json{{"m", p.m}, {"lambda", p.lambda}, {"mu", p.mu}};
}

json matrix_json(const homogop::Matrix& A) {
  json re = json::array(), im = json::array();
  for (Eigen::Index r = 0; r < A.rows(); ++r) {
    json re_row = json::array(), im_row = json::array();
    for (Eigen::Index c = 0; c < A.cols(); ++c) {
      re_row.push_back(A(r, c).real());
      im_row.push_back(A(r, c).imag());
    }
    re.push_back(re_row);
    im.push_back(im_row);
  }
  return json{{"re", re}, {"im", im}};
}

std::optional<double> resolve_tol(bool flag_given, double flag_value) {
  if (flag_given) return flag_value;
  if (const char* env = std::getenv("HOMOGOP_TOL")) return std::stod(env);
  return std::nullopt;
}

struct VerifyOpts {
  int m = 0;
  double lambda = 1.0;
  std::string mu, suite = "all", format = "json", out;
  int degree = 12, n_max = 200;
  uint64_t seed = 0;
  double tol = 0.0;
  bool deterministic = false;
};

int cmd_verify(const VerifyOpts& vo, bool tol_given) {
  const homogop::ParameterSet p = make_params(vo.m, vo.lambda, vo.mu);
  homogop::SuiteOptions so;
  so.degree = vo.degree;
  so.n_max = vo.n_max;
  so.seed = vo.seed;
  so.tol_override = resolve_tol(tol_given, vo.tol);

  std::vector<homogop::CheckResult> checks = homogop::run_suite(p, so, vo.suite);
  if (vo.deterministic)
    for (auto& c : checks) c.runtime_ms = 0.0;

  int passed = 0, failed = 0;
  for (const auto& c : checks) (c.passed ? passed : failed)++;

  std::string text;
  if (vo.format == "csv") {
    std::string s = "name,status,value,tolerance,runtime_ms\n";
    for (const auto& c : checks)
      s += c.name + "," + (c.passed ? "pass" : "fail") + "," + fmt17(c.value) + "," +
           fmt17(c.tolerance) + "," + fmt17(c.runtime_ms) + "\n";
    text = s;
  } else {
    json j;
    j["config"] = {{"m", p.m},
                   {"lambda", p.lambda},
                   {"mu", p.mu},
                   {"suite", vo.suite},
                   {"degree", vo.degree},
                   {"n_max", vo.n_max},
                   {"seed", vo.seed},
                   {"deterministic", vo.deterministic}};
    j["config"]["tolerance_override"] =
        so.tol_override ? json(*so.tol_override) : json(nullptr);
    json arr = json::array();
    for (const auto& c : checks)
      arr.push_back({{"name", c.name},
                     {"status", c.passed ? "pass" : "fail"},
                     {"value", c.value},
                     {"tolerance", c.tolerance},
                     {"runtime_ms", c.runtime_ms}});
    j["checks"] = arr;
    j["summary"] = {{"passed", passed}, {"failed", failed}};
    if (!vo.deterministic) j["timestamp"] = iso_timestamp();
    text = j.dump(2) + "\n";
  }
  write_output(text, vo.out);
  return failed == 0 ? 0 : 1;
}

struct KernelOpts {
  int m = 0;
  double lambda = 1.0;
  std::string mu, format = "csv", out, eval;
  int degree = 12;
};

int cmd_kernel(const KernelOpts& ko) {
  const homogop::ParameterSet p = make_params(ko.m, ko.lambda, ko.mu);

  if (!ko.eval.empty()) {
    const std::vector<double> z2 = parse_doubles(ko.eval);
    if (z2.size() != 2) throw std::invalid_argument("--eval expects 're,im'");
    const homogop::cplx z(z2[0], z2[1]);
    const homogop::Matrix K = homogop::kernel_eval(p, z, z);
    json j;
    j["params"] = params_json(p);
    j["z"] = {{"re", z.real()}, {"im", z.imag()}};
    j["kernel"] = matrix_json(K);
    write_output(j.dump(2) + "\n", ko.out);
    return 0;
  }

  const homogop::BiSeries K = homogop::kernel_closed_form(p, ko.degree);
  if (ko.format == "json") {
    json j;
    j["params"] = params_json(p);
    j["degree"] = ko.degree;
    j["dim"] = p.dim();
    json arr = json::array();
    for (int s = 0; s <= ko.degree; ++s)
      for (int t = 0; t <= ko.degree; ++t)
        arr.push_back({{"s", s}, {"t", t}, {"matrix", matrix_json(K.coeff(s, t))}});
    j["coefficients"] = arr;
    write_output(j.dump(2) + "\n", ko.out);
  } else {
    std::string s = "s,t,row,col,re,im\n";
    for (int si = 0; si <= ko.degree; ++si)
      for (int ti = 0; ti <= ko.degree; ++ti) {
        const homogop::Matrix& A = K.coeff(si, ti);
        for (int r = 0; r < p.dim(); ++r)
          for (int c = 0; c < p.dim(); ++c)
            s += std::to_string(si) + "," + std::to_string(ti) + "," + std::to_string(r) +
                 "," + std::to_string(c) + "," + fmt17(A(r, c).real()) + "," +
                 fmt17(A(r, c).imag()) + "\n";
      }
    write_output(s, ko.out);
  }
  return 0;
}

struct CompareOpts {
  std::vector<std::string> sets;
  std::string out;
  double tol = 1e-12;
};

int cmd_compare(const CompareOpts& co, bool tol_given) {
  if (co.sets.size() < 2)
    throw std::invalid_argument("compare requires at least two --set arguments");
  const double tol = resolve_tol(tol_given, co.tol).value_or(1e-12);

  std::vector<homogop::ParameterSet> ps;
  for (const auto& s : co.sets) {
    const std::vector<double> v = parse_doubles(s);
    if (v.size() < 2) throw std::invalid_argument("--set expects 'm,lambda[,mu0,...]'");
    const int m = static_cast<int>(v[0]);
    if (double(m) != v[0]) throw std::invalid_argument("first --set entry must be an integer m");
    if (v.size() == 2) {
      ps.emplace_back(m, v[1]);
    } else {
      ps.emplace_back(m, v[1], std::vector<double>(v.begin() + 2, v.end()));
    }
  }

  const size_t n = ps.size();
  json eq = json::array(), inv = json::array();
  bool consistent = true;
  for (size_t i = 0; i < n; ++i) {
    json eq_row = json::array(), inv_row = json::array();
    for (size_t j = 0; j < n; ++j) {
      const bool by_params = homogop::equivalence_check(ps[i], ps[j], tol);
      // Independent route: the truncation parameter and the kernel value at
      // the origin together determine the parameter set.
      const bool lambda_match = std::abs(ps[i].lambda - ps[j].lambda) <= tol;
      const homogop::Matrix Bi = homogop::kernel_at_origin(ps[i]);
      const homogop::Matrix Bj = homogop::kernel_at_origin(ps[j]);
      const double scale = std::max(1.0, Bi.cwiseAbs().maxCoeff());
      const bool origin_match = (Bi - Bj).cwiseAbs().maxCoeff() <= tol * scale;
      eq_row.push_back(by_params);
      inv_row.push_back(lambda_match && origin_match);
      if (by_params != (lambda_match && origin_match)) consistent = false;
    }
    eq.push_back(eq_row);
    inv.push_back(inv_row);
  }

  json j;
  json sets = json::array();
  for (const auto& p : ps) sets.push_back(params_json(p));
  j["sets"] = sets;
  j["tolerance"] = tol;
  j["equivalent"] = eq;
  j["invariant_match"] = inv;
  j["consistent"] = consistent;
  write_output(j.dump(2) + "\n", co.out);
  return consistent ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homogeneous multiplication operators on vector-valued disc spaces",
               "homogop"};
  app.require_subcommand(1);

  VerifyOpts vo;
  CLI::App* v = app.add_subcommand("verify", "Run a verification suite and write a report");
  v->add_option("suite", vo.suite,
                "Suite selector: all, cocycle, quasi, leibniz, blocks, bounded, "
                "irreducible, pattern");
  v->add_option("--m", vo.m, "Truncation parameter (component count minus one)");
  v->add_option("--lambda", vo.lambda, "Weight parameter; must exceed m/2");
  v->add_option("--mu", vo.mu, "Comma-separated component weights mu0,...,mum (mu0 = 1)");
  v->add_option("--degree", vo.degree, "Series truncation order");
  v->add_option("--n-max", vo.n_max, "Operator truncation for norm estimates");
  v->add_option("--seed", vo.seed, "Sampling seed");
  CLI::Option* vtol = v->add_option("--tol", vo.tol, "Override every check tolerance");
  v->add_option("--format", vo.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));
  v->add_option("--out", vo.out, "Write the report to this file instead of stdout");
  v->add_flag("--deterministic", vo.deterministic,
              "Zero runtimes and omit the timestamp for byte-stable output");

  KernelOpts ko;
  CLI::App* k = app.add_subcommand("kernel", "Export kernel coefficients or evaluate at a point");
  k->add_option("--m", ko.m, "Truncation parameter (component count minus one)");
  k->add_option("--lambda", ko.lambda, "Weight parameter; must exceed m/2");
  k->add_option("--mu", ko.mu, "Comma-separated component weights mu0,...,mum (mu0 = 1)");
  k->add_option("--degree", ko.degree, "Series truncation order");
  k->add_option("--format", ko.format, "Coefficient output format")
      ->check(CLI::IsMember({"csv", "json"}));
  k->add_option("--out", ko.out, "Write output to this file instead of stdout");
  k->add_option("--eval", ko.eval, "Evaluate the kernel at z given as 're,im' (JSON output)");

  CompareOpts co;
  CLI::App* c = app.add_subcommand("compare", "Pairwise equivalence of parameter sets");
  c->add_option("--set", co.sets, "Parameter set as 'm,lambda[,mu0,...]'; repeatable")
      ->take_all();
  CLI::Option* ctol = c->add_option("--tol", co.tol, "Equality tolerance");
  c->add_option("--out", co.out, "Write output to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 2;
  }

  try {
    if (*v) return cmd_verify(vo, vtol->count() > 0);
    if (*k) return cmd_kernel(ko);
    if (*c) return cmd_compare(co, ctol->count() > 0);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
