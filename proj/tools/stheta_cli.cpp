// Command-line front end. Talks to the library only through stheta.h.
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "stheta/stheta.h"

namespace {

// Exit codes: 0 success or all checks passed, 1 a check or criterion
// failed, 2 bad input or library error.
constexpr int kExitFail = 1;
constexpr int kExitError = 2;

int report_error(stheta_status s) {
  std::cerr << "stheta: " << stheta_status_name(s) << ": " << stheta_last_error() << "\n";
  return kExitError;
}

std::string take(char* s) {
  std::string out = s ? s : "";
  stheta_string_free(s);
  return out;
}

std::vector<double> numbers(const std::string& text) {
  std::string t = text;
  for (char& c : t)
    if (c == ',' || c == ';') c = ' ';
  std::istringstream in(t);
  std::vector<double> v;
  double x;
  while (in >> x) v.push_back(x);
  if (!in.eof()) throw CLI::ValidationError("not a list of numbers: " + text);
  return v;
}

std::vector<long> integers(const std::string& text) {
  std::vector<long> out;
  for (double d : numbers(text)) {
    if (d != std::floor(d)) throw CLI::ValidationError("not an integer: " + std::to_string(d));
    out.push_back(static_cast<long>(d));
  }
  return out;
}

bool write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return true;
  }
  std::ofstream out(path);
  out << text;
  if (!out) {
    std::cerr << "stheta: cannot write " << path << "\n";
    return false;
  }
  return true;
}

struct VerifyArgs {
  std::vector<std::string> suites;
  std::vector<long> primes;
  double tol = 0;
  double theta_tol = 0;
  long long seed = -1;
  std::string config_path;
  std::string out;
  bool no_runtime = false;
};

int run_verify(const VerifyArgs& a) {
  nlohmann::json cfg = nlohmann::json::object();
  if (!a.config_path.empty()) {
    std::ifstream in(a.config_path);
    if (!in) {
      std::cerr << "stheta: cannot read " << a.config_path << "\n";
      return kExitError;
    }
    try {
      cfg = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      std::cerr << "stheta: invalid config: " << e.what() << "\n";
      return kExitError;
    }
  }
  if (!a.suites.empty()) {
    // "all" expands, "none" selects nothing
    if (a.suites.size() == 1 && a.suites[0] == "none") cfg["suites"] = nlohmann::json::array();
    else if (!(a.suites.size() == 1 && a.suites[0] == "all")) cfg["suites"] = a.suites;
  }
  if (!a.primes.empty()) cfg["primes"] = a.primes;
  if (a.tol != 0) cfg["tol_numeric"] = a.tol;
  if (a.theta_tol != 0) cfg["theta_tol"] = a.theta_tol;
  if (a.seed >= 0) cfg["seed"] = a.seed;

  char* report = nullptr;
  int exit_status = 0;
  const stheta_status s = stheta_run_suite(cfg.dump().c_str(), a.no_runtime ? 0 : 1, &report, &exit_status);
  if (s != STHETA_OK) return report_error(s);
  const std::string text = take(report);
  if (!write_output(text, a.out)) return kExitError;
  if (!a.out.empty() && a.out != "-") {
    const auto j = nlohmann::json::parse(text);
    std::cout << "pass " << j["summary"]["pass"] << ", fail " << j["summary"]["fail"] << ", skip "
              << j["summary"]["skip"] << "\n";
  }
  return exit_status == 0 ? 0 : kExitFail;
}

struct PointArgs {
  std::string re, im;
  bool cm_point = false;
  double tol = 0;
};

// Caller owns the returned point.
stheta_status make_point(const PointArgs& a, int genus, stheta_siegel_point** out) {
  if (a.cm_point) {
    stheta_cm_context* ctx = nullptr;
    stheta_status s = stheta_cm_context_new(a.tol, &ctx);
    if (s != STHETA_OK) return s;
    s = stheta_cm_point(ctx, out);
    stheta_cm_context_free(ctx);
    return s;
  }
  std::vector<double> re, im;
  const auto n = static_cast<std::size_t>(genus * genus);
  if (a.re.empty() && a.im.empty()) {
    // default i I
    re.assign(n, 0.0);
    im.assign(n, 0.0);
    for (int i = 0; i < genus; ++i) im[static_cast<std::size_t>(i * genus + i)] = 1.0;
  } else {
    re = a.re.empty() ? std::vector<double>(n, 0.0) : numbers(a.re);
    im = numbers(a.im);
  }
  if (re.size() != n || im.size() != n)
    throw CLI::ValidationError("--re and --im need " + std::to_string(n) + " entries for genus " +
                               std::to_string(genus));
  return stheta_siegel_point_new(genus, re.data(), im.data(), out);
}

int genus_of(const std::string& chi) {
  std::string t = chi;
  for (char& c : t)
    if (c == ',') c = ' ';
  std::istringstream in(t);
  std::string tok;
  int count = 0;
  while (in >> tok) ++count;
  if (count == 0 || count % 2) throw CLI::ValidationError("characteristic needs 2g entries");
  return count / 2;
}

std::string complex_json(double re, double im) {
  nlohmann::ordered_json j = {re, im};
  return j.dump();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Theta constants with rational characteristics: evaluation, modularity, actions and checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(stheta_version()));

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Run the verification suites and write a JSON report");
  v->add_option("--suite", verify.suites, "theta, modularity, action, cm, primgen, all or none (repeatable)");
  v->add_option("--p", verify.primes, "Odd primes for the cm suite (repeatable)");
  v->add_option("--tol", verify.tol, "Numeric tolerance scale (default 1e-8)");
  v->add_option("--theta-tol", verify.theta_tol, "Theta series truncation target (default 1e-12)");
  v->add_option("--seed", verify.seed, "Random seed")->check(CLI::NonNegativeNumber);
  v->add_option("--config", verify.config_path, "JSON config file; flags override it")->check(CLI::ExistingFile);
  v->add_option("--out", verify.out, "Report path (default stdout)");
  v->add_flag("--no-runtime", verify.no_runtime, "Omit runtimes so equal seeds give identical reports");

  std::string chi;
  PointArgs point;
  bool want_phi = false;
  auto* t = app.add_subcommand("theta", "Evaluate Theta(0, Z; r, s) or Phi at one point");
  t->add_option("--chi", chi, "Characteristic \"r1 .. rg s1 .. sg\"")->required();
  t->add_option("--re", point.re, "Re Z, g*g entries row-major");
  t->add_option("--im", point.im, "Im Z, g*g entries row-major (default I)");
  t->add_flag("--cm-point", point.cm_point, "Use the CM point Z0 of Q(zeta_5)");
  t->add_flag("--phi", want_phi, "Divide by Theta(0, Z; 0, 0)");
  t->add_option("--tol", point.tol, "Truncation target (default 1e-12)");

  std::string product_path;
  PointArgs eval_point;
  bool eval = false;
  auto* m = app.add_subcommand("modularity", "Check a theta product file against the family criterion");
  m->add_option("file", product_path, "Product file")->required()->check(CLI::ExistingFile);
  m->add_flag("--eval", eval, "Also evaluate the product at Z");
  m->add_option("--re", eval_point.re, "Re Z for --eval");
  m->add_option("--im", eval_point.im, "Im Z for --eval");
  m->add_option("--tol", eval_point.tol, "Truncation target for --eval");

  std::string x_text = "1 2 0 0 0", act_chi;
  long p = 3;
  bool belong = false;
  double act_tol = 0;
  auto* a = app.add_subcommand("action", "Apply the Galois action of x at the CM point");
  a->add_option("--x", x_text, "x = a0 + a1 zeta + .. + a4 zeta^4 as five integers");
  a->add_option("--p", p, "Odd prime");
  a->add_option("--chi", act_chi, "Characteristic in (1/p)Z^4");
  a->add_flag("--belong", belong, "Print the membership criterion for x instead");
  a->add_option("--tol", act_tol, "Truncation target");

  auto* g = app.add_subcommand("primgen", "Run the primitive-generator demonstrations");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*v) return run_verify(verify);

    if (*t) {
      stheta_siegel_point* z = nullptr;
      stheta_status s = make_point(point, genus_of(chi), &z);
      if (s != STHETA_OK) return report_error(s);
      double re = 0, im = 0;
      s = want_phi ? stheta_phi_eval(z, chi.c_str(), point.tol, &re, &im)
                   : stheta_theta_eval(z, chi.c_str(), point.tol, &re, &im);
      stheta_siegel_point_free(z);
      if (s != STHETA_OK) return report_error(s);
      std::cout << "{\"value\": " << complex_json(re, im) << "}\n";
      return 0;
    }

    if (*m) {
      std::ifstream in(product_path);
      std::stringstream buf;
      buf << in.rdbuf();
      stheta_product* prod = nullptr;
      stheta_status s = stheta_product_parse(buf.str().c_str(), &prod);
      if (s != STHETA_OK) return report_error(s);
      int ok = 0;
      char* diag = nullptr;
      s = stheta_product_check(prod, &ok, &diag);
      if (s != STHETA_OK) {
        stheta_product_free(prod);
        return report_error(s);
      }
      nlohmann::ordered_json j;
      j["belongs"] = ok != 0;
      j["diagnostic"] = take(diag);
      if (eval) {
        stheta_siegel_point* z = nullptr;
        s = make_point(eval_point, stheta_product_genus(prod), &z);
        double re = 0, im = 0;
        if (s == STHETA_OK) s = stheta_product_eval(prod, z, eval_point.tol, &re, &im);
        stheta_siegel_point_free(z);
        if (s != STHETA_OK) {
          stheta_product_free(prod);
          return report_error(s);
        }
        j["value"] = {re, im};
      }
      stheta_product_free(prod);
      std::cout << j.dump(2) << "\n";
      return ok ? 0 : kExitFail;
    }

    if (*a) {
      const auto coords = integers(x_text);
      if (coords.size() != 5) throw CLI::ValidationError("--x needs five integers");
      char* out = nullptr;
      stheta_status s;
      if (belong) {
        s = stheta_belong_criterion(coords.data(), p, &out);
      } else {
        if (act_chi.empty()) act_chi = "1/" + std::to_string(p) + " 0 0 0";
        stheta_cm_context* ctx = nullptr;
        s = stheta_cm_context_new(act_tol, &ctx);
        if (s == STHETA_OK) s = stheta_artin_action(ctx, coords.data(), p, act_chi.c_str(), &out);
        stheta_cm_context_free(ctx);
      }
      if (s != STHETA_OK) return report_error(s);
      std::cout << take(out);
      return 0;
    }

    if (*g) {
      char* out = nullptr;
      const stheta_status s = stheta_primgen_demo(&out);
      if (s != STHETA_OK) return report_error(s);
      std::cout << take(out);
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "stheta: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
