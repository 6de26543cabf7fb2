#include "stheta/stheta.h"

#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>

#include "json.hpp"

#include "stheta/cmfield.hpp"
#include "stheta/harness.hpp"
#include "stheta/modularity.hpp"
#include "stheta/primgen.hpp"
#include "stheta/theta.hpp"

struct stheta_siegel_point {
  stheta::SiegelPoint z;
};

struct stheta_product {
  stheta::ThetaProduct product;
};

struct stheta_cm_context {
  stheta::CMContext ctx;
};

namespace {

thread_local std::string last_error;

stheta_status fail(stheta_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

// Runs f, translating exceptions into status codes. invalid_argument maps to
// `invalid`, which callers set to PARSE or DOMAIN where that is the meaning.
template <class F>
stheta_status guard(F&& f, stheta_status invalid = STHETA_INVALID_ARGUMENT) {
  try {
    f();
    last_error.clear();
    return STHETA_OK;
  } catch (const stheta::NumericError& e) {
    return fail(STHETA_NUMERIC, e.what());
  } catch (const std::domain_error& e) {
    return fail(STHETA_DOMAIN, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(invalid, e.what());
  } catch (const std::exception& e) {
    return fail(STHETA_INTERNAL, e.what());
  } catch (...) {
    return fail(STHETA_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

stheta::EvalSettings settings_for(double tol) {
  stheta::EvalSettings s;
  if (tol > 0) s.tol = tol;
  return s;
}

void require(bool cond, const char* what) {
  if (!cond) throw std::invalid_argument(what);
}

stheta::Characteristic parse_chi(const char* text) {
  require(text != nullptr, "characteristic is null");
  return stheta::Characteristic::parse(text);
}

nlohmann::ordered_json complex_json(std::complex<double> v) { return {v.real(), v.imag()}; }

std::array<stheta::Integer, 5> coords_of(const long c[5]) {
  require(c != nullptr, "coordinates are null");
  return {c[0], c[1], c[2], c[3], c[4]};
}

}  // namespace

extern "C" {

const char* stheta_version(void) { return "0.1.0"; }

const char* stheta_last_error(void) { return last_error.c_str(); }

const char* stheta_status_name(stheta_status status) {
  switch (status) {
    case STHETA_OK: return "ok";
    case STHETA_INVALID_ARGUMENT: return "invalid argument";
    case STHETA_DOMAIN: return "domain error";
    case STHETA_NUMERIC: return "numeric error";
    case STHETA_PARSE: return "parse error";
    case STHETA_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void stheta_string_free(char* s) { std::free(s); }

stheta_status stheta_siegel_point_new(int g, const double* re, const double* im, stheta_siegel_point** out) {
  return guard([&] {
    require(out && re && im, "null argument");
    require(g >= 1 && g <= 8, "genus must be between 1 and 8");
    Eigen::MatrixXcd z(g, g);
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j) z(i, j) = {re[i * g + j], im[i * g + j]};
    *out = new stheta_siegel_point{stheta::SiegelPoint(z)};
  }, STHETA_DOMAIN);
}

void stheta_siegel_point_free(stheta_siegel_point* z) { delete z; }

int stheta_siegel_point_genus(const stheta_siegel_point* z) { return z ? static_cast<int>(z->z.g()) : 0; }

stheta_status stheta_theta_eval(const stheta_siegel_point* z, const char* chi, double tol, double* re,
                                double* im) {
  return guard([&] {
    require(z && re && im, "null argument");
    const auto c = parse_chi(chi);
    const auto v = stheta::theta_eval(Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(z->z.g())), z->z, c,
                                      settings_for(tol));
    *re = v.real();
    *im = v.imag();
  });
}

stheta_status stheta_phi_eval(const stheta_siegel_point* z, const char* chi, double tol, double* re, double* im) {
  return guard([&] {
    require(z && re && im, "null argument");
    const auto v = stheta::phi_eval(parse_chi(chi), z->z, settings_for(tol));
    *re = v.real();
    *im = v.imag();
  });
}

stheta_status stheta_product_parse(const char* text, stheta_product** out) {
  return guard([&] {
    require(text && out, "null argument");
    *out = new stheta_product{stheta::parse_product(text)};
  }, STHETA_PARSE);
}

void stheta_product_free(stheta_product* p) { delete p; }

int stheta_product_genus(const stheta_product* p) { return p ? static_cast<int>(p->product.g()) : 0; }

long stheta_product_level(const stheta_product* p) { return p ? p->product.level().get_si() : 0; }

stheta_status stheta_product_format(const stheta_product* p, char** text) {
  return guard([&] {
    require(p && text, "null argument");
    *text = dup_string(stheta::format_product(p->product));
  });
}

stheta_status stheta_product_check(const stheta_product* p, int* ok, char** diagnostic) {
  return guard([&] {
    require(p && ok, "null argument");
    const auto r = stheta::check_family(p->product, p->product.level());
    *ok = r.ok ? 1 : 0;
    if (diagnostic) *diagnostic = dup_string(r.diagnostic());
  });
}

stheta_status stheta_product_eval(const stheta_product* p, const stheta_siegel_point* z, double tol, double* re,
                                  double* im) {
  return guard([&] {
    require(p && z && re && im, "null argument");
    const auto v = p->product.evaluate(z->z, settings_for(tol));
    *re = v.real();
    *im = v.imag();
  });
}

stheta_status stheta_cm_context_new(double theta_tol, stheta_cm_context** out) {
  return guard([&] {
    require(out != nullptr, "null argument");
    *out = new stheta_cm_context{stheta::CMContext::build(settings_for(theta_tol))};
  });
}

void stheta_cm_context_free(stheta_cm_context* ctx) { delete ctx; }

stheta_status stheta_cm_point(const stheta_cm_context* ctx, stheta_siegel_point** out) {
  return guard([&] {
    require(ctx && out, "null argument");
    *out = new stheta_siegel_point{ctx->ctx.z0};
  });
}

stheta_status stheta_artin_action(const stheta_cm_context* ctx, const long coords[5], long p, const char* chi,
                                  char** json) {
  return guard([&] {
    require(ctx && json, "null argument");
    const auto c = parse_chi(chi);
    const auto x = stheta::from_coordinates(ctx->ctx.field, coords_of(coords));
    const auto r = stheta::artin_action(x, p, c, ctx->ctx);
    nlohmann::ordered_json j;
    j["x"] = x.to_string();
    j["p"] = p;
    j["chi"] = c.to_string();
    j["multiplier"] = stheta::to_string(r.multiplier.exponent());
    j["chi_out"] = r.chi_out.to_string();
    j["phi"] = complex_json(ctx->ctx.phi(c));
    j["image"] = complex_json(r.multiplier.value() * ctx->ctx.phi(r.chi_out));
    *json = dup_string(j.dump(2) + "\n");
  }, STHETA_DOMAIN);
}

stheta_status stheta_belong_criterion(const long coords[5], long p, char** json) {
  return guard([&] {
    require(json != nullptr, "null argument");
    const auto r = stheta::belong_criterion(coords_of(coords), p);
    nlohmann::ordered_json j;
    j["p"] = p;
    j["a"] = r.a.get_str();
    j["b"] = r.b.get_str();
    j["c"] = r.c.get_str();
    j["d"] = r.d.get_str();
    j["raw_value"] = r.raw_value.get_str();
    j["value"] = r.value.get_str();
    j["phase_value"] = r.phase_value.get_str();
    *json = dup_string(j.dump(2) + "\n");
  }, STHETA_DOMAIN);
}

stheta_status stheta_primgen_demo(char** json) {
  return guard([&] {
    require(json != nullptr, "null argument");
    using stheta::Rational;
    nlohmann::ordered_json j;

    const stheta::CycloField f25(25);
    const std::vector<long> h{1, 6, 11, 16, 21};
    j["trace_zeta25"] = stheta::rel_trace_norm(f25.zeta(1), h, stheta::TraceNorm::trace).to_string();
    j["norm_3zeta25_plus_1"] =
        stheta::rel_trace_norm(f25.zeta(1) * Rational(3) + f25.one(), h, stheta::TraceNorm::norm).to_string();

    const stheta::CycloField f8(8);
    const auto x = f8.zeta(1) + f8.zeta(7);
    const auto y = f8.zeta(2);
    const stheta::AbelianTower t(8, {1, 3, 5, 7}, {1, 7}, x, y);
    const auto e1 = stheta::combine_trace(t, f8.one(), f8.one());
    const auto e2 = stheta::combine_norm(t, 3, 1, 3, 1, 1, 1);
    nlohmann::ordered_json s;
    s["x"] = x.to_string();
    s["y"] = y.to_string();
    s["ell"] = t.ell();
    s["degree"] = t.degree();
    s["trace"] = {{"value", e1.to_string()},
                  {"degree", t.degree_over_base(e1)},
                  {"primitive", stheta::is_primitive(e1, t)}};
    s["norm"] = {{"value", e2.to_string()},
                 {"degree", t.degree_over_base(e2)},
                 {"primitive", stheta::is_primitive(e2, t)}};
    j["surrogate_tower"] = s;
    *json = dup_string(j.dump(2) + "\n");
  });
}

stheta_status stheta_run_suite(const char* config_json, int include_runtime, char** report_json,
                               int* exit_status) {
  return guard([&] {
    require(report_json && exit_status, "null argument");
    const auto cfg = stheta::parse_suite_config(config_json ? config_json : "{}");
    const auto report = stheta::run_suite(cfg);
    *report_json = dup_string(stheta::to_json(report, include_runtime != 0));
    *exit_status = report.exit_status();
  });
}

}  // extern "C"
