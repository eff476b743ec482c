#include <compnorm/compnorm.h>

#include <compnorm/catalog.hpp>
#include <compnorm/report.hpp>

#include <cstring>
#include <fstream>
#include <map>
#include <new>
#include <sstream>
#include <string>
#include <vector>

struct cn_map {
  compnorm::SelfMap map;
};

struct cn_result {
  std::string json;
  std::string csv;
  bool flagged = false;
  std::string verdict;
  std::map<std::string, double, std::less<>> scalars;
};

struct cn_measure {
  compnorm::EmpiricalMeasure mu;
};

namespace {

using namespace compnorm;

thread_local std::string last_error;

cn_status status_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::SyntaxError: return CN_ERR_SYNTAX;
    case ErrorCode::DomainError: return CN_ERR_DOMAIN;
    case ErrorCode::NotSelfMap: return CN_ERR_NOT_SELF_MAP;
    case ErrorCode::SingularBoundaryPoint: return CN_ERR_SINGULAR_BOUNDARY_POINT;
    case ErrorCode::PrecisionLoss: return CN_ERR_PRECISION_LOSS;
    case ErrorCode::BoundaryRootSuspected: return CN_ERR_BOUNDARY_ROOT_SUSPECTED;
    case ErrorCode::RegionOutsideDomain: return CN_ERR_REGION_OUTSIDE_DOMAIN;
    case ErrorCode::NonconvergentRoot: return CN_ERR_NONCONVERGENT_ROOT;
    case ErrorCode::CertificationMismatch: return CN_ERR_CERTIFICATION_MISMATCH;
    case ErrorCode::InfiniteValue: return CN_ERR_INFINITE_VALUE;
    case ErrorCode::NoConvergence: return CN_ERR_NO_CONVERGENCE;
    case ErrorCode::TruncationTooLoose: return CN_ERR_TRUNCATION_TOO_LOOSE;
    case ErrorCode::ResolutionExceeded: return CN_ERR_RESOLUTION_EXCEEDED;
    case ErrorCode::InvalidArgument: return CN_ERR_INVALID_ARGUMENT;
    case ErrorCode::IoError: return CN_ERR_IO;
  }
  return CN_ERR_INTERNAL;
}

// Runs f, translating exceptions into a status and the thread-local message.
template <class F>
cn_status guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return CN_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return CN_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return CN_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
}

cn_config resolve(const cn_config* c) {
  cn_config out;
  cn_config_default(&out);
  if (c) out = *c;
  return out;
}

QuadConfig quad_of(const cn_config& c) {
  QuadConfig q = profile_quad_config();
  q.abs_tol = c.abs_tol;
  q.rel_tol = c.rel_tol;
  q.max_nodes = c.max_nodes;
  q.validate();
  return q;
}

AngleBudget budget_of(const cn_config& c) {
  AngleBudget b;
  b.scale = c.angle_scale;
  b.min_angles = c.min_angles;
  b.max_angles = c.max_angles;
  if (!(b.scale > 0.0)) throw Error(ErrorCode::InvalidArgument, "angle scale must be > 0");
  b.validate();
  return b;
}

CountingOptions counting_of(const cn_config& c) {
  CountingOptions o;
  o.tol = c.preimage_tol;
  return o;
}

std::vector<double> radii_of(const double* radii, std::size_t n, const cn_config& c) {
  if (!radii) return default_schedule(c.kmax);
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "radius list is empty");
  return {radii, radii + n};
}

cn_status write_file(const std::string& text, const char* path) {
  return guarded([&] {
    need(path, "path");
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::IoError, std::string("cannot open '") + path + "' for writing");
    f << text;
    f.flush();
    if (!f) throw Error(ErrorCode::IoError, std::string("write to '") + path + "' failed");
  });
}

bool any_flag(const std::vector<std::string>& flags) {
  for (const auto& f : flags)
    if (!f.empty()) return true;
  return false;
}

}  // namespace

extern "C" {

const char* cn_version(void) { return "0.1.0"; }

const char* cn_status_name(cn_status s) {
  switch (s) {
    case CN_OK: return "ok";
    case CN_ERR_INTERNAL: return "InternalError";
    default: break;
  }
  if (s > CN_OK && s < CN_ERR_INTERNAL) {
    static const ErrorCode order[] = {
        ErrorCode::SyntaxError,           ErrorCode::DomainError,         ErrorCode::NotSelfMap,
        ErrorCode::SingularBoundaryPoint, ErrorCode::PrecisionLoss,       ErrorCode::BoundaryRootSuspected,
        ErrorCode::RegionOutsideDomain,   ErrorCode::NonconvergentRoot,   ErrorCode::CertificationMismatch,
        ErrorCode::InfiniteValue,         ErrorCode::NoConvergence,       ErrorCode::TruncationTooLoose,
        ErrorCode::ResolutionExceeded,    ErrorCode::InvalidArgument,     ErrorCode::IoError};
    return to_string(order[s - 1]).data();
  }
  return "unknown";
}

const char* cn_last_error(void) { return last_error.c_str(); }

const char* cn_grammar(void) { return map_grammar().data(); }

void cn_config_default(cn_config* c) {
  if (!c) return;
  const QuadConfig q = profile_quad_config();
  const AngleBudget b;
  c->abs_tol = q.abs_tol;
  c->rel_tol = q.rel_tol;
  c->max_nodes = q.max_nodes;
  c->angle_scale = b.scale;
  c->min_angles = b.min_angles;
  c->max_angles = b.max_angles;
  c->preimage_tol = CountingOptions{}.tol;
  c->kmax = 10;
  c->carleson = 0;
  c->carleson_atoms = 8192;
  c->has_seed = 0;
  c->seed = 0;
  c->timing = 0;
}

cn_status cn_map_parse(const char* spec, cn_map** out) {
  return guarded([&] {
    need(spec, "spec");
    need(out, "out");
    *out = nullptr;
    *out = new cn_map{SelfMap::parse(spec)};
  });
}

void cn_map_free(cn_map* map) { delete map; }

cn_status cn_map_eval(const cn_map* map, double re, double im, double* out_re, double* out_im) {
  return guarded([&] {
    need(map, "map");
    need(out_re, "out_re");
    need(out_im, "out_im");
    const Complex v = eval_map(map->map, {re, im});
    *out_re = v.real();
    *out_im = v.imag();
  });
}

cn_status cn_map_canonical(const cn_map* map, char* buf, size_t cap, size_t* needed) {
  return guarded([&] {
    need(map, "map");
    const std::string s = map->map.spec();
    if (needed) *needed = s.size() + 1;
    if (buf && cap > 0) {
      const std::size_t n = std::min(cap - 1, s.size());
      std::memcpy(buf, s.data(), n);
      buf[n] = '\0';
    }
  });
}

cn_status cn_counting_function(const cn_map* map, double re, double im, double* out) {
  return guarded([&] {
    need(map, "map");
    need(out, "out");
    *out = counting_function(map->map, {re, im}).value;
  });
}

cn_status cn_poisson_transform(const cn_map* map, double re, double im, const cn_config* config, double* out) {
  return guarded([&] {
    need(map, "map");
    need(out, "out");
    const cn_config c = resolve(config);
    QuadConfig q;
    if (config) {
      q.abs_tol = c.abs_tol;
      q.rel_tol = c.rel_tol;
      q.max_nodes = c.max_nodes;
    }
    const QuadResult r = poisson_transform_result(map->map, {re, im}, q);
    if (!r.converged) throw Error(ErrorCode::NoConvergence, "quadrature node budget reached");
    *out = r.value;
  });
}

cn_status cn_validate(const char* spec, cn_result** out) {
  return guarded([&] {
    need(spec, "spec");
    need(out, "out");
    *out = nullptr;
    const SelfMap m = SelfMap::from_expr_unchecked(parse_map(spec));
    ValidationSummary v{m.spec(), validate_self_map(m, 256), m.rational_form().has_value(), m.is_inner(),
                        m.fixes_zero()};
    auto* r = new cn_result;
    r->json = validation_to_json(v);
    r->csv = validation_to_csv(v);
    r->flagged = !v.report.accepted;
    r->scalars["accepted"] = v.report.accepted ? 1.0 : 0.0;
    r->scalars["max_modulus"] = v.report.max_modulus;
    *out = r;
  });
}

cn_status cn_counting_profile(const cn_map* map, const double* radii, size_t n_radii, const cn_config* config,
                              cn_result** out) {
  return guarded([&] {
    need(map, "map");
    need(out, "out");
    *out = nullptr;
    const cn_config c = resolve(config);
    const auto rs = radii_of(radii, n_radii, c);
    const AngleBudget b = budget_of(c);
    const QuadConfig q = quad_of(c);
    const RadialProfile p = counting_profile(map->map, rs, b, counting_of(c));
    auto* r = new cn_result;
    r->json = profile_to_json("counting", map->map.spec(), p, b, q);
    r->csv = profile_to_csv(p);
    r->flagged = any_flag(p.flags);
    r->scalars["last"] = p.values.back();
    *out = r;
  });
}

cn_status cn_integral_profile(const cn_map* map, const double* radii, size_t n_radii, const cn_config* config,
                              cn_result** out) {
  return guarded([&] {
    need(map, "map");
    need(out, "out");
    *out = nullptr;
    const cn_config c = resolve(config);
    const auto rs = radii_of(radii, n_radii, c);
    const AngleBudget b = budget_of(c);
    const QuadConfig q = quad_of(c);
    const RadialProfile p = integral_profile(map->map, rs, b, q);
    auto* r = new cn_result;
    r->json = profile_to_json("integral", map->map.spec(), p, b, q);
    r->csv = profile_to_csv(p);
    r->flagged = any_flag(p.flags);
    r->scalars["last"] = p.values.back();
    *out = r;
  });
}

cn_status cn_identity_check(const cn_map* map, double radius, const cn_config* config, cn_result** out) {
  return guarded([&] {
    need(map, "map");
    need(out, "out");
    *out = nullptr;
    const cn_config c = resolve(config);
    const AngleBudget b = budget_of(c);
    const QuadConfig q = quad_of(c);
    const IdentitySides s = identity_check(map->map, radius, b, q, counting_of(c));
    auto* r = new cn_result;
    r->json = identity_to_json(map->map.spec(), radius, s, b, q);
    r->csv = identity_to_csv(radius, s);
    r->scalars["counting"] = s.counting_side;
    r->scalars["integral"] = s.integral_side;
    r->scalars["gap"] = s.gap;
    *out = r;
  });
}

cn_status cn_carleson(const cn_map* map, const double* h, size_t n_h, const double* radii, size_t n_radii,
                      const cn_config* config, cn_result** out) {
  return guarded([&] {
    need(map, "map");
    need(out, "out");
    *out = nullptr;
    const cn_config c = resolve(config);
    const AngleBudget b = budget_of(c);
    std::vector<double> hs = h ? std::vector<double>(h, h + n_h) : EssNormConfig{}.carleson_h;
    const EmpiricalMeasure mu = c.has_seed ? induced_measure_random(map->map, c.carleson_atoms, c.seed)
                                           : induced_measure(map->map, c.carleson_atoms);
    CarlesonSummary s;
    s.map_spec = map->map.spec();
    s.n_atoms = c.carleson_atoms;
    s.windows = carleson_ratio_profile(mu, hs);
    s.poisson_r = radii_of(radii, n_radii, c);
    for (double r : s.poisson_r)
      s.poisson_value.push_back(
          angular_sup(r, b, [&](Complex a) -> std::optional<double> { return poisson_of_measure(mu, a); }).value);
    auto* res = new cn_result;
    res->json = carleson_to_json(s);
    res->csv = carleson_to_csv(s);
    res->scalars["ratio_last"] = s.windows.ratio.back();
    res->scalars["poisson_last"] = s.poisson_value.back();
    *out = res;
  });
}

cn_status cn_analyze(const cn_map* map, const double* radii, size_t n_radii, const cn_config* config,
                     cn_result** out) {
  return guarded([&] {
    need(map, "map");
    need(out, "out");
    *out = nullptr;
    const cn_config c = resolve(config);
    EssNormConfig e;
    e.radii = radii_of(radii, n_radii, c);
    e.budget = budget_of(c);
    e.quad = quad_of(c);
    e.counting = counting_of(c);
    e.carleson = c.carleson != 0;
    e.carleson_atoms = c.carleson_atoms;
    if (c.has_seed) e.seed = c.seed;
    EssNormReport rep = essential_norm_report(map->map, e);
    if (!c.timing) rep.runtime_seconds = 0.0;
    auto* r = new cn_result;
    r->json = report_to_json(rep);
    r->csv = report_to_csv(rep);
    r->flagged = rep.has_flags();
    r->verdict = std::string(to_string(rep.verdict));
    r->scalars["essnorm_sq_estimate"] = rep.essnorm_sq_estimate;
    r->scalars["beta_proxy"] = rep.beta_proxy;
    r->scalars["gap"] = rep.gap;
    *out = r;
  });
}

cn_status cn_catalog(cn_result** out) {
  return guarded([&] {
    need(out, "out");
    auto* r = new cn_result;
    r->json = catalog_to_json(catalog());
    r->csv = catalog_to_csv(catalog());
    r->scalars["entries"] = static_cast<double>(catalog().size());
    *out = r;
  });
}

void cn_result_free(cn_result* result) { delete result; }

const char* cn_result_text(const cn_result* result, cn_format format) {
  if (!result) return nullptr;
  return format == CN_FORMAT_CSV ? result->csv.c_str() : result->json.c_str();
}

cn_status cn_result_write(const cn_result* result, cn_format format, const char* path) {
  if (!result) {
    last_error = "result must not be NULL";
    return CN_ERR_INVALID_ARGUMENT;
  }
  return write_file(format == CN_FORMAT_CSV ? result->csv : result->json, path);
}

int cn_result_has_flags(const cn_result* result) { return result && result->flagged ? 1 : 0; }

const char* cn_result_verdict(const cn_result* result) {
  if (!result || result->verdict.empty()) return nullptr;
  return result->verdict.c_str();
}

cn_status cn_result_scalar(const cn_result* result, const char* name, double* out) {
  return guarded([&] {
    need(result, "result");
    need(name, "name");
    need(out, "out");
    const auto it = result->scalars.find(std::string_view(name));
    if (it == result->scalars.end()) throw Error(ErrorCode::InvalidArgument, std::string("no scalar '") + name + "'");
    *out = it->second;
  });
}

cn_status cn_measure_induced(const cn_map* map, int n_atoms, cn_measure** out) {
  return guarded([&] {
    need(map, "map");
    need(out, "out");
    *out = nullptr;
    *out = new cn_measure{induced_measure(map->map, n_atoms)};
  });
}

cn_status cn_measure_read_csv(const char* path, cn_measure** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = nullptr;
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::IoError, std::string("cannot open '") + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    *out = new cn_measure{measure_from_csv(ss.str())};
  });
}

cn_status cn_measure_write_csv(const cn_measure* measure, const char* path) {
  if (!measure) {
    last_error = "measure must not be NULL";
    return CN_ERR_INVALID_ARGUMENT;
  }
  return write_file(measure_to_csv(measure->mu), path);
}

size_t cn_measure_size(const cn_measure* measure) { return measure ? measure->mu.atoms.size() : 0; }

cn_status cn_measure_poisson(const cn_measure* measure, double re, double im, double* out) {
  return guarded([&] {
    need(measure, "measure");
    need(out, "out");
    *out = poisson_of_measure(measure->mu, {re, im});
  });
}

cn_status cn_measure_window_mass(const cn_measure* measure, double h, double theta0, double* out) {
  return guarded([&] {
    need(measure, "measure");
    need(out, "out");
    *out = window_mass(measure->mu, {h, theta0});
  });
}

void cn_measure_free(cn_measure* measure) { delete measure; }

}  // extern "C"
