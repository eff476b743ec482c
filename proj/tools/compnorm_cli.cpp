// compnorm command-line front end. Uses only the C interface of libcompnorm.

#include <compnorm/compnorm.h>

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

enum Exit { kOk = 0, kInput = 2, kNumeric = 3, kIo = 4 };

struct Options {
  std::string map;
  int kmax = 10;
  std::string radii;
  std::string h;
  int angles = 0;
  double abs_tol = 0.0;
  double rel_tol = 0.0;
  std::string format = "json";
  std::string out;
  bool carleson = false;
  std::optional<std::uint64_t> seed;
  int atoms = 8192;
  double radius = 0.999;
  bool timing = false;
};

int exit_for(cn_status s) {
  switch (s) {
    case CN_OK: return kOk;
    case CN_ERR_SYNTAX:
    case CN_ERR_DOMAIN:
    case CN_ERR_NOT_SELF_MAP:
    case CN_ERR_INVALID_ARGUMENT:
    case CN_ERR_RESOLUTION_EXCEEDED: return kInput;
    case CN_ERR_IO: return kIo;
    default: return kNumeric;
  }
}

int fail(cn_status s) {
  std::cerr << "compnorm: " << cn_status_name(s) << ": " << cn_last_error() << "\n";
  return exit_for(s);
}

// Parses "0.5,0.9,0.99". Throws CLI::ValidationError on bad or empty input.
std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    std::string item = text.substr(start, comma - start);
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
      throw CLI::ValidationError(flag, "expected a comma-separated list of reals, got '" + text + "'");
    out.push_back(v);
    start = comma + 1;
  }
  return out;
}

cn_config make_config(const Options& o) {
  cn_config c;
  cn_config_default(&c);
  c.kmax = o.kmax;
  if (o.angles > 0) c.min_angles = c.max_angles = o.angles;
  if (o.abs_tol > 0.0) c.abs_tol = o.abs_tol;
  if (o.rel_tol > 0.0) c.rel_tol = o.rel_tol;
  c.carleson = o.carleson ? 1 : 0;
  c.carleson_atoms = o.atoms;
  if (o.seed) {
    c.has_seed = 1;
    c.seed = *o.seed;
  }
  c.timing = o.timing ? 1 : 0;
  return c;
}

int emit(cn_result* r, const Options& o) {
  const cn_format fmt = o.format == "csv" ? CN_FORMAT_CSV : CN_FORMAT_JSON;
  int code = kOk;
  if (o.out.empty()) {
    std::fputs(cn_result_text(r, fmt), stdout);
    std::fflush(stdout);
  } else if (cn_status s = cn_result_write(r, fmt, o.out.c_str()); s != CN_OK) {
    code = fail(s);
  }
  if (code == kOk && cn_result_has_flags(r)) code = kNumeric;
  cn_result_free(r);
  return code;
}

struct MapHandle {
  cn_map* p = nullptr;
  ~MapHandle() { cn_map_free(p); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"compnorm: composition-operator compactness toolkit on H^2 of the disk"};
  app.require_subcommand(1);
  app.footer(cn_grammar());
  Options o;

  auto add_map = [&](CLI::App* s) { s->add_option("--map", o.map, "Map spec (see grammar below)")->required(); };
  auto add_output = [&](CLI::App* s) {
    s->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    s->add_option("--out", o.out, "Output path (default stdout)");
  };
  auto add_numeric = [&](CLI::App* s) {
    s->add_option("--kmax", o.kmax, "Schedule r_k = 1 - 2^-k, k = 1..kmax")->check(CLI::Range(3, 14));
    s->add_option("--radii", o.radii, "Explicit comma-separated radii (overrides --kmax)");
    s->add_option("--angles", o.angles, "Fixed number of angles per radius (default grows like 8/(1-r))")
        ->check(CLI::Range(64, 1 << 16));
    s->add_option("--abs-tol", o.abs_tol, "Quadrature absolute tolerance")->check(CLI::Range(1e-15, 1e-2));
    s->add_option("--rel-tol", o.rel_tol, "Quadrature relative tolerance")->check(CLI::Range(1e-14, 1e-2));
  };
  auto add_sampling = [&](CLI::App* s) {
    s->add_option("--seed", o.seed, "Draw Carleson atoms with this seed instead of the uniform grid");
    s->add_option("--atoms", o.atoms, "Atoms in the induced measure (power of two >= 256)");
  };
  auto make = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->footer(cn_grammar());
    return s;
  };

  CLI::App* validate = make("validate", "Parse a map spec and check that it maps the disk into itself");
  add_map(validate);
  add_output(validate);

  CLI::App* counting = make("counting", "Counting-function profile sup N(w)/(1-|w|) along the radius schedule");
  add_map(counting);
  add_output(counting);
  add_numeric(counting);

  CLI::App* integral = make("integral", "Integral-side profile sup I(a) along the radius schedule");
  add_map(integral);
  add_output(integral);
  add_numeric(integral);

  CLI::App* carleson = make("carleson", "Carleson window ratios and Poisson integrals of the induced measure");
  add_map(carleson);
  add_output(carleson);
  add_numeric(carleson);
  add_sampling(carleson);
  carleson->add_option("--windows", o.h, "Comma-separated decreasing window sizes h");

  CLI::App* idcheck = make("identity-check", "Both sides of the essential-norm identity at one radius");
  add_map(idcheck);
  add_output(idcheck);
  add_numeric(idcheck);
  idcheck->add_option("--radius", o.radius, "Radius in (0, 1)");

  CLI::App* analyze = make("analyze", "Full report: both profiles, estimate of the essential norm squared, verdict");
  add_map(analyze);
  add_output(analyze);
  add_numeric(analyze);
  add_sampling(analyze);
  analyze->add_flag("--carleson", o.carleson, "Add the Carleson window section");
  analyze->add_flag("--timing", o.timing, "Record runtime_seconds (breaks byte-identical output)");

  CLI::App* cat = make("catalog", "List built-in maps with their known verdicts");
  add_output(cat);

  std::vector<double> radii, hs;
  try {
    app.parse(argc, argv);
    const CLI::Option* radii_opt = app.get_subcommands().front()->get_option_no_throw("--radii");
    if (!o.radii.empty() || (radii_opt && radii_opt->count() > 0)) radii = parse_list(o.radii, "--radii");
    if (!o.h.empty() || carleson->count("--windows")) hs = parse_list(o.h, "--windows");
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  const cn_config cfg = make_config(o);
  const double* rp = radii.empty() ? nullptr : radii.data();
  cn_result* res = nullptr;
  cn_status s = CN_OK;

  if (*cat) {
    s = cn_catalog(&res);
  } else if (*validate) {
    s = cn_validate(o.map.c_str(), &res);
    if (s == CN_OK) {
      const bool rejected = cn_result_has_flags(res);
      const int code = emit(res, o);
      return rejected && code == kNumeric ? kInput : code;
    }
  } else {
    MapHandle m;
    if (cn_status ps = cn_map_parse(o.map.c_str(), &m.p); ps != CN_OK) return fail(ps);
    if (*counting) s = cn_counting_profile(m.p, rp, radii.size(), &cfg, &res);
    else if (*integral) s = cn_integral_profile(m.p, rp, radii.size(), &cfg, &res);
    else if (*idcheck) s = cn_identity_check(m.p, o.radius, &cfg, &res);
    else if (*carleson) s = cn_carleson(m.p, hs.empty() ? nullptr : hs.data(), hs.size(), rp, radii.size(), &cfg, &res);
    else if (*analyze) s = cn_analyze(m.p, rp, radii.size(), &cfg, &res);
  }
  if (s != CN_OK) return fail(s);
  return emit(res, o);
}
