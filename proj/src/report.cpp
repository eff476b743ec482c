#include <compnorm/report.hpp>

#include <json.hpp>

#include <cmath>
#include <cstdio>

namespace compnorm {

std::string format_real(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

std::string real_list(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_real(v[i]);
  return out + "]";
}

}  // namespace

void JsonWriter::key(std::string_view k) {
  if (!first_.empty()) {
    if (!first_.back()) out_ += ",";
    first_.back() = false;
    out_ += "\n" + std::string(2 * depth_, ' ');
  }
  if (!k.empty()) out_ += quote(k) + ": ";
}

JsonWriter& JsonWriter::begin_object(std::string_view k) {
  key(k);
  out_ += "{";
  first_.push_back(true);
  ++depth_;
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  --depth_;
  const bool empty = first_.back();
  first_.pop_back();
  if (!empty) out_ += "\n" + std::string(2 * depth_, ' ');
  out_ += "}";
  return *this;
}

JsonWriter& JsonWriter::begin_array(std::string_view k) {
  key(k);
  out_ += "[";
  first_.push_back(true);
  ++depth_;
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  --depth_;
  const bool empty = first_.back();
  first_.pop_back();
  if (!empty) out_ += "\n" + std::string(2 * depth_, ' ');
  out_ += "]";
  return *this;
}

JsonWriter& JsonWriter::field(std::string_view k, double v) {
  key(k);
  out_ += format_real(v);
  return *this;
}

JsonWriter& JsonWriter::field(std::string_view k, long v) {
  key(k);
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::field(std::string_view k, bool v) {
  key(k);
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::field(std::string_view k, std::string_view v) {
  key(k);
  out_ += quote(v);
  return *this;
}

JsonWriter& JsonWriter::field(std::string_view k, const std::vector<double>& v) {
  key(k);
  out_ += real_list(v);
  return *this;
}

JsonWriter& JsonWriter::field(std::string_view k, const std::vector<std::string>& v) {
  key(k);
  out_ += "[";
  for (std::size_t i = 0; i < v.size(); ++i) out_ += (i ? ", " : "") + quote(v[i]);
  out_ += "]";
  return *this;
}

JsonWriter& JsonWriter::null_field(std::string_view k) {
  key(k);
  out_ += "null";
  return *this;
}

namespace {

void write_tolerances(JsonWriter& w, const AngleBudget& budget, const QuadConfig& quad, double preimage_tol) {
  w.begin_object("tolerances")
      .field("abs_tol", quad.abs_tol)
      .field("rel_tol", quad.rel_tol)
      .field("max_nodes", quad.max_nodes)
      .field("preimage_tol", preimage_tol)
      .field("angle_scale", budget.scale)
      .field("min_angles", budget.min_angles)
      .field("max_angles", budget.max_angles)
      .field("golden_rounds", budget.golden_rounds)
      .end_object();
}

}  // namespace

std::string report_to_json(const EssNormReport& r) {
  JsonWriter w;
  w.begin_object()
      .field("map_spec", r.map_spec)
      .field("radii", r.radii)
      .field("counting", r.counting)
      .field("integral", r.integral)
      .field("flags", r.flags);
  if (r.carleson) w.begin_object("carleson").field("h", r.carleson->h).field("ratio", r.carleson->ratio).end_object();
  w.field("essnorm_sq_estimate", r.essnorm_sq_estimate)
      .field("beta_proxy", r.beta_proxy)
      .field("verdict", to_string(r.verdict))
      .field("gap", r.gap);
  write_tolerances(w, r.config.budget, r.config.quad, r.config.counting.tol);
  w.field("runtime_seconds", r.runtime_seconds).end_object();
  return w.str();
}

std::string report_to_csv(const EssNormReport& r) {
  std::string out = "radius,counting,integral,gap\n";
  for (std::size_t i = 0; i < r.radii.size(); ++i) {
    const double gap = std::abs(r.counting[i] - r.integral[i]);
    out += format_real(r.radii[i]) + "," + format_real(r.counting[i]) + "," + format_real(r.integral[i]) + "," +
           format_real(gap) + "\n";
  }
  return out;
}

namespace {

double real_of(const nlohmann::json& j) {
  if (j.is_null()) return std::nan("");
  if (!j.is_number()) throw Error(ErrorCode::SyntaxError, "report JSON: expected a number");
  return j.get<double>();
}

std::vector<double> reals_of(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorCode::SyntaxError, "report JSON: expected an array");
  std::vector<double> v;
  for (const auto& e : j) v.push_back(real_of(e));
  return v;
}

}  // namespace

EssNormReport report_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::SyntaxError, std::string("report JSON: ") + e.what());
  }
  try {
    EssNormReport r;
    r.map_spec = j.at("map_spec").get<std::string>();
    r.radii = reals_of(j.at("radii"));
    r.counting = reals_of(j.at("counting"));
    r.integral = reals_of(j.at("integral"));
    r.flags = j.at("flags").get<std::vector<std::string>>();
    if (j.contains("carleson")) {
      CarlesonProfile c;
      c.h = reals_of(j["carleson"].at("h"));
      c.ratio = reals_of(j["carleson"].at("ratio"));
      r.carleson = c;
    }
    r.essnorm_sq_estimate = real_of(j.at("essnorm_sq_estimate"));
    r.beta_proxy = real_of(j.at("beta_proxy"));
    r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    r.gap = real_of(j.at("gap"));
    const auto& t = j.at("tolerances");
    r.config.radii = r.radii;
    r.config.quad.abs_tol = real_of(t.at("abs_tol"));
    r.config.quad.rel_tol = real_of(t.at("rel_tol"));
    r.config.quad.max_nodes = t.at("max_nodes").get<long>();
    r.config.counting.tol = real_of(t.at("preimage_tol"));
    r.config.budget.scale = real_of(t.at("angle_scale"));
    r.config.budget.min_angles = t.at("min_angles").get<int>();
    r.config.budget.max_angles = t.at("max_angles").get<int>();
    r.config.budget.golden_rounds = t.at("golden_rounds").get<int>();
    r.runtime_seconds = real_of(j.at("runtime_seconds"));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::SyntaxError, std::string("report JSON: ") + e.what());
  }
}

std::string profile_to_json(std::string_view kind, std::string_view map_spec, const RadialProfile& p,
                            const AngleBudget& budget, const QuadConfig& quad) {
  std::vector<double> n(p.n_angles_used.begin(), p.n_angles_used.end());
  JsonWriter w;
  w.begin_object()
      .field("kind", kind)
      .field("map_spec", map_spec)
      .field("radii", p.radii)
      .field("values", p.values)
      .field("argmax_angles", p.argmax_angles)
      .field("n_angles", n)
      .field("flags", p.flags);
  write_tolerances(w, budget, quad, CountingOptions{}.tol);
  w.end_object();
  return w.str();
}

std::string profile_to_csv(const RadialProfile& p) {
  std::string out = "radius,value,argmax_angle\n";
  for (std::size_t i = 0; i < p.radii.size(); ++i)
    out += format_real(p.radii[i]) + "," + format_real(p.values[i]) + "," + format_real(p.argmax_angles[i]) + "\n";
  return out;
}

std::string identity_to_json(std::string_view map_spec, double r, const IdentitySides& s, const AngleBudget& budget,
                             const QuadConfig& quad) {
  JsonWriter w;
  w.begin_object()
      .field("map_spec", map_spec)
      .field("radius", r)
      .field("counting", s.counting_side)
      .field("integral", s.integral_side)
      .field("gap", s.gap);
  write_tolerances(w, budget, quad, CountingOptions{}.tol);
  w.end_object();
  return w.str();
}

std::string identity_to_csv(double r, const IdentitySides& s) {
  return "radius,counting,integral,gap\n" + format_real(r) + "," + format_real(s.counting_side) + "," +
         format_real(s.integral_side) + "," + format_real(s.gap) + "\n";
}

std::string carleson_to_json(const CarlesonSummary& s) {
  JsonWriter w;
  w.begin_object()
      .field("map_spec", s.map_spec)
      .field("n_atoms", s.n_atoms)
      .begin_object("carleson")
      .field("h", s.windows.h)
      .field("ratio", s.windows.ratio)
      .field("argmax", s.windows.argmax)
      .end_object()
      .begin_object("poisson")
      .field("r", s.poisson_r)
      .field("value", s.poisson_value)
      .end_object()
      .end_object();
  return w.str();
}

std::string carleson_to_csv(const CarlesonSummary& s) {
  std::string out = "h,ratio,argmax\n";
  for (std::size_t i = 0; i < s.windows.h.size(); ++i)
    out += format_real(s.windows.h[i]) + "," + format_real(s.windows.ratio[i]) + "," +
           format_real(s.windows.argmax[i]) + "\n";
  return out;
}

std::string validation_to_json(const ValidationSummary& v) {
  JsonWriter w;
  w.begin_object()
      .field("map_spec", v.map_spec)
      .field("accepted", v.report.accepted)
      .field("max_modulus", v.report.max_modulus)
      .field("witness", std::vector<double>{v.report.witness.real(), v.report.witness.imag()})
      .field("n_samples", v.report.n_samples)
      .field("rational", v.rational)
      .field("inner", v.inner)
      .field("fixes_zero", v.fixes_zero)
      .end_object();
  return w.str();
}

std::string validation_to_csv(const ValidationSummary& v) {
  return "map_spec,accepted,max_modulus,witness_re,witness_im\n\"" + v.map_spec + "\"," +
         (v.report.accepted ? "true" : "false") + "," + format_real(v.report.max_modulus) + "," +
         format_real(v.report.witness.real()) + "," + format_real(v.report.witness.imag()) + "\n";
}

std::string catalog_to_json(const std::vector<CatalogEntry>& entries) {
  JsonWriter w;
  w.begin_array();
  for (const auto& e : entries)
    w.begin_object()
        .field("name", e.name)
        .field("spec", e.spec)
        .field("expected_verdict", to_string(e.expected))
        .field("rational", e.rational)
        .field("inner", e.inner)
        .field("fixes_zero", e.fixes_zero)
        .field("strictly_inside", e.strictly_inside)
        .field("note", e.note)
        .end_object();
  w.end_array();
  return w.str();
}

std::string catalog_to_csv(const std::vector<CatalogEntry>& entries) {
  std::string out = "name,spec,expected_verdict\n";
  for (const auto& e : entries) out += e.name + ",\"" + e.spec + "\"," + std::string(to_string(e.expected)) + "\n";
  return out;
}

}  // namespace compnorm
