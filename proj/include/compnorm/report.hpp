#pragma once

// Bit-stable report serialization: fixed field order, reals printed with 17
// significant digits, NaN and infinities written as null.

#include <compnorm/catalog.hpp>
#include <compnorm/essnorm.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace compnorm {

/// Minimal ordered JSON emitter.
class JsonWriter {
 public:
  JsonWriter& begin_object(std::string_view key = {});
  JsonWriter& end_object();
  JsonWriter& begin_array(std::string_view key = {});
  JsonWriter& end_array();
  JsonWriter& field(std::string_view key, double v);
  JsonWriter& field(std::string_view key, long v);
  JsonWriter& field(std::string_view key, int v) { return field(key, static_cast<long>(v)); }
  JsonWriter& field(std::string_view key, bool v);
  JsonWriter& field(std::string_view key, std::string_view v);
  JsonWriter& field(std::string_view key, const char* v) { return field(key, std::string_view(v)); }
  JsonWriter& field(std::string_view key, const std::vector<double>& v);
  JsonWriter& field(std::string_view key, const std::vector<std::string>& v);
  JsonWriter& null_field(std::string_view key);
  std::string str() const { return out_ + "\n"; }

 private:
  void key(std::string_view k);
  std::string out_;
  std::vector<bool> first_{};
  int depth_ = 0;
};

std::string format_real(double v);

std::string report_to_json(const EssNormReport& report);
/// radius,counting,integral,gap (gap per row).
std::string report_to_csv(const EssNormReport& report);
/// Inverse of report_to_json; null reals come back as NaN. Throws SyntaxError.
EssNormReport report_from_json(std::string_view text);

std::string profile_to_json(std::string_view kind, std::string_view map_spec, const RadialProfile& profile,
                            const AngleBudget& budget, const QuadConfig& quad);
std::string profile_to_csv(const RadialProfile& profile);

std::string identity_to_json(std::string_view map_spec, double r, const IdentitySides& sides,
                             const AngleBudget& budget, const QuadConfig& quad);
std::string identity_to_csv(double r, const IdentitySides& sides);

struct CarlesonSummary {
  std::string map_spec;
  int n_atoms = 0;
  CarlesonProfile windows;
  std::vector<double> poisson_r;
  std::vector<double> poisson_value;
};
std::string carleson_to_json(const CarlesonSummary& s);
std::string carleson_to_csv(const CarlesonSummary& s);

struct ValidationSummary {
  std::string map_spec;
  ValidationReport report;
  bool rational = false;
  bool inner = false;
  bool fixes_zero = false;
};
std::string validation_to_json(const ValidationSummary& v);
std::string validation_to_csv(const ValidationSummary& v);

std::string catalog_to_json(const std::vector<CatalogEntry>& entries);
std::string catalog_to_csv(const std::vector<CatalogEntry>& entries);

}  // namespace compnorm
