#pragma once

// Built-in maps with known compactness behaviour, used by the CLI `catalog`
// subcommand and by the property tests.

#include <compnorm/essnorm.hpp>

#include <string>
#include <vector>

namespace compnorm {

struct CatalogEntry {
  std::string name;
  std::string spec;
  Verdict expected;
  bool rational;
  bool inner;
  bool fixes_zero;
  /// sup of |psi| on the circle is < 1 (finite power sum).
  bool strictly_inside;
  std::string note;
};

const std::vector<CatalogEntry>& catalog();

}  // namespace compnorm
