#include <compnorm/catalog.hpp>

namespace compnorm {

const std::vector<CatalogEntry>& catalog() {
  using V = Verdict;
  static const std::vector<CatalogEntry> entries{
      {"identity", "identity", V::NonCompactConsistent, true, true, true, false, "C_psi is the identity operator"},
      {"const", "const(0.3)", V::CompactConsistent, true, false, false, true, "rank one"},
      {"const0", "const(0)", V::CompactConsistent, true, false, true, true, "rank one"},
      {"square", "monomial(2)", V::NonCompactConsistent, true, true, true, false, "inner, fixes 0; integral side is 1"},
      {"cube", "monomial(3)", V::NonCompactConsistent, true, true, true, false, "inner, fixes 0"},
      {"mobius", "mobius(0.5)", V::NonCompactConsistent, true, true, false, false, "disk automorphism"},
      {"blaschke2", "blaschke(0, 0.5)", V::NonCompactConsistent, true, true, true, false, "inner, fixes 0"},
      {"poly", "poly(0, 0.5, 0.25)", V::CompactConsistent, true, false, true, true, "sup |psi| = 0.75 on the circle"},
      {"scale", "scale(0.5, identity)", V::CompactConsistent, true, false, true, true, "image in |w| <= 1/2"},
      {"halfplane", "halfplane", V::NonCompactConsistent, true, false, false, false,
       "touches the circle at 1 with angular derivative 1/2; essential norm squared 2"},
      {"atomic", "atomic(1)", V::NonCompactConsistent, false, true, false, false, "singular inner function"},
      {"compose", "compose(monomial(2), mobius(0.3+0.1i))", V::NonCompactConsistent, true, true, false, false,
       "inner, degree 2"},
  };
  return entries;
}

}  // namespace compnorm
