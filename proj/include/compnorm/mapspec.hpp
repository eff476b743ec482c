#pragma once

// Analytic self-maps of the unit disk: the catalog AST, its textual
// mini-language, and evaluation services (value, derivative, boundary trace,
// Taylor coefficients).

#include <compnorm/error.hpp>

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace compnorm {

struct MapExpr;
using MapPtr = std::shared_ptr<const MapExpr>;

/// Polynomial coefficients, constant term first.
using Coeffs = std::vector<Complex>;

namespace node {
struct Identity {};
struct Const { Complex c; };
struct Monomial { int k; };
struct Mobius { Complex a; };
struct Blaschke { std::vector<Complex> zeros; };
struct Poly { Coeffs coeffs; };
struct Rational { Coeffs num; Coeffs den; };
struct AtomicInner { double t; };
struct Scale { double r; MapPtr inner; };
struct Compose { MapPtr outer; MapPtr inner; };
/// psi(z) = (1 + z) / 2
struct HalfPlane {};
}  // namespace node

using MapNode = std::variant<node::Identity, node::Const, node::Monomial, node::Mobius,
                             node::Blaschke, node::Poly, node::Rational, node::AtomicInner,
                             node::Scale, node::Compose, node::HalfPlane>;

struct MapExpr {
  MapNode node;

  /// Structural equality (children compared by value).
  bool operator==(const MapExpr& other) const;
};

inline constexpr int kMaxTreeDepth = 32;

// Checked constructors. Each throws DomainError when its parameter leaves the
// admissible set (e.g. |a| >= 1 for mobius).
MapPtr make_identity();
MapPtr make_const(Complex c);
MapPtr make_monomial(int k);
MapPtr make_mobius(Complex a);
MapPtr make_blaschke(std::vector<Complex> zeros);
MapPtr make_poly(Coeffs coeffs);
MapPtr make_rational(Coeffs num, Coeffs den);
MapPtr make_atomic(double t);
MapPtr make_scale(double r, MapPtr inner);
MapPtr make_compose(MapPtr outer, MapPtr inner);
MapPtr make_halfplane();

int tree_depth(const MapExpr& expr);

/// Parses the map-spec grammar. Throws SyntaxError (with position and the
/// expected token) or DomainError.
MapPtr parse_map(std::string_view spec);

/// Canonical textual form; parse_map(print_map(e)) == e.
std::string print_map(const MapExpr& expr);

/// The map-spec grammar as printed by `--help`.
std::string_view map_grammar();

struct RationalForm {
  Coeffs num;
  Coeffs den;
};

/// Value and first derivative at one point.
struct Jet {
  Complex value;
  Complex derivative;
};

/// An analytic self-map of the disk: immutable, cheap to copy.
class SelfMap {
 public:
  /// Builds the map and validates every Poly/Rational subtree as a self-map
  /// (throws NotSelfMap with a witness point otherwise).
  static SelfMap from_expr(MapPtr expr);
  /// Same, skipping self-map validation. Used to inspect rejected candidates.
  static SelfMap from_expr_unchecked(MapPtr expr);
  static SelfMap parse(std::string_view spec) { return from_expr(parse_map(spec)); }

  const MapExpr& expr() const { return *expr_; }
  const MapPtr& expr_ptr() const { return expr_; }
  const std::optional<RationalForm>& rational_form() const { return rational_; }
  bool is_inner() const { return inner_; }
  bool fixes_zero() const { return fixes_zero_; }
  /// psi(0), cached.
  Complex at_zero() const { return at_zero_; }
  std::string spec() const { return print_map(*expr_); }

 private:
  MapPtr expr_;
  std::optional<RationalForm> rational_;
  bool inner_ = false;
  bool fixes_zero_ = false;
  Complex at_zero_{};
};

/// Recursive evaluation of value and derivative. No domain check; throws
/// SingularBoundaryPoint when an atomic factor is evaluated at z = 1.
Jet evaluate(const MapExpr& expr, Complex z);

/// Requires |z| < 1.
Complex eval_map(const SelfMap& map, Complex z);
/// Requires |z| < 1.
Complex map_derivative(const SelfMap& map, Complex z);
Complex boundary_value(const SelfMap& map, double theta);

struct TaylorSeries {
  std::vector<Complex> coeffs;
  double trunc_error_bound = 0.0;
  /// Largest coefficient disagreement between the two sampling radii.
  double cross_check = 0.0;
};

/// Coefficients of z^0..z^n from FFT samples on |z| = rho, cross-checked at a
/// second radius. Throws PrecisionLoss when the radii disagree by > 1e-8.
TaylorSeries taylor_coefficients(const SelfMap& map, int n, double rho = 0.7);

struct ValidationReport {
  bool accepted = false;
  double max_modulus = 0.0;
  Complex witness{};
  int n_samples = 0;
};

/// Samples |psi| on concentric circles up to 1 - 1e-6 and on the boundary.
/// Accepts iff the maximum modulus is <= 1 + 1e-12.
ValidationReport validate_self_map(const SelfMap& map, int n_samples);

}  // namespace compnorm
