#include <compnorm/mapspec.hpp>

#include "polynomial.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace compnorm {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NotSelfMap: return "NotSelfMap";
    case ErrorCode::SingularBoundaryPoint: return "SingularBoundaryPoint";
    case ErrorCode::PrecisionLoss: return "PrecisionLoss";
    case ErrorCode::BoundaryRootSuspected: return "BoundaryRootSuspected";
    case ErrorCode::RegionOutsideDomain: return "RegionOutsideDomain";
    case ErrorCode::NonconvergentRoot: return "NonconvergentRoot";
    case ErrorCode::CertificationMismatch: return "CertificationMismatch";
    case ErrorCode::InfiniteValue: return "InfiniteValue";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::TruncationTooLoose: return "TruncationTooLoose";
    case ErrorCode::ResolutionExceeded: return "ResolutionExceeded";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void domain_error(const std::string& msg) { throw Error(ErrorCode::DomainError, msg); }

MapPtr wrap(MapNode n) { return std::make_shared<const MapExpr>(MapExpr{std::move(n)}); }

void require_coeffs(const Coeffs& c, const char* what) {
  if (c.empty()) domain_error(std::string(what) + " needs at least one coefficient");
  for (const auto& z : c)
    if (!is_finite(z)) domain_error(std::string(what) + " coefficients must be finite");
}

bool eq_ptr(const MapPtr& a, const MapPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

}  // namespace

bool MapExpr::operator==(const MapExpr& other) const {
  if (node.index() != other.node.index()) return false;
  return std::visit(
      overloaded{
          [](const node::Identity&, const node::Identity&) { return true; },
          [](const node::HalfPlane&, const node::HalfPlane&) { return true; },
          [](const node::Const& a, const node::Const& b) { return a.c == b.c; },
          [](const node::Monomial& a, const node::Monomial& b) { return a.k == b.k; },
          [](const node::Mobius& a, const node::Mobius& b) { return a.a == b.a; },
          [](const node::Blaschke& a, const node::Blaschke& b) { return a.zeros == b.zeros; },
          [](const node::Poly& a, const node::Poly& b) { return a.coeffs == b.coeffs; },
          [](const node::Rational& a, const node::Rational& b) { return a.num == b.num && a.den == b.den; },
          [](const node::AtomicInner& a, const node::AtomicInner& b) { return a.t == b.t; },
          [](const node::Scale& a, const node::Scale& b) { return a.r == b.r && eq_ptr(a.inner, b.inner); },
          [](const node::Compose& a, const node::Compose& b) {
            return eq_ptr(a.outer, b.outer) && eq_ptr(a.inner, b.inner);
          },
          [](const auto&, const auto&) { return false; },
      },
      node, other.node);
}

int tree_depth(const MapExpr& expr) {
  return std::visit(overloaded{
                        [](const node::Scale& s) { return 1 + tree_depth(*s.inner); },
                        [](const node::Compose& c) {
                          return 1 + std::max(tree_depth(*c.outer), tree_depth(*c.inner));
                        },
                        [](const auto&) { return 1; },
                    },
                    expr.node);
}

MapPtr make_identity() { return wrap(node::Identity{}); }
MapPtr make_halfplane() { return wrap(node::HalfPlane{}); }

MapPtr make_const(Complex c) {
  if (!is_finite(c) || std::abs(c) >= 1.0) domain_error("const value must have modulus < 1");
  return wrap(node::Const{c});
}

MapPtr make_monomial(int k) {
  if (k < 1) domain_error("monomial exponent must be >= 1");
  return wrap(node::Monomial{k});
}

MapPtr make_mobius(Complex a) {
  if (!is_finite(a) || std::abs(a) >= 1.0) domain_error("mobius parameter must have modulus < 1");
  return wrap(node::Mobius{a});
}

MapPtr make_blaschke(std::vector<Complex> zeros) {
  if (zeros.empty()) domain_error("blaschke needs at least one zero");
  for (const auto& z : zeros)
    if (!is_finite(z) || std::abs(z) >= 1.0) domain_error("blaschke zeros must lie in the open disk");
  return wrap(node::Blaschke{std::move(zeros)});
}

MapPtr make_poly(Coeffs coeffs) {
  require_coeffs(coeffs, "poly");
  return wrap(node::Poly{std::move(coeffs)});
}

MapPtr make_rational(Coeffs num, Coeffs den) {
  require_coeffs(num, "rational numerator");
  require_coeffs(den, "rational denominator");
  if (poly::degree(den) < 0) domain_error("rational denominator is identically zero");
  for (const auto& r : poly::roots(den))
    if (std::abs(r) <= 1.0 + 1e-12) domain_error("rational denominator vanishes in the closed disk");
  return wrap(node::Rational{std::move(num), std::move(den)});
}

MapPtr make_atomic(double t) {
  if (!std::isfinite(t) || t <= 0.0) domain_error("atomic parameter must be > 0");
  return wrap(node::AtomicInner{t});
}

MapPtr make_scale(double r, MapPtr inner) {
  if (!std::isfinite(r) || r <= 0.0 || r > 1.0) domain_error("scale factor must lie in (0, 1]");
  if (!inner) domain_error("scale needs an inner map");
  if (1 + tree_depth(*inner) > kMaxTreeDepth) domain_error("map tree deeper than 32");
  return wrap(node::Scale{r, std::move(inner)});
}

MapPtr make_compose(MapPtr outer, MapPtr inner) {
  if (!outer || !inner) domain_error("compose needs two maps");
  if (1 + std::max(tree_depth(*outer), tree_depth(*inner)) > kMaxTreeDepth)
    domain_error("map tree deeper than 32");
  return wrap(node::Compose{std::move(outer), std::move(inner)});
}

Jet evaluate(const MapExpr& expr, Complex z) {
  return std::visit(
      overloaded{
          [&](const node::Identity&) { return Jet{z, 1.0}; },
          [&](const node::HalfPlane&) { return Jet{0.5 * (1.0 + z), 0.5}; },
          [&](const node::Const& c) { return Jet{c.c, 0.0}; },
          [&](const node::Monomial& m) {
            const Complex prev = m.k == 1 ? Complex{1.0} : std::pow(z, m.k - 1);
            return Jet{prev * z, static_cast<double>(m.k) * prev};
          },
          [&](const node::Mobius& m) {
            const Complex den = 1.0 - std::conj(m.a) * z;
            return Jet{(m.a - z) / den, -(1.0 - std::norm(m.a)) / (den * den)};
          },
          [&](const node::Blaschke& b) {
            Jet acc{1.0, 0.0};
            for (const auto& a : b.zeros) {
              const Complex den = 1.0 - std::conj(a) * z;
              const Complex f = (z - a) / den;
              const Complex df = (1.0 - std::norm(a)) / (den * den);
              acc = Jet{acc.value * f, acc.derivative * f + acc.value * df};
            }
            return acc;
          },
          [&](const node::Poly& p) { return poly::horner(p.coeffs, z); },
          [&](const node::Rational& r) {
            const Jet n = poly::horner(r.num, z);
            const Jet d = poly::horner(r.den, z);
            return Jet{n.value / d.value,
                       (n.derivative * d.value - n.value * d.derivative) / (d.value * d.value)};
          },
          [&](const node::AtomicInner& a) {
            const Complex zm1 = z - 1.0;
            if (std::abs(zm1) < 1e-300)
              throw Error(ErrorCode::SingularBoundaryPoint, "atomic inner factor is singular at z = 1");
            const Complex f = std::exp(a.t * (z + 1.0) / zm1);
            return Jet{f, f * (-2.0 * a.t / (zm1 * zm1))};
          },
          [&](const node::Scale& s) {
            const Jet in = evaluate(*s.inner, z);
            return Jet{s.r * in.value, s.r * in.derivative};
          },
          [&](const node::Compose& c) {
            const Jet in = evaluate(*c.inner, z);
            const Jet out = evaluate(*c.outer, in.value);
            return Jet{out.value, out.derivative * in.derivative};
          },
      },
      expr.node);
}

namespace {

std::optional<RationalForm> rational_of(const MapExpr& expr) {
  using R = std::optional<RationalForm>;
  const Coeffs one{Complex{1.0}};
  return std::visit(
      overloaded{
          [&](const node::Identity&) -> R { return RationalForm{{0.0, 1.0}, one}; },
          [&](const node::HalfPlane&) -> R { return RationalForm{{0.5, 0.5}, one}; },
          [&](const node::Const& c) -> R { return RationalForm{{c.c}, one}; },
          [&](const node::Monomial& m) -> R {
            Coeffs num(m.k + 1, Complex{});
            num[m.k] = 1.0;
            return RationalForm{num, one};
          },
          [&](const node::Mobius& m) -> R { return RationalForm{{m.a, -1.0}, {1.0, -std::conj(m.a)}}; },
          [&](const node::Blaschke& b) -> R {
            Coeffs num = one, den = one;
            for (const auto& a : b.zeros) {
              num = poly::mul(num, {-a, 1.0});
              den = poly::mul(den, {1.0, -std::conj(a)});
            }
            return RationalForm{num, den};
          },
          [&](const node::Poly& p) -> R { return RationalForm{p.coeffs, one}; },
          [&](const node::Rational& r) -> R { return RationalForm{r.num, r.den}; },
          [&](const node::AtomicInner&) -> R { return std::nullopt; },
          [&](const node::Scale& s) -> R {
            auto in = rational_of(*s.inner);
            if (!in) return std::nullopt;
            return RationalForm{poly::scaled(in->num, s.r), in->den};
          },
          [&](const node::Compose& c) -> R {
            auto out = rational_of(*c.outer);
            auto in = rational_of(*c.inner);
            if (!out || !in) return std::nullopt;
            // P(R/S) / Q(R/S), both multiplied through by S^n.
            const int n = static_cast<int>(std::max(out->num.size(), out->den.size())) - 1;
            if (n * std::max(poly::degree(in->num), poly::degree(in->den)) > 64) return std::nullopt;
            std::vector<Coeffs> rpow{one}, spow{one};
            for (int i = 1; i <= n; ++i) {
              rpow.push_back(poly::mul(rpow.back(), in->num));
              spow.push_back(poly::mul(spow.back(), in->den));
            }
            auto subst = [&](const Coeffs& p) {
              Coeffs acc{Complex{}};
              for (int i = 0; i < static_cast<int>(p.size()); ++i)
                acc = poly::add(acc, poly::scaled(poly::mul(rpow[i], spow[n - i]), p[i]));
              return acc;
            };
            return RationalForm{subst(out->num), subst(out->den)};
          },
      },
      expr.node);
}

bool inner_of(const MapExpr& expr) {
  return std::visit(overloaded{
                        [](const node::Identity&) { return true; },
                        [](const node::Monomial&) { return true; },
                        [](const node::Mobius&) { return true; },
                        [](const node::Blaschke&) { return true; },
                        [](const node::AtomicInner&) { return true; },
                        [](const node::Scale& s) { return s.r == 1.0 && inner_of(*s.inner); },
                        [](const node::Compose& c) { return inner_of(*c.outer) && inner_of(*c.inner); },
                        [](const auto&) { return false; },
                    },
                    expr.node);
}

void collect_checked_subtrees(const MapPtr& expr, std::vector<MapPtr>& out) {
  std::visit(overloaded{
                 [&](const node::Poly&) { out.push_back(expr); },
                 [&](const node::Rational&) { out.push_back(expr); },
                 [&](const node::Scale& s) { collect_checked_subtrees(s.inner, out); },
                 [&](const node::Compose& c) {
                   collect_checked_subtrees(c.outer, out);
                   collect_checked_subtrees(c.inner, out);
                 },
                 [](const auto&) {},
             },
             expr->node);
}

// Deterministic interior sample points used for the rational-form check.
std::vector<Complex> check_points() {
  std::vector<Complex> pts;
  pts.reserve(64);
  for (int i = 0; i < 64; ++i) {
    const double r = 0.05 + 0.9 * std::fmod(0.6180339887498949 * (i + 1), 1.0);
    const double th = 2.0 * std::numbers::pi * std::fmod(0.7548776662466927 * (i + 1), 1.0);
    pts.push_back(std::polar(r, th));
  }
  return pts;
}

}  // namespace

SelfMap SelfMap::from_expr_unchecked(MapPtr expr) {
  if (!expr) throw Error(ErrorCode::InvalidArgument, "null map expression");
  if (tree_depth(*expr) > kMaxTreeDepth) domain_error("map tree deeper than 32");
  SelfMap m;
  m.expr_ = std::move(expr);
  m.inner_ = inner_of(*m.expr_);
  m.at_zero_ = evaluate(*m.expr_, Complex{}).value;
  m.fixes_zero_ = std::abs(m.at_zero_) <= 1e-15;
  if (auto rf = rational_of(*m.expr_)) {
    poly::trim(rf->num);
    poly::trim(rf->den);
    bool ok = poly::degree(rf->den) >= 0;
    for (const auto& z : check_points()) {
      if (!ok) break;
      const Complex direct = evaluate(*m.expr_, z).value;
      const Complex viaform = poly::horner(rf->num, z).value / poly::horner(rf->den, z).value;
      ok = std::abs(direct - viaform) <= 1e-12;
    }
    if (ok) m.rational_ = std::move(rf);
  }
  return m;
}

SelfMap SelfMap::from_expr(MapPtr expr) {
  SelfMap m = from_expr_unchecked(std::move(expr));
  std::vector<MapPtr> checked;
  collect_checked_subtrees(m.expr_, checked);
  for (const auto& sub : checked) {
    const auto report = validate_self_map(from_expr_unchecked(sub), 256);
    if (!report.accepted) {
      std::ostringstream os;
      os << "'" << print_map(*sub) << "' is not a self-map of the disk: |psi| = " << report.max_modulus
         << " at z = " << report.witness.real() << (report.witness.imag() < 0 ? "" : "+")
         << report.witness.imag() << "i";
      throw Error(ErrorCode::NotSelfMap, os.str());
    }
  }
  return m;
}

Complex eval_map(const SelfMap& map, Complex z) {
  require_finite(z, "z");
  if (std::abs(z) >= 1.0) throw Error(ErrorCode::InvalidArgument, "eval_map requires |z| < 1");
  return evaluate(map.expr(), z).value;
}

Complex map_derivative(const SelfMap& map, Complex z) {
  require_finite(z, "z");
  if (std::abs(z) >= 1.0) throw Error(ErrorCode::InvalidArgument, "map_derivative requires |z| < 1");
  return evaluate(map.expr(), z).derivative;
}

Complex boundary_value(const SelfMap& map, double theta) {
  if (!std::isfinite(theta)) throw Error(ErrorCode::InvalidArgument, "theta must be finite");
  const double two_pi = 2.0 * std::numbers::pi;
  double th = std::fmod(theta, two_pi);
  if (th < 0) th += two_pi;
  // e^{i0} is exactly 1; std::polar keeps that so atomic factors see z == 1.
  const Complex z = th == 0.0 ? Complex{1.0, 0.0} : std::polar(1.0, th);
  const Complex v = evaluate(map.expr(), z).value;
  // Radial limits lie in the closed disk. Cancellation in (1+z)/(1-z) next to an
  // atomic point can push a sample outside; pull it back onto the circle.
  const double mod = std::abs(v);
  return mod > 1.0 ? v / mod : v;
}

namespace {

struct FftSamples {
  std::vector<Complex> coeffs;
  double sup = 0.0;
};

FftSamples sampled_coefficients(const SelfMap& map, int n, int m, double rho) {
  std::vector<Complex> in(m), out(m);
  double sup = 0.0;
  for (int j = 0; j < m; ++j) {
    const Complex z = std::polar(rho, 2.0 * std::numbers::pi * j / m);
    in[j] = evaluate(map.expr(), z).value;
    sup = std::max(sup, std::abs(in[j]));
  }
  fftw_plan plan = fftw_plan_dft_1d(m, reinterpret_cast<fftw_complex*>(in.data()),
                                    reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD,
                                    FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  FftSamples s;
  s.sup = sup;
  s.coeffs.resize(n + 1);
  double scale = 1.0;
  for (int k = 0; k <= n; ++k) {
    s.coeffs[k] = out[k] / (static_cast<double>(m) * scale);
    scale *= rho;
  }
  return s;
}

}  // namespace

TaylorSeries taylor_coefficients(const SelfMap& map, int n, double rho) {
  if (n < 1 || n > (1 << 16)) throw Error(ErrorCode::InvalidArgument, "taylor order must lie in [1, 65536]");
  if (!(rho > 0.0 && rho < 1.0)) throw Error(ErrorCode::InvalidArgument, "sampling radius must lie in (0, 1)");
  int m = 256;
  while (m < 4 * n) m *= 2;
  const double rho2 = std::abs(rho - 0.7) < 1e-15 ? 0.8 : 0.5 * (1.0 + rho);

  const FftSamples a = sampled_coefficients(map, n, m, rho);
  const FftSamples b = sampled_coefficients(map, n, m, rho2);

  TaylorSeries out;
  out.coeffs = a.coeffs;
  for (int k = 0; k <= n; ++k) out.cross_check = std::max(out.cross_check, std::abs(a.coeffs[k] - b.coeffs[k]));
  // Cauchy estimate for the aliased tail plus FFT rounding amplified by rho^-n.
  const double alias = a.sup * std::pow(rho, m) / (1.0 - std::pow(rho, m));
  const double rounding = 4.0 * std::numeric_limits<double>::epsilon() * std::log2(m) * a.sup * std::pow(rho, -n);
  out.trunc_error_bound = alias + rounding;
  if (out.cross_check > 1e-8) {
    std::ostringstream os;
    os << "taylor coefficients at radii " << rho << " and " << rho2 << " disagree by " << out.cross_check;
    throw Error(ErrorCode::PrecisionLoss, os.str());
  }
  return out;
}

ValidationReport validate_self_map(const SelfMap& map, int n_samples) {
  if (n_samples < 64) throw Error(ErrorCode::InvalidArgument, "validation needs at least 64 samples");
  ValidationReport rep;
  const double radii[] = {0.25, 0.5, 0.75, 0.9, 0.99, 0.999, 0.9999, 1.0 - 1e-6, 1.0};
  for (double r : radii) {
    for (int j = 0; j < n_samples; ++j) {
      double th = 2.0 * std::numbers::pi * j / n_samples;
      Complex val;
      try {
        val = evaluate(map.expr(), j == 0 && r == 1.0 ? Complex{1.0} : std::polar(r, th)).value;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::SingularBoundaryPoint) throw;
        th += std::numbers::pi / n_samples;
        val = evaluate(map.expr(), std::polar(r, th)).value;
      }
      ++rep.n_samples;
      const double mod = std::abs(val);
      if (!(mod <= rep.max_modulus)) {
        rep.max_modulus = std::isfinite(mod) ? mod : std::numeric_limits<double>::infinity();
        rep.witness = std::polar(r, th);
      }
    }
  }
  rep.accepted = rep.max_modulus <= 1.0 + 1e-12;
  return rep;
}

}  // namespace compnorm
