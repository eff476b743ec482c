#include <compnorm/diskzeros.hpp>

#include "polynomial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace compnorm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kClusterRadius = 1e-7;
constexpr double kBoundaryFlag = 1e-12;
constexpr int kMaxQuadtreeDepth = 40;
constexpr int kMaxNewton = 200;

// One piece of a closed contour, parametrized over t in [0, 1].
struct Segment {
  bool arc = false;
  Complex a, b;         // line endpoints
  Complex center;       // arc center
  double radius = 0.0;  // arc radius
  double alpha = 0.0, beta = 0.0;

  void at(double t, Complex& z, Complex& dz) const {
    if (!arc) {
      z = a + (b - a) * t;
      dz = b - a;
    } else {
      const Complex e = std::polar(radius, alpha + (beta - alpha) * t);
      z = center + e;
      dz = Complex{0.0, beta - alpha} * e;
    }
  }

  int initial_pieces() const {
    if (!arc) return 8;
    return std::max(4, static_cast<int>(std::ceil(std::abs(beta - alpha) / (2.0 * kPi) * 64.0)));
  }
};

Segment line(Complex a, Complex b) {
  Segment s;
  s.a = a;
  s.b = b;
  return s;
}

Segment arc(Complex c, double r, double alpha, double beta) {
  Segment s;
  s.arc = true;
  s.center = c;
  s.radius = r;
  s.alpha = alpha;
  s.beta = beta;
  return s;
}

std::vector<Segment> contour(const Region& region) {
  return std::visit(
      [](const auto& r) -> std::vector<Segment> {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, DiskRegion>) {
          if (!(r.radius > 0.0) || std::abs(r.center) + r.radius >= 1.0)
            throw Error(ErrorCode::RegionOutsideDomain, "disk region must lie inside the open unit disk");
          return {arc(r.center, r.radius, 0.0, 2.0 * kPi)};
        } else if constexpr (std::is_same_v<T, SquareRegion>) {
          const double h = r.half_side;
          const std::array<Complex, 4> c{r.center + Complex{h, -h}, r.center + Complex{h, h},
                                         r.center + Complex{-h, h}, r.center + Complex{-h, -h}};
          if (!(h > 0.0)) throw Error(ErrorCode::RegionOutsideDomain, "square half-side must be positive");
          for (const auto& v : c)
            if (std::abs(v) >= 1.0)
              throw Error(ErrorCode::RegionOutsideDomain, "square region must lie inside the open unit disk");
          return {line(c[3], c[0]), line(c[0], c[1]), line(c[1], c[2]), line(c[2], c[3])};
        } else {
          if (!(r.r_outer < 1.0) || !(r.r_inner >= 0.0) || !(r.r_inner < r.r_outer) || !(r.theta1 > r.theta0) ||
              r.theta1 - r.theta0 > 2.0 * kPi + 1e-15)
            throw Error(ErrorCode::RegionOutsideDomain, "invalid sector region");
          const Complex e0 = std::polar(1.0, r.theta0), e1 = std::polar(1.0, r.theta1);
          std::vector<Segment> segs{line(r.r_inner * e0, r.r_outer * e0), arc(0.0, r.r_outer, r.theta0, r.theta1),
                                    line(r.r_outer * e1, r.r_inner * e1)};
          if (r.r_inner > 0.0) segs.push_back(arc(0.0, r.r_inner, r.theta1, r.theta0));
          return segs;
        }
      },
      region);
}

class WindingIntegrator {
 public:
  WindingIntegrator(const SelfMap& map, Complex w) : map_(map), w_(w) {}

  Complex integrate(const std::vector<Segment>& segs) {
    Complex total{};
    for (const auto& s : segs) {
      const int pieces = s.initial_pieces();
      Sample prev = sample(s, 0.0);
      for (int k = 1; k <= pieces; ++k) {
        const double t1 = static_cast<double>(k) / pieces;
        const Sample next = sample(s, t1);
        total += adapt(s, static_cast<double>(k - 1) / pieces, t1, prev, next, 0);
        prev = next;
      }
    }
    return total;
  }

 private:
  struct Sample {
    Complex f;  // psi - w
    Complex g;  // psi'/(psi - w) * dz/dt
  };

  const SelfMap& map_;
  Complex w_;
  long evals_ = 0;

  Sample sample(const Segment& s, double t) {
    if (++evals_ > 4'000'000)
      throw Error(ErrorCode::BoundaryRootSuspected, "winding integral did not resolve within the evaluation cap");
    Complex z, dz;
    s.at(t, z, dz);
    const Jet j = evaluate(map_.expr(), z);
    const Complex f = j.value - w_;
    if (!(std::abs(f) > 1e-13))
      throw Error(ErrorCode::BoundaryRootSuspected, "psi - w vanishes (numerically) on the region boundary");
    return {f, j.derivative / f * dz};
  }

  Complex adapt(const Segment& s, double t0, double t1, const Sample& a, const Sample& b, int depth) {
    const double tm = 0.5 * (t0 + t1);
    const Sample m = sample(s, tm);
    const double h = t1 - t0;
    const Complex coarse = 0.5 * h * (a.g + b.g);
    const Complex fine = 0.25 * h * (a.g + 2.0 * m.g + b.g);
    const double turn = std::abs(std::arg(m.f / a.f)) + std::abs(std::arg(b.f / m.f));
    // Local tolerance relative to the piece's own contribution; the total only
    // has to land within 0.25 of an integer.
    const double tol = std::max(0.01 * std::abs(fine), 1e-3 * h);
    if ((std::abs(fine - coarse) > tol || turn > 0.5) && depth < 60) {
      return adapt(s, t0, tm, a, m, depth + 1) + adapt(s, tm, t1, m, b, depth + 1);
    }
    if (depth >= 60)
      throw Error(ErrorCode::BoundaryRootSuspected, "winding integrand unresolved at maximum refinement");
    return fine + (fine - coarse) / 3.0;
  }
};

double modulus_arg_key(Complex z) { return std::arg(z); }

void sort_roots(std::vector<Root>& roots) {
  std::sort(roots.begin(), roots.end(), [](const Root& x, const Root& y) {
    const double mx = std::abs(x.z), my = std::abs(y.z);
    if (mx != my) return mx < my;
    return modulus_arg_key(x.z) < modulus_arg_key(y.z);
  });
}

// Single-link clustering within kClusterRadius; centers are multiplicity-weighted means.
std::vector<Root> merge_clusters(const std::vector<Root>& in) {
  const std::size_t n = in.size();
  std::vector<int> label(n, -1);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] >= 0) continue;
    label[i] = next;
    std::vector<std::size_t> stack{i};
    while (!stack.empty()) {
      const std::size_t k = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < n; ++j)
        if (label[j] < 0 && std::abs(in[j].z - in[k].z) <= kClusterRadius) {
          label[j] = next;
          stack.push_back(j);
        }
    }
    ++next;
  }
  std::vector<Root> out(next, Root{Complex{}, 0});
  for (std::size_t i = 0; i < n; ++i) {
    out[label[i]].z += in[i].z * static_cast<double>(in[i].multiplicity);
    out[label[i]].multiplicity += in[i].multiplicity;
  }
  for (auto& r : out) r.z /= static_cast<double>(r.multiplicity);
  return out;
}

// Newton (multiplicity-aware) on psi(z) - w. Returns false when it fails to
// reach the residual target.
bool polish(const SelfMap& map, Complex w, Root& root, double tol) {
  Complex z = root.z;
  const double m = root.multiplicity;
  double best = std::numeric_limits<double>::infinity();
  Complex best_z = z;
  for (int it = 0; it < kMaxNewton; ++it) {
    Jet j;
    try {
      j = evaluate(map.expr(), z);
    } catch (const Error&) {
      break;
    }
    const Complex f = j.value - w;
    const double res = std::abs(f);
    if (!std::isfinite(res)) break;
    if (res < best) {
      best = res;
      best_z = z;
    } else if (best <= tol) {
      break;
    }
    if (res == 0.0) break;
    if (j.derivative == Complex{}) break;
    const Complex step = m * f / j.derivative;
    z -= step;
    if (!is_finite(z) || std::abs(z) > 2.0) break;
    if (best <= tol && std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
  }
  root.z = best_z;
  return best <= tol;
}

struct Subdivider {
  const SelfMap& map;
  Complex w;
  double tol;
  std::vector<Root> found;

  int count(const Region& r) { return winding_count(map, w, r); }

  static double size(const Region& r) {
    if (const auto* d = std::get_if<DiskRegion>(&r)) return d->radius;
    const auto& s = std::get<SectorRegion>(r);
    return std::max(s.r_outer - s.r_inner, s.r_outer * (s.theta1 - s.theta0));
  }

  static Complex center(const Region& r) {
    if (const auto* d = std::get_if<DiskRegion>(&r)) return d->center;
    const auto& s = std::get<SectorRegion>(r);
    return std::polar(0.5 * (s.r_inner + s.r_outer), 0.5 * (s.theta0 + s.theta1));
  }

  static bool contains(const Region& r, Complex z) {
    if (const auto* d = std::get_if<DiskRegion>(&r)) return std::abs(z - d->center) <= d->radius * (1.0 + 1e-9);
    const auto& s = std::get<SectorRegion>(r);
    const double mod = std::abs(z);
    if (mod < s.r_inner * (1.0 - 1e-9) || mod > s.r_outer * (1.0 + 1e-9)) return false;
    double rel = std::fmod(std::arg(z) - s.theta0, 2.0 * kPi);
    if (rel < 0) rel += 2.0 * kPi;
    return rel <= (s.theta1 - s.theta0) + 1e-9 || rel >= 2.0 * kPi - 1e-9;
  }

  static std::vector<Region> split(const Region& r, int variant) {
    static constexpr double shift[] = {0.0, -0.037, 0.041, -0.083, 0.089, 0.131, -0.127};
    const double f = 0.5 + shift[variant];
    std::vector<Region> kids;
    if (const auto* d = std::get_if<DiskRegion>(&r)) {
      const double inner = f * d->radius;
      const double phase = 0.1 * variant;
      kids.push_back(DiskRegion{d->center, inner});
      for (int q = 0; q < 4; ++q)
        kids.push_back(SectorRegion{inner, d->radius, phase + q * kPi / 2.0, phase + (q + 1) * kPi / 2.0});
      return kids;
    }
    const auto& s = std::get<SectorRegion>(r);
    const double rm = s.r_inner + f * (s.r_outer - s.r_inner);
    const double tm = s.theta0 + (1.0 - f) * (s.theta1 - s.theta0);
    kids.push_back(SectorRegion{s.r_inner, rm, s.theta0, tm});
    kids.push_back(SectorRegion{s.r_inner, rm, tm, s.theta1});
    kids.push_back(SectorRegion{rm, s.r_outer, s.theta0, tm});
    kids.push_back(SectorRegion{rm, s.r_outer, tm, s.theta1});
    return kids;
  }

  void process(const Region& region, int n, int depth) {
    if (n <= 0) return;
    if (depth > kMaxQuadtreeDepth)
      throw Error(ErrorCode::NonconvergentRoot, "subdivision exceeded depth 40 without isolating roots");
    if (size(region) < 0.5 * kClusterRadius) {
      Root r{center(region), n};
      if (!polish(map, w, r, tol)) throw Error(ErrorCode::NonconvergentRoot, "Newton failed on a root cluster");
      found.push_back(r);
      return;
    }
    if (n == 1) {
      Root r{center(region), 1};
      if (polish(map, w, r, tol) && contains(region, r.z)) {
        found.push_back(r);
        return;
      }
    }
    bool all_vanish = true;
    for (int variant = 0; variant < 7; ++variant) {
      const auto kids = split(region, variant);
      std::vector<int> counts;
      try {
        for (const auto& k : kids) counts.push_back(count(k));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::BoundaryRootSuspected) throw;
        continue;
      }
      all_vanish = false;
      int sum = 0;
      for (int c : counts) sum += c;
      if (sum != n) continue;
      for (std::size_t i = 0; i < kids.size(); ++i) process(kids[i], counts[i], depth + 1);
      return;
    }
    // A multiple root flattens psi - w below the contour threshold before the
    // region reaches cluster size; accept the whole region as one cluster.
    if (all_vanish && n > 1 && size(region) < 1e-3) {
      Root r{center(region), n};
      if (polish(map, w, r, tol) && contains(region, r.z)) {
        found.push_back(r);
        return;
      }
    }
    throw Error(ErrorCode::NonconvergentRoot, "could not split a subdivision region consistently");
  }
};

// Winding count over Disk(0, radius), nudging the radius inward when a root
// sits on the contour. Returns the radius actually used.
std::pair<int, double> certified_count(const SelfMap& map, Complex w, double radius) {
  const double step = 0.1 * (1.0 - radius);
  for (int k = 0; k < 8; ++k) {
    const double r = radius - k * step;
    try {
      return {winding_count(map, w, DiskRegion{0.0, r}), r};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BoundaryRootSuspected) throw;
    }
  }
  throw Error(ErrorCode::BoundaryRootSuspected, "winding count failed at every perturbed certification radius");
}

PreimageSet companion_solve(const SelfMap& map, Complex w, double tol) {
  const auto& rf = *map.rational_form();
  Coeffs p = poly::add(rf.num, poly::scaled(rf.den, -w));
  double scale = 0.0, pmax = 0.0;
  for (const auto& c : rf.num) scale = std::max(scale, std::abs(c));
  for (const auto& c : rf.den) scale = std::max(scale, std::abs(w) * std::abs(c));
  for (const auto& c : p) pmax = std::max(pmax, std::abs(c));
  if (pmax <= 1e-15 * std::max(scale, 1e-300))
    throw Error(ErrorCode::InfiniteValue, "psi is identically equal to the target");
  poly::trim(p, 1e-14);

  std::vector<Root> cand;
  for (const auto& z : poly::roots(p))
    if (std::abs(z) < 1.0 + 1e-6) cand.push_back({z, 1});
  cand = merge_clusters(cand);
  std::vector<Root> roots;
  for (auto& r : cand) {
    if (!polish(map, w, r, tol)) {
      std::ostringstream os;
      os << "Newton did not reach residual " << tol << " near z = " << r.z;
      throw Error(ErrorCode::NonconvergentRoot, os.str());
    }
    if (std::abs(r.z) < 1.0) roots.push_back(r);
  }
  PreimageSet out;
  out.target = w;
  out.roots = merge_clusters(roots);
  out.method = SolveMethod::Companion;
  out.complete_radius = 1.0;
  return out;
}

PreimageSet subdivision_solve(const SelfMap& map, Complex w, double tol, double radius) {
  Subdivider sub{map, w, tol, {}};
  const auto [total, used] = certified_count(map, w, radius);
  sub.process(DiskRegion{0.0, used}, total, 0);
  PreimageSet out;
  out.target = w;
  out.roots = merge_clusters(sub.found);
  out.method = SolveMethod::Subdivision;
  out.complete_radius = used;
  int got = 0;
  for (const auto& r : out.roots) got += r.multiplicity;
  if (got != total) {
    std::ostringstream os;
    os << "subdivision isolated " << got << " roots but the winding count is " << total;
    throw Error(ErrorCode::CertificationMismatch, os.str());
  }
  return out;
}

}  // namespace

int winding_count(const SelfMap& map, Complex w, const Region& region) {
  require_finite(w, "w");
  const auto segs = contour(region);
  WindingIntegrator integ(map, w);
  const Complex total = integ.integrate(segs) / Complex{0.0, 2.0 * kPi};
  const double nearest = std::round(total.real());
  if (std::abs(total.real() - nearest) > 0.25 || std::abs(total.imag()) > 0.25) {
    std::ostringstream os;
    os << "winding integral " << total.real() << " is not within 0.25 of an integer";
    throw Error(ErrorCode::BoundaryRootSuspected, os.str());
  }
  return static_cast<int>(nearest);
}

PreimageSet solve_preimages(const SelfMap& map, Complex w, double tol, const SolveOptions& options) {
  require_finite(w, "w");
  if (!(std::abs(w) < 1.0)) throw Error(ErrorCode::InvalidArgument, "solve_preimages requires |w| < 1");
  if (!(tol >= 1e-14 && tol <= 1e-6)) throw Error(ErrorCode::InvalidArgument, "tol must lie in [1e-14, 1e-6]");

  SolveMethod method = options.method;
  if (method == SolveMethod::Auto)
    method = map.rational_form() ? SolveMethod::Companion : SolveMethod::Subdivision;
  if (method == SolveMethod::Companion && !map.rational_form())
    throw Error(ErrorCode::InvalidArgument, "companion solving needs a rational form");

  PreimageSet out;
  if (method == SolveMethod::Companion) {
    out = companion_solve(map, w, tol);
  } else {
    if (map.rational_form()) {
      // A constant rational map has no isolated preimages to subdivide for.
      const auto& rf = *map.rational_form();
      if (poly::degree(rf.num) <= 0 && poly::degree(rf.den) <= 0 && std::abs(map.at_zero() - w) <= 1e-15)
        throw Error(ErrorCode::InfiniteValue, "psi is identically equal to the target");
    }
    const double radius = map.rational_form() ? options.certify_radius : options.transcendental_radius;
    out = subdivision_solve(map, w, tol, radius);
  }

  sort_roots(out.roots);
  int total = 0;
  for (const auto& r : out.roots) {
    total += r.multiplicity;
    out.residual_bound = std::max(out.residual_bound, std::abs(evaluate(map.expr(), r.z).value - w));
    if (std::abs(r.z) > 1.0 - kBoundaryFlag) out.boundary_flags.push_back(r);
  }
  out.certified_total = total;

  if (options.certify && out.method == SolveMethod::Companion) {
    const auto [wound, used] = certified_count(map, w, options.certify_radius);
    int inside = 0;
    for (const auto& r : out.roots)
      if (std::abs(r.z) < used) inside += r.multiplicity;
    if (inside != wound) {
      std::ostringstream os;
      os << "polished root count " << inside << " differs from winding count " << wound << " for w = " << w;
      throw Error(ErrorCode::CertificationMismatch, os.str());
    }
  }
  return out;
}

}  // namespace compnorm
