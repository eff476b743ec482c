#include <compnorm/mapspec.hpp>

#include <cctype>
#include <charconv>
#include <sstream>

namespace compnorm {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct Arg {
  MapPtr expr;       // set when the argument is a nested map
  Complex value{};   // set otherwise
  bool is_integer = false;
  long long integer = 0;
  std::size_t pos = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  MapPtr parse() {
    MapPtr e = expr(1);
    skip_ws();
    if (i_ != s_.size()) fail("end of input");
    return e;
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;

  [[noreturn]] void fail(std::string_view expected) const {
    std::ostringstream os;
    os << "syntax error at position " << i_ << ": expected " << expected;
    if (i_ < s_.size()) os << ", found '" << s_[i_] << "'";
    else os << ", found end of input";
    throw Error(ErrorCode::SyntaxError, os.str());
  }

  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool peek(char c) {
    skip_ws();
    return i_ < s_.size() && s_[i_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("'") + c + "'");
    ++i_;
  }

  std::string_view name() {
    skip_ws();
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) ++i_;
    return s_.substr(start, i_ - start);
  }

  // real := ['+'|'-'] digits ['.' digits] [exponent]
  bool real(double& out) {
    const std::size_t start = i_;
    std::size_t j = i_;
    if (j < s_.size() && (s_[j] == '+' || s_[j] == '-')) ++j;
    const std::size_t digits_start = j;
    while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
    if (j < s_.size() && s_[j] == '.') {
      ++j;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
    }
    if (j == digits_start || (j == digits_start + 1 && s_[digits_start] == '.')) return false;
    if (j < s_.size() && (s_[j] == 'e' || s_[j] == 'E')) {
      std::size_t k = j + 1;
      if (k < s_.size() && (s_[k] == '+' || s_[k] == '-')) ++k;
      if (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) {
        while (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) ++k;
        j = k;
      }
    }
    std::string_view tok = s_.substr(start, j - start);
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) return false;
    i_ = j;
    return true;
  }

  Arg literal() {
    skip_ws();
    Arg a;
    a.pos = i_;
    const std::size_t start = i_;
    double re = 0.0;
    if (!real(re)) fail("a number or a map name");
    const std::string_view first = s_.substr(start, i_ - start);
    if (i_ < s_.size() && s_[i_] == 'i') {
      ++i_;
      a.value = Complex{0.0, re};
      return a;
    }
    std::size_t save = i_;
    skip_ws();
    if (i_ < s_.size() && (s_[i_] == '+' || s_[i_] == '-')) {
      const bool neg = s_[i_] == '-';
      ++i_;
      skip_ws();
      double im = 0.0;
      if (i_ < s_.size() && s_[i_] != '+' && s_[i_] != '-' && real(im)) {
        if (i_ >= s_.size() || s_[i_] != 'i') fail("'i' after the imaginary part");
        ++i_;
        a.value = Complex{re, neg ? -im : im};
        return a;
      }
      fail("imaginary part");
    }
    i_ = save;
    a.value = Complex{re, 0.0};
    if (first.find_first_of(".eE") == std::string_view::npos) {
      a.is_integer = true;
      std::string_view t = first;
      if (!t.empty() && t.front() == '+') t.remove_prefix(1);
      std::from_chars(t.data(), t.data() + t.size(), a.integer);
    }
    return a;
  }

  Arg arg(int depth) {
    skip_ws();
    if (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) {
      Arg a;
      a.pos = i_;
      a.expr = expr(depth + 1);
      return a;
    }
    return literal();
  }

  std::vector<Arg> arg_list(int depth, bool allow_semicolon, std::size_t& split) {
    std::vector<Arg> args;
    split = std::string::npos;
    args.push_back(arg(depth));
    for (;;) {
      if (peek(',')) {
        ++i_;
      } else if (allow_semicolon && split == std::string::npos && peek(';')) {
        ++i_;
        split = args.size();
      } else {
        break;
      }
      args.push_back(arg(depth));
    }
    return args;
  }

  [[noreturn]] void arity(std::string_view n, std::string_view what, std::size_t pos) {
    i_ = pos;
    fail(std::string(what) + " for '" + std::string(n) + "'");
  }

  Complex number(const Arg& a, std::string_view n) {
    if (a.expr) arity(n, "a numeric argument", a.pos);
    return a.value;
  }

  double real_number(const Arg& a, std::string_view n) {
    const Complex c = number(a, n);
    if (c.imag() != 0.0) arity(n, "a real argument", a.pos);
    return c.real();
  }

  MapPtr map_arg(const Arg& a, std::string_view n) {
    if (!a.expr) arity(n, "a map argument", a.pos);
    return a.expr;
  }

  Coeffs numbers(const std::vector<Arg>& args, std::size_t from, std::size_t to, std::string_view n) {
    Coeffs out;
    for (std::size_t k = from; k < to; ++k) out.push_back(number(args[k], n));
    return out;
  }

  MapPtr expr(int depth) {
    if (depth > kMaxTreeDepth) throw Error(ErrorCode::DomainError, "map tree deeper than 32");
    skip_ws();
    const std::size_t name_pos = i_;
    const std::string_view n = name();
    if (n.empty()) fail("a map name");
    static constexpr std::string_view known[] = {"identity", "const",  "monomial", "mobius",
                                                 "blaschke", "poly",   "rational", "atomic",
                                                 "scale",    "compose", "halfplane"};
    bool ok = false;
    for (auto k : known) ok = ok || k == n;
    if (!ok) {
      i_ = name_pos;
      fail("a map name (identity, const, monomial, mobius, blaschke, poly, rational, atomic, scale, "
           "compose, halfplane)");
    }
    std::vector<Arg> args;
    std::size_t split = std::string::npos;
    const std::size_t open_pos = i_;
    if (peek('(')) {
      ++i_;
      args = arg_list(depth, n == "rational", split);
      expect(')');
    }
    const std::size_t end_pos = i_;
    auto need = [&](std::size_t count) {
      if (args.size() != count) {
        i_ = open_pos;
        fail(std::to_string(count) + " argument(s) for '" + std::string(n) + "'");
      }
    };
    MapPtr out;
    if (n == "identity") {
      need(0);
      out = make_identity();
    } else if (n == "halfplane") {
      need(0);
      out = make_halfplane();
    } else if (n == "const") {
      need(1);
      out = make_const(number(args[0], n));
    } else if (n == "monomial") {
      need(1);
      if (args[0].expr || !args[0].is_integer) arity(n, "an integer argument", args[0].pos);
      if (args[0].integer < 1 || args[0].integer > 1 << 20)
        throw Error(ErrorCode::DomainError, "monomial exponent must lie in [1, 2^20]");
      out = make_monomial(static_cast<int>(args[0].integer));
    } else if (n == "mobius") {
      need(1);
      out = make_mobius(number(args[0], n));
    } else if (n == "atomic") {
      need(1);
      out = make_atomic(real_number(args[0], n));
    } else if (n == "blaschke") {
      if (args.empty()) need(1);
      out = make_blaschke(numbers(args, 0, args.size(), n));
    } else if (n == "poly") {
      if (args.empty()) need(1);
      out = make_poly(numbers(args, 0, args.size(), n));
    } else if (n == "rational") {
      if (split == std::string::npos || split == 0 || split == args.size()) {
        i_ = open_pos;
        fail("'num...; den...' coefficient lists for 'rational'");
      }
      out = make_rational(numbers(args, 0, split, n), numbers(args, split, args.size(), n));
    } else if (n == "scale") {
      need(2);
      out = make_scale(real_number(args[0], n), map_arg(args[1], n));
    } else {
      need(2);
      out = make_compose(map_arg(args[0], n), map_arg(args[1], n));
    }
    i_ = end_pos;
    return out;
  }
};

std::string fmt_real(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string fmt_complex(Complex c) {
  if (c.imag() == 0.0) return fmt_real(c.real());
  if (c.real() == 0.0) return fmt_real(c.imag()) + "i";
  return fmt_real(c.real()) + (std::signbit(c.imag()) ? "-" : "+") + fmt_real(std::abs(c.imag())) + "i";
}

std::string join(const Coeffs& c) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ", ";
    out += fmt_complex(c[i]);
  }
  return out;
}

}  // namespace

MapPtr parse_map(std::string_view spec) {
  if (spec.empty()) throw Error(ErrorCode::SyntaxError, "syntax error at position 0: empty map spec");
  if (spec.size() > 4096) throw Error(ErrorCode::SyntaxError, "map spec longer than 4096 characters");
  return Parser(spec).parse();
}

std::string print_map(const MapExpr& expr) {
  return std::visit(
      overloaded{
          [](const node::Identity&) -> std::string { return "identity"; },
          [](const node::HalfPlane&) -> std::string { return "halfplane"; },
          [](const node::Const& c) { return "const(" + fmt_complex(c.c) + ")"; },
          [](const node::Monomial& m) { return "monomial(" + std::to_string(m.k) + ")"; },
          [](const node::Mobius& m) { return "mobius(" + fmt_complex(m.a) + ")"; },
          [](const node::Blaschke& b) { return "blaschke(" + join(b.zeros) + ")"; },
          [](const node::Poly& p) { return "poly(" + join(p.coeffs) + ")"; },
          [](const node::Rational& r) { return "rational(" + join(r.num) + "; " + join(r.den) + ")"; },
          [](const node::AtomicInner& a) { return "atomic(" + fmt_real(a.t) + ")"; },
          [](const node::Scale& s) { return "scale(" + fmt_real(s.r) + ", " + print_map(*s.inner) + ")"; },
          [](const node::Compose& c) {
            return "compose(" + print_map(*c.outer) + ", " + print_map(*c.inner) + ")";
          },
      },
      expr.node);
}

std::string_view map_grammar() {
  return R"grammar(Map-spec grammar:
  expr    := name | name "(" args ")" ;
  args    := arg { "," arg } ;
  arg     := expr | complex | integer ;
  complex := real [ ("+"|"-") real "i" ] | real "i" ;
  name    := "identity" | "const" | "monomial" | "mobius" | "blaschke" | "poly"
           | "rational" | "atomic" | "scale" | "compose" | "halfplane" ;
  rational(c0,...,cm; d0,...,dk) splits numerator/denominator coefficients with ";".

  identity            z
  const(c)            c, |c| < 1
  monomial(k)         z^k, k >= 1
  mobius(a)           (a - z)/(1 - conj(a) z), |a| < 1
  blaschke(a1,...)    prod (z - a_j)/(1 - conj(a_j) z), |a_j| < 1
  poly(c0,c1,...)     c0 + c1 z + ...   (must map the disk into itself)
  rational(n...; d...) ratio of polynomials (self-map, denominator zero-free on the closed disk)
  atomic(t)           exp(t (z + 1)/(z - 1)), t > 0
  scale(r, f)         r f(z), 0 < r <= 1
  compose(f, g)       f(g(z))
  halfplane           (1 + z)/2
)grammar";
}

}  // namespace compnorm
