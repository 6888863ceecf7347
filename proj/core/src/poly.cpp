#include "specsparse/poly.hpp"

#include <gmpxx.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace specsparse {

// Rational coefficients are stored as integer numerators over one shared
// positive denominator.  Keeping the denominator common (and never reducing
// it) turns the frequently-applied p - alpha p' step into pure mpz_class
// arithmetic: no per-coefficient gcds, which matter a lot after a few hundred
// transform rounds.
struct RealRootedPoly::Impl {
  CoeffMode mode = CoeffMode::kFloat;
  std::vector<double> fc;       // ascending; used in float mode
  std::vector<mpz_class> num;   // ascending; used in rational mode
  mpz_class den = 1;
};

namespace {

using Impl = RealRootedPoly::Impl;

template <typename T>
void trim_high_zeros(std::vector<T>& c) {
  while (c.size() > 1 && c.back() == 0) c.pop_back();
}

std::shared_ptr<const Impl> make_float(std::vector<double> c) {
  for (double x : c) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument("polynomial: non-finite coefficient");
    }
  }
  if (c.empty()) c.push_back(0.0);
  trim_high_zeros(c);
  auto impl = std::make_shared<Impl>();
  impl->mode = CoeffMode::kFloat;
  impl->fc = std::move(c);
  return impl;
}

std::shared_ptr<const Impl> make_rational(std::vector<mpz_class> num,
                                          mpz_class den) {
  if (num.empty()) num.emplace_back(0);
  trim_high_zeros(num);
  auto impl = std::make_shared<Impl>();
  impl->mode = CoeffMode::kRational;
  impl->num = std::move(num);
  impl->den = std::move(den);
  return impl;
}

}  // namespace

RealRootedPoly::RealRootedPoly(std::shared_ptr<const Impl> impl)
    : impl_(std::move(impl)) {}

RealRootedPoly RealRootedPoly::monomial(int degree, CoeffMode mode) {
  if (degree < 0) throw std::invalid_argument("monomial: negative degree");
  if (mode == CoeffMode::kFloat) {
    std::vector<double> c(degree + 1, 0.0);
    c.back() = 1.0;
    return RealRootedPoly(make_float(std::move(c)));
  }
  std::vector<mpz_class> num(degree + 1, mpz_class(0));
  num.back() = 1;
  return RealRootedPoly(make_rational(std::move(num), 1));
}

RealRootedPoly RealRootedPoly::from_coefficients(
    const std::vector<double>& ascending, CoeffMode mode) {
  if (mode == CoeffMode::kFloat) {
    return RealRootedPoly(make_float(ascending));
  }
  // Doubles are dyadic rationals, so the common denominator is the largest
  // power of two among the individual ones.
  std::vector<mpq_class> qs;
  qs.reserve(ascending.size());
  mpz_class den = 1;
  for (double x : ascending) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument("polynomial: non-finite coefficient");
    }
    qs.emplace_back(x);
    if (qs.back().get_den() > den) den = qs.back().get_den();
  }
  std::vector<mpz_class> num;
  num.reserve(qs.size());
  for (const auto& q : qs) num.push_back(q.get_num() * (den / q.get_den()));
  return RealRootedPoly(make_rational(std::move(num), std::move(den)));
}

RealRootedPoly RealRootedPoly::from_roots(const std::vector<double>& roots) {
  std::vector<double> c{1.0};
  for (double r : roots) {
    if (!std::isfinite(r)) throw std::invalid_argument("from_roots: non-finite root");
    c.push_back(0.0);
    // Multiply by (x - r) in descending order; downward sweep keeps the
    // not-yet-updated c[i-1] available as the old value.
    for (std::size_t i = c.size() - 1; i > 0; --i) c[i] -= r * c[i - 1];
  }
  std::reverse(c.begin(), c.end());
  return RealRootedPoly(make_float(std::move(c)));
}

int RealRootedPoly::degree() const {
  return static_cast<int>((impl_->mode == CoeffMode::kFloat ? impl_->fc.size()
                                                            : impl_->num.size()) -
                          1);
}

CoeffMode RealRootedPoly::mode() const { return impl_->mode; }

std::vector<double> RealRootedPoly::coefficients() const {
  if (impl_->mode == CoeffMode::kFloat) return impl_->fc;
  std::vector<double> out;
  out.reserve(impl_->num.size());
  const mpf_class den(impl_->den, 256);
  for (const auto& n : impl_->num) {
    out.push_back(mpf_class(mpf_class(n, 256) / den).get_d());
  }
  return out;
}

std::vector<std::string> RealRootedPoly::coefficient_strings() const {
  std::vector<std::string> out;
  if (impl_->mode == CoeffMode::kFloat) {
    char buf[64];
    for (double x : impl_->fc) {
      std::snprintf(buf, sizeof(buf), "%.17g", x);
      out.emplace_back(buf);
    }
    return out;
  }
  for (const auto& n : impl_->num) {
    mpq_class q(n, impl_->den);
    q.canonicalize();
    out.push_back(q.get_str());
  }
  return out;
}

double RealRootedPoly::evaluate(double x) const {
  const std::vector<double> c = coefficients();
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

RealRootedPoly RealRootedPoly::derivative() const {
  if (impl_->mode == CoeffMode::kFloat) {
    if (impl_->fc.size() == 1) return RealRootedPoly(make_float({0.0}));
    std::vector<double> c(impl_->fc.size() - 1);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = impl_->fc[i + 1] * (i + 1);
    return RealRootedPoly(make_float(std::move(c)));
  }
  if (impl_->num.size() == 1) return RealRootedPoly(make_rational({}, 1));
  std::vector<mpz_class> num(impl_->num.size() - 1);
  for (std::size_t i = 0; i < num.size(); ++i) {
    num[i] = impl_->num[i + 1] * static_cast<unsigned long>(i + 1);
  }
  return RealRootedPoly(make_rational(std::move(num), impl_->den));
}

RealRootedPoly RealRootedPoly::one_minus_alpha_derivative(double alpha) const {
  return one_minus_alpha_derivative(alpha, 1);
}

RealRootedPoly RealRootedPoly::one_minus_alpha_derivative(double numer,
                                                          int denom) const {
  if (!std::isfinite(numer) || denom <= 0) {
    throw std::invalid_argument("one_minus_alpha_derivative: bad alpha");
  }
  if (impl_->mode == CoeffMode::kFloat) {
    const double alpha = numer / denom;
    std::vector<double> c = impl_->fc;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
      c[i] -= alpha * (i + 1) * impl_->fc[i + 1];
    }
    return RealRootedPoly(make_float(std::move(c)));
  }
  mpq_class alpha(numer);
  alpha /= denom;  // exact; canonicalized by gmpxx
  const mpz_class& p = alpha.get_num();
  const mpz_class& q = alpha.get_den();
  std::vector<mpz_class> num(impl_->num.size());
  for (std::size_t i = 0; i < num.size(); ++i) {
    num[i] = q * impl_->num[i];
    if (i + 1 < impl_->num.size()) {
      num[i] -= p * static_cast<unsigned long>(i + 1) * impl_->num[i + 1];
    }
  }
  return RealRootedPoly(make_rational(std::move(num), impl_->den * q));
}

// --- root extraction --------------------------------------------------------

namespace {

// Derivative ladder in fixed multi-precision floats.  ladder[k] holds the
// coefficients of the k-th degree member, i.e. the (deg - k)-th derivative of
// p up to a positive constant factor we never need.
struct Ladder {
  std::vector<std::vector<mpf_class>> level;
  std::vector<std::vector<double>> log2c;  // per level, log2 of each |coefficient|
  int prec;

  double log2_abs(const mpf_class& x) const {
    if (x == 0) return -1e9;
    long e = 0;
    const double d = mpf_get_d_2exp(&e, x.get_mpf_t());
    return std::log2(std::abs(d)) + static_cast<double>(e);
  }

  void build_from_top(std::vector<mpf_class> top) {
    const int deg = static_cast<int>(top.size()) - 1;
    level.assign(deg + 1, {});
    level[deg] = std::move(top);
    for (int k = deg; k > 0; --k) {
      level[k - 1].resize(k);
      for (int i = 0; i < k; ++i) {
        level[k - 1][i] = mpf_class(0, prec);
        level[k - 1][i] = level[k][i + 1] * static_cast<unsigned long>(i + 1);
      }
    }
    log2c.assign(deg + 1, {});
    for (int k = 0; k <= deg; ++k) {
      log2c[k].reserve(level[k].size());
      for (const auto& c : level[k]) log2c[k].push_back(log2_abs(c));
    }
  }

  mpf_class eval(int k, const mpf_class& x) const {
    mpf_class acc(0, prec);
    for (int i = k; i >= 0; --i) {
      acc = acc * x + level[k][i];
    }
    return acc;
  }

  // Sign of level k at x, where values that could be pure rounding noise
  // count as zero.  The threshold is scale(x) * 2^(64 - prec) with
  // scale(x) = (k+1) * max_i |c_i| * |x|^i, which bounds every intermediate
  // Horner term.  Using the largest term rather than max|c| * |x|^k matters
  // far from the roots: out by the Cauchy walls the leading term dominates,
  // and inflating the threshold by the full coefficient span would misread
  // the (huge, perfectly clean) wall values as zero.
  int sign_at(int k, const mpf_class& x) const {
    const mpf_class v = eval(k, x);
    const int s = sgn(v);
    if (s == 0) return 0;
    const double ax = std::abs(mpf_get_d(x.get_mpf_t()));
    const double lx = std::log2(std::max(1.0, ax));
    double scale = -1e9;
    for (int i = 0; i <= k; ++i) scale = std::max(scale, log2c[k][i] + i * lx);
    const double thr_log2 = scale + std::log2(k + 1.0) + 64.0 - prec;
    return log2_abs(v) <= thr_log2 ? 0 : s;
  }

  // Upper bound on |roots| of level k (Cauchy bound, padded).
  double root_bound(int k) const {
    const double lead = log2_abs(level[k][k]);
    double worst = 0.0;
    for (int i = 0; i < k; ++i) {
      worst = std::max(worst, log2_abs(level[k][i]) - lead);
    }
    if (worst > 900.0) {
      throw std::runtime_error(
          "real_roots: coefficient magnitudes span too wide a range");
    }
    return 2.0 + std::exp2(worst);
  }
};

// Raised when a ladder level yields fewer roots than its degree.  Either the
// input is not real-rooted or two roots sit below the noise floor of the
// current precision; the caller retries at higher precision before deciding.
struct RootCountMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> isolate_at_precision(const Impl& im, int deg, int prec);

}  // namespace

std::vector<double> real_roots(const RealRootedPoly& p) {
  const Impl& im = *p.impl_;
  const int deg = p.degree();
  if (deg == 0) {
    const bool zero = im.mode == CoeffMode::kFloat ? im.fc[0] == 0.0 : im.num[0] == 0;
    if (zero) {
      throw std::invalid_argument("real_roots: zero polynomial");
    }
    return {};
  }

  const int base_prec = std::max(256, 256 + 4 * deg);
  const int attempts = 4;  // up to 8x the base precision
  for (int round = 0;; ++round) {
    try {
      return isolate_at_precision(im, deg, base_prec << round);
    } catch (const RootCountMismatch& e) {
      if (round + 1 == attempts) throw std::runtime_error(e.what());
    }
  }
}

namespace {

std::vector<double> isolate_at_precision(const Impl& im, int deg, int prec) {
  Ladder ladder;
  ladder.prec = prec;
  std::vector<mpf_class> top;
  top.reserve(deg + 1);
  if (im.mode == CoeffMode::kFloat) {
    for (double c : im.fc) top.emplace_back(c, ladder.prec);
  } else {
    const mpf_class den(im.den, ladder.prec);
    for (const auto& n : im.num) {
      top.emplace_back(0, ladder.prec);
      top.back() = mpf_class(n, ladder.prec) / den;
    }
  }
  ladder.build_from_top(std::move(top));

  auto bisect = [&](int k, mpf_class a, mpf_class b, int sa) {
    mpf_class mid(0, ladder.prec);
    // The Cauchy walls can sit at 2^900, so budget the halvings from the
    // actual starting width; a fixed count would leave the outermost
    // intervals unconverged and feed garbage partition points upward.
    const double w0 = mpf_get_d(mpf_class(b - a).get_mpf_t());
    const long iters =
        80 + static_cast<long>(std::ceil(std::log2(std::max(2.0, w0))));
    for (long iter = 0; iter < iters; ++iter) {
      mid = (a + b) / 2;
      const double width = mpf_get_d(mpf_class(b - a).get_mpf_t());
      const double at = std::abs(mpf_get_d(mid.get_mpf_t()));
      if (width <= 0x1.0p-60 * std::max(1.0, at)) break;
      const int s = ladder.sign_at(k, mid);
      if (s == 0) break;
      if (s == sa) {
        a = mid;
      } else {
        b = mid;
      }
    }
    return mid;
  };

  // Level 1 is linear: exact quotient.
  std::vector<mpf_class> roots;
  {
    mpf_class r(0, ladder.prec);
    r = -ladder.level[1][0] / ladder.level[1][1];
    roots.push_back(std::move(r));
  }

  for (int k = 2; k <= deg; ++k) {
    double bound = ladder.root_bound(k);
    for (const auto& r : roots) {
      bound = std::max(bound, 1.5 * std::abs(mpf_get_d(r.get_mpf_t())) + 1.0);
    }
    std::vector<mpf_class> pts;
    pts.reserve(roots.size() + 2);
    pts.emplace_back(-bound, ladder.prec);
    for (auto& r : roots) pts.push_back(std::move(r));
    pts.emplace_back(bound, ladder.prec);

    std::vector<int> sign(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) sign[i] = ladder.sign_at(k, pts[i]);

    // Between consecutive roots of the derivative the polynomial is strictly
    // monotone, so each closed interval holds at most one root: either an
    // endpoint where the value vanishes (a root shared with the derivative,
    // i.e. a multiple root -- both neighboring intervals claim it, which is
    // exactly its multiplicity) or an interior sign change.
    std::vector<mpf_class> next;
    next.reserve(k);
    for (std::size_t j = 0; j + 1 < pts.size(); ++j) {
      if (sign[j] == 0) {
        next.emplace_back(pts[j]);
      } else if (sign[j + 1] == 0) {
        next.emplace_back(pts[j + 1]);
      } else if (sign[j] != sign[j + 1]) {
        next.push_back(bisect(k, pts[j], pts[j + 1], sign[j]));
      }
    }
    if (static_cast<int>(next.size()) != k) {
      throw RootCountMismatch(
          "real_roots: expected " + std::to_string(k) + " roots at ladder level " +
          std::to_string(k) + " at " + std::to_string(prec) +
          "-bit precision, found " + std::to_string(next.size()) +
          " (polynomial of degree " + std::to_string(deg) +
          " may not be real-rooted, or roots are closer than the working "
          "precision)");
    }
    roots = std::move(next);
  }

  std::vector<double> out;
  out.reserve(roots.size());
  for (const auto& r : roots) out.push_back(mpf_get_d(r.get_mpf_t()));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<std::complex<double>> companion_roots(const RealRootedPoly& p) {
  const int deg = p.degree();
  if (deg < 1) throw std::invalid_argument("companion_roots: need degree >= 1");
  const std::vector<double> c = p.coefficients();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) m(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) m(i, deg - 1) = -c[i] / c[deg];
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("companion_roots: eigensolver failed");
  }
  std::vector<std::complex<double>> out(deg);
  for (int i = 0; i < deg; ++i) out[i] = solver.eigenvalues()[i];
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

RealRootedPoly product_transform(int n, const std::vector<double>& scalings,
                                 std::optional<CoeffMode> force_mode) {
  if (n < 1) throw std::invalid_argument("product_transform: n must be >= 1");
  const CoeffMode mode = force_mode.value_or(CoeffMode::kRational);
  RealRootedPoly p = RealRootedPoly::monomial(n, mode);
  for (double s : scalings) {
    if (!std::isfinite(s)) {
      throw std::invalid_argument("product_transform: non-finite scaling");
    }
    p = p.one_minus_alpha_derivative(s, n);
  }
  return p;
}

RealRootedPoly laguerre_poly(int n, int T, double S) {
  if (n < 1 || T < n) {
    throw std::invalid_argument("laguerre_poly: need 1 <= n <= T");
  }
  if (!std::isfinite(S) || S < 0.0) {
    throw std::invalid_argument("laguerre_poly: need S >= 0");
  }
  RealRootedPoly p = RealRootedPoly::monomial(n, CoeffMode::kRational);
  for (int t = 0; t < T; ++t) p = p.one_minus_alpha_derivative(S, T);
  return p;
}

std::pair<double, double> mp_edges(int n, int T, double S) {
  if (n < 1 || T < n) throw std::invalid_argument("mp_edges: need 1 <= n <= T");
  if (!std::isfinite(S) || S < 0.0) throw std::invalid_argument("mp_edges: need S >= 0");
  const double r = std::sqrt(static_cast<double>(n) / T);
  return {S * (1.0 - r) * (1.0 - r), S * (1.0 + r) * (1.0 + r)};
}

double kappa(double d) {
  if (!(d > 2.0)) {
    throw std::invalid_argument("kappa: requires average degree d > 2");
  }
  const double s = std::sqrt(d / 2.0);
  return (s + 1.0) * (s + 1.0) / ((s - 1.0) * (s - 1.0));
}

MajorizationReport majorization_report(const std::vector<double>& upper,
                                       const std::vector<double>& lower,
                                       double tol) {
  if (upper.size() != lower.size()) {
    throw std::invalid_argument("majorization: size mismatch");
  }
  if (upper.empty()) return {true, 0.0, 0.0};
  std::vector<double> a = upper;
  std::vector<double> b = lower;
  std::sort(a.rbegin(), a.rend());
  std::sort(b.rbegin(), b.rend());
  MajorizationReport rep;
  rep.min_prefix_slack = std::numeric_limits<double>::infinity();
  double sa = 0.0;
  double sb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sa += a[i];
    sb += b[i];
    rep.min_prefix_slack = std::min(rep.min_prefix_slack, sa - sb);
  }
  rep.total_difference = sa - sb;
  rep.holds = rep.min_prefix_slack >= -tol && std::abs(rep.total_difference) <= tol;
  return rep;
}

bool majorizes(const std::vector<double>& upper,
               const std::vector<double>& lower, double tol) {
  return majorization_report(upper, lower, tol).holds;
}

}  // namespace specsparse
