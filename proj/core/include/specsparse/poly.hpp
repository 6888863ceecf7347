#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace specsparse {

// Coefficient arithmetic for polynomial transforms.
//
// kRational keeps every coefficient as an exact integer ratio, so a chain of
// hundreds of derivative steps accumulates zero rounding error; kFloat is
// plain double arithmetic for cases where exactness is not needed.  Doubles
// fed into rational mode are converted exactly (every double is a dyadic
// rational).
enum class CoeffMode { kFloat, kRational };

// Immutable univariate polynomial with real coefficients, value-semantic and
// cheap to copy.  "Real-rooted" is the intended use, not an enforced class
// invariant: the root finder verifies it at extraction time and throws when
// a polynomial turns out not to be real-rooted.
class RealRootedPoly {
 public:
  struct Impl;

  // x^degree
  static RealRootedPoly monomial(int degree,
                                 CoeffMode mode = CoeffMode::kRational);
  // Ascending coefficients c[0] + c[1] x + ...; high-order zeros are trimmed.
  static RealRootedPoly from_coefficients(const std::vector<double>& ascending,
                                          CoeffMode mode = CoeffMode::kFloat);
  // Monic product of (x - r) over the given roots; float mode.
  static RealRootedPoly from_roots(const std::vector<double>& roots);

  int degree() const;
  CoeffMode mode() const;

  // Ascending coefficients, rounded to double in rational mode.
  std::vector<double> coefficients() const;
  // Exact "num/den" strings in rational mode, shortest-round-trip decimals in
  // float mode.  Ascending order.
  std::vector<std::string> coefficient_strings() const;

  double evaluate(double x) const;

  RealRootedPoly derivative() const;

  // p - alpha * p'.  Exact in rational mode.
  RealRootedPoly one_minus_alpha_derivative(double alpha) const;
  // Same with alpha = numer / denom.  In rational mode the quotient is formed
  // exactly instead of rounding through a double first; this is the form the
  // rank-one game uses (alpha = s_t / n).
  RealRootedPoly one_minus_alpha_derivative(double numer, int denom) const;

 private:
  explicit RealRootedPoly(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;

  friend std::vector<double> real_roots(const RealRootedPoly&);
  friend RealRootedPoly laguerre_poly(int, int, double);
  friend class PolyBuilder;
};

// All real roots, ascending, repeated according to multiplicity.  Bracketing
// via the derivative ladder (the roots of p' split the line into intervals
// holding at most one root of p each) plus bisection in multi-precision
// floating point.  Throws if fewer than degree() roots are found, which is
// the signal that the input was not real-rooted after all.
std::vector<double> real_roots(const RealRootedPoly& p);

// Independent route to the same roots: eigenvalues of the companion matrix in
// double precision.  Sorted by (real, imag).  Meant for cross-checking
// real_roots in tests and validation, so it deliberately shares no code with
// it.  Degree must be >= 1 and modest (the companion matrix is dense).
std::vector<std::complex<double>> companion_roots(const RealRootedPoly& p);

// Applies T steps of p -> (1 - (s_t/n) d/dx) p to x^n.  This is exactly the
// characteristic-polynomial update of the rank-one game, so the result's
// roots majorize-track the realized spectra.  Mode kRational unless forced.
RealRootedPoly product_transform(int n, const std::vector<double>& scalings,
                                 std::optional<CoeffMode> force_mode = {});

// Closed-form benchmark polynomial: (1 - (S/T) d/dx)^T x^n, i.e. the product
// transform with T equal scalings s_t = n S / T (realized per-dimension
// total exactly S).
// Equals (-S/T)^n n! L_n^{(T-n)}(T x / S) in terms of associated Laguerre
// polynomials.  Always rational mode.  Requires 1 <= n <= T and S >= 0.
RealRootedPoly laguerre_poly(int n, int T, double S);

// Asymptotic support edges of the root distribution of laguerre_poly(n,T,S)
// as n grows with n/T and S/n held fixed: S (1 -+ sqrt(n/T))^2.
std::pair<double, double> mp_edges(int n, int T, double S);

// Condition-number benchmark ((sqrt(d/2)+1)/(sqrt(d/2)-1))^2 for average
// degree d > 2.
double kappa(double d);

struct MajorizationReport {
  bool holds = false;
  double min_prefix_slack = 0.0;  // min over prefixes of sum(upper)-sum(lower)
  double total_difference = 0.0;  // sum(upper) - sum(lower)
};

// Does `upper` majorize `lower`?  Both multisets are sorted descending
// internally; requires equal lengths.  All prefix sums of `upper` must
// dominate within -tol and the totals must agree within tol (absolute).
MajorizationReport majorization_report(const std::vector<double>& upper,
                                       const std::vector<double>& lower,
                                       double tol = 1e-8);
bool majorizes(const std::vector<double>& upper,
               const std::vector<double>& lower, double tol = 1e-8);

}  // namespace specsparse
