#pragma once

// Numeric kernels for collar widths, length-band bookkeeping, completeness
// certification, and the right-angled hexagon (pants seam) relation.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypsurf {

class HypGeomError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline double arcsinh1() { return std::asinh(1.0); }  // ln(1 + sqrt 2)

// Boundary lengths live in (0, arcsinh 1), interior cuffs in
// (arcsinh 1, 2 arcsinh 1), and every closed geodesic stays below sup_bound.
struct LengthBudget {
  double boundary_lo = 0.0;
  double boundary_hi = arcsinh1();
  double cuff_lo = arcsinh1();
  double cuff_hi = 2.0 * arcsinh1();
  double sup_bound = 2.0 * arcsinh1();

  bool boundary_ok(double l) const { return l > boundary_lo && l < boundary_hi; }
  bool cuff_ok(double l) const { return l > cuff_lo && l < cuff_hi; }
};

// eta(l) = arcsinh(1 / sinh(l/2)); half-width of the embedded collar around
// a closed geodesic of length l.
inline double collar_width(double l) {
  if (!(l > 0.0)) throw HypGeomError("collar_width: length must be positive");
  return std::asinh(1.0 / std::sinh(l / 2.0));
}

// Hypothesis check: geodesics shorter than 2 arcsinh(1) are either equal or
// disjoint, so two such lengths certify disjointness.
inline bool short_geodesics_disjoint(double l1, double l2) {
  if (!(l1 > 0.0) || !(l2 > 0.0)) return false;
  const double threshold = 2.0 * arcsinh1();
  return l1 < threshold && l2 < threshold;
}

struct CompletenessCertificate {
  bool holds = false;
  double sup_bound = 0.0;       // witnessing M
  double max_length = 0.0;      // largest length found
  std::string failure;          // offending rule when !holds
};

// A pants decomposition with all cuff lengths bounded and no planar ends
// forces completeness; the certificate records the witnessing bound.
inline CompletenessCertificate certify_lengths(const std::vector<double>& lengths,
                                               double sup_bound,
                                               bool no_planar_ends) {
  CompletenessCertificate cert;
  cert.sup_bound = sup_bound;
  if (!no_planar_ends) {
    cert.failure = "recipe declares planar ends";
    return cert;
  }
  for (double l : lengths) {
    if (l > cert.max_length) cert.max_length = l;
    if (!(l > 0.0) || !(l < sup_bound)) {
      cert.failure = "length " + std::to_string(l) + " outside (0, " +
                     std::to_string(sup_bound) + ")";
      return cert;
    }
  }
  cert.holds = true;
  return cert;
}

// Seam lengths of the pair of pants with cuff lengths a, b, c: the common
// perpendicular between cuffs a and b satisfies
//   cosh(d_ab) = (cosh(c/2) + cosh(a/2) cosh(b/2)) / (sinh(a/2) sinh(b/2))
// and cyclically.  Returned in the order (d_ab, d_bc, d_ca).
inline std::array<double, 3> pants_seam(double a, double b, double c) {
  if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0)) {
    throw HypGeomError("pants_seam: cuff lengths must be positive");
  }
  auto seam = [](double x, double y, double opposite) {
    double num = std::cosh(opposite / 2.0) + std::cosh(x / 2.0) * std::cosh(y / 2.0);
    return std::acosh(num / (std::sinh(x / 2.0) * std::sinh(y / 2.0)));
  };
  return {seam(a, b, c), seam(b, c, a), seam(c, a, b)};
}

}  // namespace hypsurf
