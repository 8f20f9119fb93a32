#include "seqmc/binomial.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "seqmc/errors.hpp"

namespace seqmc {
namespace {

// stirlerr(n) = log(n!) - log(sqrt(2 pi n) (n/e)^n)
double stirlerr(Step n) {
  static const std::array<double, 16> small = [] {
    std::array<double, 16> t{};
    const double half_log_2pi = 0.5 * std::log(2.0 * std::numbers::pi);
    t[0] = 0.0;
    for (int i = 1; i < 16; ++i) {
      const double x = i;
      t[static_cast<std::size_t>(i)] = std::lgamma(x + 1.0) - (x + 0.5) * std::log(x) + x - half_log_2pi;
    }
    return t;
  }();
  constexpr double s0 = 1.0 / 12.0;
  constexpr double s1 = 1.0 / 360.0;
  constexpr double s2 = 1.0 / 1260.0;
  constexpr double s3 = 1.0 / 1680.0;
  constexpr double s4 = 1.0 / 1188.0;

  if (n < 16) return small[static_cast<std::size_t>(n)];
  const double nn = static_cast<double>(n);
  const double r = 1.0 / nn;
  const double r2 = r * r;
  if (n > 500) return (s0 - s1 * r2) * r;
  if (n > 80) return (s0 - (s1 - s2 * r2) * r2) * r;
  if (n > 35) return (s0 - (s1 - (s2 - s3 * r2) * r2) * r2) * r;
  return (s0 - (s1 - (s2 - (s3 - s4 * r2) * r2) * r2) * r2) * r;
}

// Deviance term x log(x/np) + np - x, by series near x = np.
double bd0(double x, double np) {
  if (std::fabs(x - np) < 0.1 * (x + np)) {
    double v = (x - np) / (x + np);
    double s = (x - np) * v;
    double ej = 2.0 * x * v;
    const double v2 = v * v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v2;
      const double s1 = s + ej / (2 * j + 1);
      if (s1 == s) return s1;
      s = s1;
    }
    return s;
  }
  return x * std::log(x / np) + np - x;
}

void check(const BinomialParams& b) {
  if (b.n < 0 || b.x < 0 || b.x > b.n || !(b.p >= 0.0 && b.p <= 1.0)) {
    throw PreconditionError("binomial: need 0 <= x <= n and p in [0,1], got n=" + std::to_string(b.n) +
                            " x=" + std::to_string(b.x) + " p=" + std::to_string(b.p));
  }
}

}  // namespace

double log_binom_pmf(const BinomialParams& params) {
  check(params);
  const auto [n, p, x] = params;
  constexpr double neg_inf = -std::numeric_limits<double>::infinity();

  if (n == 0) return 0.0;
  if (p == 0.0) return x == 0 ? 0.0 : neg_inf;
  if (p == 1.0) return x == n ? 0.0 : neg_inf;

  const double q = 1.0 - p;
  const double nn = static_cast<double>(n);
  if (x == 0) return nn * std::log1p(-p);
  if (x == n) return nn * std::log(p);

  const double xx = static_cast<double>(x);
  const double lc = stirlerr(n) - stirlerr(x) - stirlerr(n - x) - bd0(xx, nn * p) - bd0(nn - xx, nn * q);
  return lc + 0.5 * std::log(nn / (2.0 * std::numbers::pi * xx * (nn - xx)));
}

double binom_pmf(const BinomialParams& params) { return std::exp(log_binom_pmf(params)); }

}  // namespace seqmc
