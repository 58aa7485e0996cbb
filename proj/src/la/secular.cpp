#include "dsk/la/secular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace dsk {

double secular_smallest_eig(const Vector& d, const Vector& g) {
  const Index m = d.size();
  if (g.size() != m) throw DimensionMismatch("secular_smallest_eig: length mismatch");
  if (m == 0) throw InvalidArgument("secular_smallest_eig: empty input");
  for (Index i = 0; i < m; ++i) {
    if (!(d[i] >= 0.0)) throw InvalidArgument("secular_smallest_eig: d must be nonnegative");
    if (i > 0 && d[i] > d[i - 1]) throw InvalidArgument("secular_smallest_eig: d must be nonincreasing");
  }

  const double gnorm2 = g.squaredNorm();
  const double d_min = d[m - 1];
  if (gnorm2 == 0.0) return d_min;

  // Merge runs of equal d: a rotation within the run collects g into one
  // component and leaves d as an eigenvalue of multiplicity run-1.
  // Components whose contribution is negligible are deflated as well.
  const double eps = std::numeric_limits<double>::epsilon();
  const double scale = std::max(d[0], gnorm2);
  std::vector<double> dd, gg;
  double deflated_min = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < m;) {
    Index j = i;
    double run = 0.0;
    while (j < m && d[j] == d[i]) {
      run += g[j] * g[j];
      ++j;
    }
    if (j - i > 1) deflated_min = std::min(deflated_min, d[i]);
    if (std::sqrt(run) <= eps * std::sqrt(scale)) {
      deflated_min = std::min(deflated_min, d[i]);
    } else {
      dd.push_back(d[i]);
      gg.push_back(run);  // squared weight
    }
    i = j;
  }
  if (dd.empty()) return deflated_min;

  // dd is strictly decreasing; with tau = lambda - dd.back() the smallest
  // root solves h(tau) = tau (1 + phi(tau)) - w_last = 0, where phi sums the
  // other poles. h is increasing and convex on [0, gap), so Newton started
  // to the right of the root decreases monotonically onto it.
  const std::size_t k = dd.size();
  const double base = dd[k - 1];
  const double w_last = gg[k - 1];
  const double gap = k > 1 ? dd[k - 2] - base : std::numeric_limits<double>::infinity();

  auto phi = [&](double tau, double& dphi) {
    double acc = 0.0;
    dphi = 0.0;
    for (std::size_t i = 0; i + 1 < k; ++i) {
      const double den = (dd[i] - base) - tau;
      acc += gg[i] / den;
      dphi += gg[i] / (den * den);
    }
    return acc;
  };
  auto h = [&](double tau, double& dh) {
    double dphi = 0.0;
    const double p = phi(tau, dphi);
    dh = 1.0 + p + tau * dphi;
    return tau * (1.0 + p) - w_last;
  };

  // h(w_last) >= 0, so the root lies in (0, min(w_last, gap)).
  double lo = 0.0;
  double hi = std::min(w_last, gap);
  double tau = hi;
  double dh = 0.0;
  if (!(hi < gap) || h(tau, dh) < 0.0) {
    // shrink towards the pole until h is nonnegative
    for (int it = 0; it < 200; ++it) {
      tau = 0.5 * (lo + hi);
      if (h(tau, dh) >= 0.0) break;
      lo = tau;
    }
  }
  for (int it = 0; it < 200; ++it) {
    const double value = h(tau, dh);
    if (value <= 0.0 || !(dh > 0.0)) break;
    const double next = std::max(tau - value / dh, lo);
    if (!(next < tau)) break;
    const bool done = tau - next <= 2.0 * eps * (base + next);
    tau = next;
    if (done) break;
  }
  const double root = base + tau;
  return std::min(root, deflated_min);
}

}  // namespace dsk
