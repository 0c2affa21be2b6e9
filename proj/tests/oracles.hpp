// Apache License, Version 2.0, refer to LICENSE.txt

// Reference computations used by the tests. None of these call into the
// library's kernels; they recompute the quantities from first principles.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Q = mpq_class;

inline Q frac(long num, long den) {
  Q q(num, den);
  q.canonicalize();
  return q;
}

// Bernoulli NPI by direct enumeration of the latent-value picture: the m future
// values fall into the n+1 gaps between the ordered observations, every
// composition (m_0..m_n) equally likely. Successes are the s smallest values,
// so future values in gaps below s are successes, above s failures, and the
// ones in gap s can split any way. Upper: the achievable success counts meet
// R. Lower: all of them lie in R.
struct BernoulliBounds {
  Q lower, upper;
};

inline BernoulliBounds bernoulli_by_enumeration(int n, int s, int m, const std::set<int>& r) {
  long total = 0, hit_upper = 0, hit_lower = 0;
  std::vector<int> parts(static_cast<std::size_t>(n + 1), 0);
  std::function<void(int, int)> walk = [&](int gap, int left) {
    if (gap == n) {
      parts[static_cast<std::size_t>(gap)] = left;
      int a = 0;
      for (int g = 0; g < s; ++g) a += parts[static_cast<std::size_t>(g)];
      const int b = parts[static_cast<std::size_t>(s)];
      bool any = false, all = true;
      for (int j = a; j <= a + b; ++j) {
        const bool in = r.count(j) > 0;
        any = any || in;
        all = all && in;
      }
      ++total;
      hit_upper += any;
      hit_lower += all;
      return;
    }
    for (int x = 0; x <= left; ++x) {
      parts[static_cast<std::size_t>(gap)] = x;
      walk(gap + 1, left - x);
    }
  };
  walk(0, m);
  return {frac(hit_lower, total), frac(hit_upper, total)};
}

// Multinomial NPI event bounds written out from the definition.
inline std::pair<Q, Q> multinomial_event(const std::vector<long>& counts, long big_k,
                                         const std::vector<std::size_t>& members, long l) {
  long n = 0, k = 0;
  for (long c : counts) {
    n += c;
    k += c > 0;
  }
  long sum = 0;
  const long r = static_cast<long>(members.size());
  for (auto i : members) sum += counts[i];
  const long lo = sum - r + std::max(2 * r + l - big_k, 0L);
  const long hi = sum - r + std::min(2 * r + l, k);
  return {frac(lo, n), frac(hi, n)};
}

// Minimises (or maximises) sum w_i p_i over lo_i <= p_i <= hi_i, sum p_i = 1 by
// the fractional-knapsack argument: start at the lower ends and pour the
// remaining mass into the cheapest (dearest) coordinates first.
inline std::pair<Q, std::vector<Q>> box_simplex_optimum(const std::vector<Q>& w,
                                                        const std::vector<Q>& lo,
                                                        const std::vector<Q>& hi, bool minimise) {
  const std::size_t k = w.size();
  std::vector<Q> p = lo;
  Q left = 1;
  for (const Q& x : lo) left -= x;
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return minimise ? w[a] < w[b] : w[a] > w[b];
  });
  for (std::size_t i : order) {
    const Q room = hi[i] - lo[i];
    const Q take = left < room ? left : room;
    p[i] += take;
    left -= take;
  }
  Q value = 0;
  for (std::size_t i = 0; i < k; ++i) value += w[i] * p[i];
  return {value, p};
}

// CI for a [category][class] table whose categories are all non-empty,
// categories linked to their majority class (first on ties).
struct CiBounds {
  Q lower, upper;
};

inline std::size_t majority(const std::vector<long>& row) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < row.size(); ++c) {
    if (row[c] > row[best]) best = c;
  }
  return best;
}

inline CiBounds ci_multinomial(const std::vector<std::vector<long>>& table) {
  long n = 0;
  for (const auto& row : table) n += std::accumulate(row.begin(), row.end(), 0L);
  std::vector<Q> f, g, lo, hi;
  for (const auto& row : table) {
    const long ni = std::accumulate(row.begin(), row.end(), 0L);
    const long hit = row[majority(row)];
    f.push_back(frac(hit, ni + 1));
    g.push_back(frac(hit + 1, ni + 1));
    lo.push_back(frac(ni - 1, n));
    hi.push_back(frac(ni + 1, n));
  }
  return {box_simplex_optimum(f, lo, hi, true).first, box_simplex_optimum(g, lo, hi, false).first};
}

// Two-category attribute: p for category 1 ranges over [n1/(n+1), (n1+1)/(n+1)];
// the bound is the better of the two endpoints.
inline CiBounds ci_binary(const std::vector<std::vector<long>>& table) {
  long n0 = std::accumulate(table[0].begin(), table[0].end(), 0L);
  long n1 = std::accumulate(table[1].begin(), table[1].end(), 0L);
  const long n = n0 + n1;
  const Q f0 = frac(table[0][majority(table[0])], n0 + 1);
  const Q f1 = frac(table[1][majority(table[1])], n1 + 1);
  const Q g0 = frac(table[0][majority(table[0])] + 1, n0 + 1);
  const Q g1 = frac(table[1][majority(table[1])] + 1, n1 + 1);
  const Q a = frac(n1, n + 1), b = frac(n1 + 1, n + 1);
  auto value = [](const Q& x0, const Q& x1, const Q& p) { return Q((1 - p) * x0 + p * x1); };
  const Q la = value(f0, f1, a), lb = value(f0, f1, b);
  const Q ua = value(g0, g1, a), ub = value(g0, g1, b);
  return {la < lb ? la : lb, ua > ub ? ua : ub};
}

// Interval for predicting the node majority with no attribute.
inline CiBounds no_attribute(const std::vector<long>& class_counts) {
  const long n = std::accumulate(class_counts.begin(), class_counts.end(), 0L);
  const long top = *std::max_element(class_counts.begin(), class_counts.end());
  if (class_counts.size() <= 2) return {frac(top, n + 1), frac(top + 1, n + 1)};
  return {frac(std::max(top - 1, 0L), n), frac(std::min(top + 1, n), n)};
}

inline double entropy_bits(const std::vector<double>& counts) {
  double total = 0;
  for (double c : counts) total += c;
  double h = 0;
  for (double c : counts) {
    if (c > 0) h -= (c / total) * std::log2(c / total);
  }
  return h;
}

}  // namespace oracle
