#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "puiseux/solver.hpp"

namespace puiseux {

// A branch is the Galois orbit of one root under the maps tau_{eta,mu};
// members index into the root list the partition was computed from.
struct Branch {
  std::vector<size_t> members;
  long k = 1;
};

namespace detail {

inline void check_orbit_cap(long k, size_t n, long cap) {
  long total = 1;
  for (size_t i = 0; i < n; ++i) {
    if (total > cap / k)
      fail(Errc::orbit_cap, "orbit size k^n exceeds the cap " + std::to_string(cap));
    total *= k;
  }
  if (total > cap)
    fail(Errc::orbit_cap, "orbit size k^n exceeds the cap " + std::to_string(cap));
}

template <typename Fn>
inline void for_each_mu(long k, size_t n, Fn&& fn) {
  std::vector<long> mu(n, 0);
  while (true) {
    fn(mu);
    size_t i = 0;
    while (i < n) {
      if (++mu[i] < k) break;
      mu[i] = 0;
      ++i;
    }
    if (i == n) return;
  }
}

}  // namespace detail

// Full orbit {tau_{eta,mu}(xi)} over mu in {0..k-1}^n, deduplicated up to
// the comparison bound and canonically ordered.
inline std::vector<GSeries> orbit(const GSeries& xi, long k, const QuadReal& compare_bound,
                                  long orbit_cap = 4096) {
  if (k < 1) fail(Errc::bad_config, "orbit order k must be positive");
  detail::check_orbit_cap(k, xi.dim(), orbit_cap);
  std::vector<GSeries> out;
  detail::for_each_mu(k, xi.dim(), [&](const std::vector<long>& mu) {
    GSeries img = xi.galois_apply(k, mu);
    for (const GSeries& seen : out)
      if (seen.equal_upto(img, compare_bound)) return;
    out.push_back(std::move(img));
  });
  std::sort(out.begin(), out.end(), [](const GSeries& a, const GSeries& b) {
    return detail::cmp_series_canonical(a, b) < 0;
  });
  return out;
}

struct PartitionResult {
  std::vector<Branch> branches;
  std::vector<std::string> warnings;
};

// Partitions roots into branches: two roots share a branch iff some
// tau_{eta,mu} maps one onto the other up to the comparison bound. Matches
// involving inexact expansions are reported as warnings since truncated data
// cannot certify equality beyond the bound.
inline PartitionResult partition_branches(const std::vector<RootExpansion>& roots,
                                          const QuadReal& compare_bound, long orbit_cap = 4096) {
  PartitionResult result;
  if (roots.empty()) return result;
  BigInt kk = 1;
  for (const RootExpansion& r : roots) kk = lcm(kk, BigInt(r.series.k()));
  if (kk > 1000000) fail(Errc::denominator_cap, "branch lattice denominator overflow");
  long k = static_cast<long>(kk);

  std::vector<bool> assigned(roots.size(), false);
  for (size_t seed = 0; seed < roots.size(); ++seed) {
    if (assigned[seed]) continue;
    Branch branch;
    branch.k = k;
    auto images = orbit(roots[seed].series, k, compare_bound, orbit_cap);
    for (size_t j = seed; j < roots.size(); ++j) {
      if (assigned[j]) continue;
      bool member = false;
      for (const GSeries& img : images)
        if (img.equal_upto(roots[j].series, compare_bound)) member = true;
      if (!member) continue;
      assigned[j] = true;
      branch.members.push_back(j);
      if (j != seed && (!roots[seed].exact || !roots[j].exact))
        result.warnings.push_back("roots " + std::to_string(seed) + " and " + std::to_string(j) +
                                  " matched up to the comparison bound but are inexact");
    }
    result.branches.push_back(std::move(branch));
  }
  return result;
}

}  // namespace puiseux
