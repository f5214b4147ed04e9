#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mixwidth/weights.hpp"

namespace mixwidth {

/// Relative tolerance under which two weights are considered tied.
inline constexpr double kTieTolerance = 1e-12;

/// Prefix sigma_1 >= ... >= sigma_N of the nonincreasing rearrangement of
/// {1/omega(k) : k in Z^d}, together with the running sums of sigma_k^-2.
class SigmaPrefix {
 public:
  SigmaPrefix(WeightSpec spec, std::vector<double> weights);

  const WeightSpec& spec() const { return spec_; }
  std::size_t size() const { return values_.size(); }

  /// sigma_n, 1-based.
  double sigma(std::size_t n) const { return values_.at(n - 1); }
  /// sum_{k<=n} sigma_k^-2, 1-based.
  double cum_inv_sq(std::size_t n) const { return cum_inv_sq_.at(n - 1); }

  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& cum_inv_sq() const { return cum_inv_sq_; }

 private:
  WeightSpec spec_;
  std::vector<double> values_;
  std::vector<double> cum_inv_sq_;
};

/// Orbit of a lattice point under sign flips and coordinate permutations.
struct OrbitEntry {
  LatticePoint rep;  // nonincreasing, nonnegative
  double weight;
  std::uint64_t multiplicity;
};

/// Number of k in Z^d whose sorted |k_i| equal `rep`:
/// 2^#nonzero * d! / prod (run lengths)!.
std::uint64_t orbit_multiplicity(std::span<const Index> rep);

/// All lattice points of an orbit, in lexicographic order.
std::vector<LatticePoint> expand_orbit(std::span<const Index> rep);

/// Upper bound on prefix length; larger requests throw ResourceError.
inline constexpr std::size_t kMaxPrefix = std::size_t{1} << 28;

/// First N terms of the rearrangement, ties expanded by orbit multiplicity
/// and ordered by (weight, canonical representative). threads > 1 selects the
/// threshold-partitioned enumerator, whose output is identical.
SigmaPrefix sigma_prefix(const WeightSpec& spec, std::size_t N, unsigned threads = 1);

/// Orbits in enumeration order until their multiplicities cover N points.
std::vector<OrbitEntry> leading_orbits(const WeightSpec& spec, std::size_t N,
                                       unsigned threads = 1);

/// #{k in Z^d : omega(k) <= t}, ties within kTieTolerance counted as <=.
std::uint64_t count_leq(const WeightSpec& spec, double t);

/// n-1 lattice points of smallest weight (the optimal index set Lambda).
std::vector<LatticePoint> best_index_set(const WeightSpec& spec, std::size_t n);

/// Test oracle: sort every point of the box |k|_inf <= box_radius.
/// Throws DomainError("box too small") when a point outside the box could
/// displace one of the first N.
SigmaPrefix sigma_bruteforce(const WeightSpec& spec, std::size_t N, Index box_radius);

}  // namespace mixwidth
