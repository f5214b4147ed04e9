#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mixwidth {

/// Smoothness s > 1, kept as p/q when s is a rational with q <= 1000.
struct Smoothness {
  double value;
  std::int64_t p;
  std::int64_t q;
  bool rational;

  static Smoothness from_double(double s);
};

/// Lattice count. `exact` is false only when s is irrational and some point
/// fell inside the floating-point guard band (it is then counted).
struct CountResult {
  std::int64_t r;
  int d_or_ell;
  std::optional<int> j;
  std::optional<std::int64_t> r_ell;
  std::uint64_t count;
  bool exact;
};

/// C(r,d) = #{k in Z^d : omega(k) <= (1+r^2)^((s-1)/2)} for the h1-ratio
/// weight omega(k) = prod (1+k_i^2)^(s/2) / (1+|k|^2)^(1/2), counted inside the
/// box |k|_inf <= box_radius (0 selects r, which already contains every point).
CountResult count_C(double s, std::int64_t r, int d, std::int64_t box_radius = 0,
                    unsigned threads = 1);

/// A(r,ell): the same count restricted to k in N^ell (all k_i >= 1).
CountResult count_A(double s, std::int64_t r, int ell, unsigned threads = 1);

/// A(r,ell,j): k in N^ell with k_1..k_j <= r_ell and k_{j+1}..k_ell > r_ell.
CountResult count_A_split(double s, std::int64_t r, int ell, int j, std::int64_t r_ell,
                          unsigned threads = 1);

/// lambda_ell = (s-1)/(2 s ell) and r_ell = max(1, floor(r^lambda_ell)).
double split_exponent(double s, int ell);
std::int64_t split_radius(double s, std::int64_t r, int ell);

struct AppendixRow {
  std::string quantity;  // "C", "A" or "A-split"
  std::int64_t r;
  int d_or_ell;
  std::optional<int> j;
  std::optional<std::int64_t> r_ell;
  std::uint64_t count;
  double ratio;   // count / r
  double target;  // limit of ratio as r -> inf
  bool exact;
};

struct AppendixReport {
  double s;
  int d;
  double S;  // series constant, tol 1e-10
  std::vector<AppendixRow> rows;
};

/// For each r in r_grid: C(r,d)/r against 2d(2S+1)^(d-1); A(r,ell)/r against
/// ell S^(ell-1); A(r,ell,j)/r against S^(ell-1) for j = ell-1 and 0 otherwise.
AppendixReport verify_appendix_limits(double s, int d, std::span<const std::int64_t> r_grid,
                                      unsigned threads = 1);

struct SandwichResult {
  bool pass;
  std::uint64_t first_n;  // C(r-1,d) + 1
  std::uint64_t last_n;   // C(r,d)
  double lower;           // (1+r^2)^(-(s-1)/2)
  double upper;           // (1+(r-1)^2)^(-(s-1)/2)
  std::uint64_t failures;
};

/// Checks lower <= sigma_n <= upper (relative tolerance 1e-12) for every
/// C(r-1,d) < n <= C(r,d), sigma taken from the h1-ratio rearrangement.
SandwichResult sandwich_check(double s, int d, std::int64_t r, unsigned threads = 1);

}  // namespace mixwidth
