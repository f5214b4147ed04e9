#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mixwidth/widths.hpp"

namespace mixwidth {

/// Closed-form constants.
///
///   MixL2Sigma     (2^d / (d-1)!)^s, limit of sigma_n / (n^-s (ln n)^(s(d-1)))
///   TransferUV     (2s/(2s+1))^s, factor carrying sigma's constant to u_n
///   TransferVW     sqrt(2s+1), factor carrying sigma's constant to v_n
///   Preasymptotic  C(d) = [1 + (1 + 2/log2(d-1)) / (d-1)]^(d-1), d >= 3
///   H1Constant     (2d)^(s-1) (2S+1)^((s-1)(d-1)), s > 1
///   SSeries        S = sum_{k>=1} (k^2+1)^(-s/(2(s-1))), s > 1
enum class ConstantName { MixL2Sigma, TransferUV, TransferVW, Preasymptotic, H1Constant, SSeries };

std::string_view constant_name(ConstantName c);
std::optional<ConstantName> parse_constant(std::string_view name);
std::vector<std::string> constant_names();

struct ConstantSpec {
  ConstantName name;
  double s = 1.0;
  int d = 1;
  double r = 1.0;  // only checked for Preasymptotic (1 <= r < inf)
};

double constant(const ConstantSpec& c);

/// (C(d)/n)^(s / (r (1 + log2(d-1)))): preasymptotic upper bound on sigma_n
/// of the mixed-sr weight for 2 <= n, d >= 3, 1 <= r < inf.
double preasymptotic_bound(int d, double s, double r, std::size_t n);

struct SeriesValue {
  double value;
  double error_bound;  // certified: |value - S| <= error_bound
  std::size_t terms;
};

/// S with certified absolute error < tol. Sums K terms with compensated
/// summation and brackets the tail between integrals of the comparison
/// functions x^-2p - p x^(-2p-2) <= (x^2+1)^-p <= x^-2p, p = s/(2(s-1));
/// returns the partial sum plus the bracket midpoint.
SeriesValue series_S(double s, double tol);

struct ConvergenceRow {
  std::size_t n;
  double raw;
  double normalizer;  // n^-alpha (ln n)^beta
  double ratio;
  double target;
};

struct ConvergenceTable {
  Embedding embedding;
  WidthKind kind;
  double alpha;
  double beta;
  std::vector<ConvergenceRow> rows;
};

/// Ratios raw / (n^-alpha (ln n)^beta) on an increasing grid with n >= 3.
/// Only exact widths are tabulated.
ConvergenceTable convergence_table(const SigmaPrefix& prefix, Embedding e, WidthKind kind,
                                   std::span<const std::size_t> n_grid, double alpha, double beta,
                                   double target);

/// int_{a/n}^1 y^s (ln n / ln(y n))^beta dy to absolute error 1e-10.
double aux_integral(double s, double beta, double a, double n);

}  // namespace mixwidth
