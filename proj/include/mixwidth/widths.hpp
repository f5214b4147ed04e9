#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mixwidth/sigma.hpp"

namespace mixwidth {

/// Source -> target pairs. The weighted classes are:
///   A  weighted Wiener class A_omega (l1 coefficients), target A = A_1
///   F  Hilbert class F_omega (l2 coefficients)
///   Cmix / Amix / Hmix  mixed-smoothness classes of integer order / H^1 target
enum class Embedding { AtoA, AtoL2, FtoL2, AtoLinf, AtoLp, CmixToL2, AmixToH1, HmixToH1 };

/// Approximation and Kolmogorov numbers share one formula (u_n), as do
/// Bernstein and Weyl numbers (v_n).
enum class WidthKind { Approximation, Kolmogorov, Bernstein, Weyl };

std::string_view embedding_name(Embedding e);
std::optional<Embedding> parse_embedding(std::string_view name);
std::vector<std::string> embedding_names();
std::string_view kind_name(WidthKind k);
std::optional<WidthKind> parse_kind(std::string_view name);
std::vector<std::string> kind_names();

inline bool is_u_kind(WidthKind k) {
  return k == WidthKind::Approximation || k == WidthKind::Kolmogorov;
}

struct WidthQuery {
  Embedding embedding;
  WidthKind kind;
  std::size_t n;
  double p = 0.0;  // only for AtoLp, 2 < p < inf
};

/// Exact value (lower == upper) or a two-sided bound.
struct WidthValue {
  double lower;
  double upper;
  bool exact;

  static WidthValue exact_value(double v) { return {v, v, true}; }
  static WidthValue bounds(double lo, double hi) { return {lo, hi, false}; }
  double value() const { return lower; }
};

struct SupResult {
  double value;      // sup_{h>=n} ((h-n+1) / sum_{k<=h} sigma_k^-2)^(1/2)
  std::size_t argmax;  // smallest maximizing h
};

/// u_n of the l1 -> l2 diagonal operator built from the prefix. Scans h = n,
/// n+1, ... and stops once sigma_h^2 <= incumbent: for every h' > h the ratio
/// is bounded by max(ratio(h), sigma_h^2) (a monotone linear-fractional bound),
/// so neither the value nor the smallest maximizer can change. That stop point
/// is never later than the coarser 2 sigma_{ceil(h/2)}^2 <= incumbent test.
/// Throws PrefixTooShort when the prefix ends first.
SupResult sup_over_h(const SigmaPrefix& prefix, std::size_t n);

/// v_n = (sum_{k<=n} sigma_k^-2)^(-1/2).
double bernstein_value(const SigmaPrefix& prefix, std::size_t n);

/// Dispatch on embedding and kind. For CmixToL2 approximation numbers the
/// upper bound needs sigma of the mixed weight with r = 2m; it is taken from
/// `companion` when given, else from the prefix itself when it already is
/// that weight, else computed on the fly.
WidthValue width(const SigmaPrefix& prefix, const WidthQuery& q,
                 const SigmaPrefix* companion = nullptr);

/// Checks that (prefix weight, query) is a valid combination without
/// computing anything. Throws DomainError.
void validate_query(const WeightSpec& spec, const WidthQuery& q);

/// Weight whose sigma gives the CmixToL2 upper bound: mixed-sr(m, 2m, d).
WeightSpec cmix_companion_spec(const WeightSpec& spec);

/// Widths for n = first..last, sharing one companion prefix.
std::vector<WidthValue> width_series(const SigmaPrefix& prefix, Embedding e, WidthKind kind,
                                     std::size_t first, std::size_t last, double p = 0.0);

/// Computes a prefix of `spec` long enough for every width in [first, last],
/// doubling N until no PrefixTooShort is raised. `p` is only read for a-to-lp.
SigmaPrefix prefix_for_widths(const WeightSpec& spec, Embedding e, WidthKind kind,
                              std::size_t first, std::size_t last, unsigned threads = 1,
                              double p = 0.0);

/// Operator norm of id - S_Lambda from A_omega to A, i.e. sup_{l not in
/// Lambda} 1/omega(l), evaluated directly on the lattice.
double s_lambda_error(const WeightSpec& spec, std::size_t n);

}  // namespace mixwidth
