#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mixwidth {

using Index = std::int64_t;
using LatticePoint = std::vector<Index>;

/// Weight families on Z^d.
///
///   MixedSR       prod_i (1 + |k_i|^r)^(s/r)
///   MixedInf      prod_i max(1, |k_i|)^s
///   IsotropicSR   (1 + sum_i |k_i|^r)^(s/r)
///   IsotropicInf  max(1, |k_1|, ..., |k_d|)^s
///   H1Ratio       prod_i (1 + k_i^2)^(s/2) / (1 + sum_i k_i^2)^(1/2),  s > 1
///
/// Every family is invariant under sign flips and coordinate permutations
/// and is nondecreasing in each |k_i|; the enumerators rely on both.
enum class Family { MixedSR, MixedInf, IsotropicSR, IsotropicInf, H1Ratio };

std::string_view family_name(Family f);
std::optional<Family> parse_family(std::string_view name);
std::vector<std::string> family_names();

class WeightSpec {
 public:
  /// Throws DomainError for s <= 0, r <= 0 (when used), d < 1, or
  /// H1Ratio with s <= 1 ("requires s>1").
  WeightSpec(Family family, double s, double r, int d);

  static WeightSpec mixed(double s, double r, int d) { return {Family::MixedSR, s, r, d}; }
  static WeightSpec mixed_inf(double s, int d) { return {Family::MixedInf, s, 0.0, d}; }
  static WeightSpec isotropic(double s, double r, int d) { return {Family::IsotropicSR, s, r, d}; }
  static WeightSpec isotropic_inf(double s, int d) { return {Family::IsotropicInf, s, 0.0, d}; }
  static WeightSpec h1_ratio(double s, int d) { return {Family::H1Ratio, s, 0.0, d}; }

  Family family() const { return family_; }
  double s() const { return s_; }
  /// Norm-shape parameter; 0 for families that ignore it.
  double r() const { return r_; }
  int dim() const { return d_; }

  bool is_product() const { return family_ == Family::MixedSR || family_ == Family::MixedInf; }
  /// False for the isotropic families: no asymptotic constant is known for them.
  bool asymptotics_supported() const {
    return family_ != Family::IsotropicSR && family_ != Family::IsotropicInf;
  }

  std::string describe() const;

  friend bool operator==(const WeightSpec&, const WeightSpec&) = default;

 private:
  Family family_;
  double s_;
  double r_;
  int d_;
};

/// omega(k). Throws DomainError("wrong arity") if k.size() != d.
double evaluate(const WeightSpec& spec, std::span<const Index> k);

/// ln omega(k); finite even where omega(k) overflows a double.
double log_evaluate(const WeightSpec& spec, std::span<const Index> k);

/// Canonical orbit representative: |k_i| sorted nonincreasingly.
LatticePoint canonical(std::span<const Index> k);

/// Evaluation on an already canonical representative (no sorting, no arity
/// check). Enumerators call this in their inner loops; evaluate() and
/// log_evaluate() canonicalize first and then delegate here, so every member
/// of an orbit yields a bit-identical value.
double evaluate_canonical(const WeightSpec& spec, std::span<const Index> rep);
double log_evaluate_canonical(const WeightSpec& spec, std::span<const Index> rep);

/// One-dimensional factor of a product family, w(a) for a >= 0.
double product_factor(const WeightSpec& spec, Index a);

}  // namespace mixwidth
