#include "mixwidth/weights.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "mixwidth/errors.hpp"

namespace mixwidth {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 5> kFamilyNames{{
    {Family::MixedSR, "mixed-sr"},
    {Family::MixedInf, "mixed-inf"},
    {Family::IsotropicSR, "isotropic-sr"},
    {Family::IsotropicInf, "isotropic-inf"},
    {Family::H1Ratio, "h1-ratio"},
}};

// Above this log-magnitude the direct product may overflow; exponentiate the
// log-sum once instead.
constexpr double kDirectLogLimit = 700.0;

// ln(1 + a^r) for a >= 1 without forming a^r when it would overflow.
double log1p_pow(double a, double r) {
  if (a == 0.0) return 0.0;
  const double lg = r * std::log(a);
  if (lg < 700.0) return std::log1p(std::pow(a, r));
  return lg + std::log1p(std::exp(-lg));
}

double sum_sq(std::span<const Index> rep) {
  double acc = 0.0;
  for (Index a : rep) acc += static_cast<double>(a) * static_cast<double>(a);
  return acc;
}

}  // namespace

std::string_view family_name(Family f) {
  for (const auto& [fam, name] : kFamilyNames)
    if (fam == f) return name;
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  for (const auto& [fam, n] : kFamilyNames)
    if (n == name) return fam;
  return std::nullopt;
}

std::vector<std::string> family_names() {
  std::vector<std::string> out;
  for (const auto& [fam, name] : kFamilyNames) out.emplace_back(name);
  return out;
}

WeightSpec::WeightSpec(Family family, double s, double r, int d)
    : family_(family), s_(s), r_(r), d_(d) {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("weight requires finite s>0");
  if (d < 1) throw DomainError("weight requires d>=1");
  if (family == Family::H1Ratio && !(s > 1.0)) throw DomainError("h1-ratio weight requires s>1");
  if (family == Family::MixedSR || family == Family::IsotropicSR) {
    if (!(r > 0.0) || !std::isfinite(r))
      throw DomainError("weight requires finite r>0 (use the -inf family for r=infinity)");
  } else {
    r_ = 0.0;
  }
}

std::string WeightSpec::describe() const {
  std::ostringstream os;
  os << family_name(family_) << "(s=" << s_;
  if (family_ == Family::MixedSR || family_ == Family::IsotropicSR) os << ", r=" << r_;
  os << ", d=" << d_ << ")";
  return os.str();
}

LatticePoint canonical(std::span<const Index> k) {
  LatticePoint rep(k.size());
  std::transform(k.begin(), k.end(), rep.begin(), [](Index v) { return v < 0 ? -v : v; });
  std::sort(rep.begin(), rep.end(), std::greater<>{});
  return rep;
}

double product_factor(const WeightSpec& spec, Index a) {
  const double x = static_cast<double>(a < 0 ? -a : a);
  switch (spec.family()) {
    case Family::MixedSR:
      return x == 0.0 ? 1.0 : std::pow(1.0 + std::pow(x, spec.r()), spec.s() / spec.r());
    case Family::MixedInf:
      return x <= 1.0 ? 1.0 : std::pow(x, spec.s());
    default:
      throw DomainError("product_factor: " + std::string(family_name(spec.family())) +
                        " is not a product weight");
  }
}

double log_evaluate_canonical(const WeightSpec& spec, std::span<const Index> rep) {
  const double s = spec.s();
  switch (spec.family()) {
    case Family::MixedSR: {
      double acc = 0.0;
      for (Index a : rep) acc += log1p_pow(static_cast<double>(a), spec.r());
      return s / spec.r() * acc;
    }
    case Family::MixedInf: {
      double acc = 0.0;
      for (Index a : rep)
        if (a > 1) acc += std::log(static_cast<double>(a));
      return s * acc;
    }
    case Family::IsotropicSR: {
      // ln(1 + sum a^r), factoring out the largest term (rep[0]).
      if (rep.empty() || rep[0] == 0) return 0.0;
      const double r = spec.r();
      const double top = static_cast<double>(rep[0]);
      double rel = 0.0;
      for (Index a : rep) rel += std::pow(static_cast<double>(a) / top, r);
      const double lg = r * std::log(top);
      const double inner = lg < 700.0 ? std::log1p(std::exp(lg) * rel)
                                      : lg + std::log(rel + std::exp(-lg));
      return s / r * inner;
    }
    case Family::IsotropicInf:
      return rep.empty() || rep[0] <= 1 ? 0.0 : s * std::log(static_cast<double>(rep[0]));
    case Family::H1Ratio: {
      double acc = 0.0;
      for (Index a : rep) {
        const double x = static_cast<double>(a);
        acc += std::log1p(x * x);
      }
      return 0.5 * s * acc - 0.5 * std::log1p(sum_sq(rep));
    }
  }
  return 0.0;
}

double evaluate_canonical(const WeightSpec& spec, std::span<const Index> rep) {
  const double lg = log_evaluate_canonical(spec, rep);
  if (lg > kDirectLogLimit) return std::exp(lg);
  const double s = spec.s();
  switch (spec.family()) {
    case Family::MixedSR:
    case Family::MixedInf: {
      double prod = 1.0;
      for (Index a : rep) prod *= product_factor(spec, a);
      return prod;
    }
    case Family::IsotropicSR: {
      double acc = 1.0;
      for (Index a : rep) acc += std::pow(static_cast<double>(a), spec.r());
      return std::pow(acc, s / spec.r());
    }
    case Family::IsotropicInf:
      return rep.empty() || rep[0] <= 1 ? 1.0 : std::pow(static_cast<double>(rep[0]), s);
    case Family::H1Ratio: {
      double prod = 1.0;
      for (Index a : rep) {
        const double x = static_cast<double>(a);
        prod *= std::pow(1.0 + x * x, 0.5 * s);
      }
      return prod / std::sqrt(1.0 + sum_sq(rep));
    }
  }
  return 1.0;
}

double evaluate(const WeightSpec& spec, std::span<const Index> k) {
  if (static_cast<int>(k.size()) != spec.dim()) throw DomainError("wrong arity");
  const LatticePoint rep = canonical(k);
  return evaluate_canonical(spec, rep);
}

double log_evaluate(const WeightSpec& spec, std::span<const Index> k) {
  if (static_cast<int>(k.size()) != spec.dim()) throw DomainError("wrong arity");
  const LatticePoint rep = canonical(k);
  return log_evaluate_canonical(spec, rep);
}

}  // namespace mixwidth
