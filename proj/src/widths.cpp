#include "mixwidth/widths.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <set>

#include "mixwidth/errors.hpp"

namespace mixwidth {

namespace {

constexpr std::array<std::pair<Embedding, std::string_view>, 8> kEmbeddingNames{{
    {Embedding::AtoA, "a-to-a"},
    {Embedding::AtoL2, "a-to-l2"},
    {Embedding::FtoL2, "f-to-l2"},
    {Embedding::AtoLinf, "a-to-linf"},
    {Embedding::AtoLp, "a-to-lp"},
    {Embedding::CmixToL2, "cmix-to-l2"},
    {Embedding::AmixToH1, "amix-to-h1"},
    {Embedding::HmixToH1, "hmix-to-h1"},
}};

constexpr std::array<std::pair<WidthKind, std::string_view>, 4> kKindNames{{
    {WidthKind::Approximation, "approximation"},
    {WidthKind::Kolmogorov, "kolmogorov"},
    {WidthKind::Bernstein, "bernstein"},
    {WidthKind::Weyl, "weyl"},
}};

bool is_integer_order(double s) { return s >= 1.0 && s == std::floor(s) && s < 1e6; }

void require_length(const SigmaPrefix& prefix, std::size_t n) {
  if (prefix.size() < n) throw PrefixTooShort("sigma prefix too short", n);
}

}  // namespace

std::string_view embedding_name(Embedding e) {
  for (const auto& [emb, name] : kEmbeddingNames)
    if (emb == e) return name;
  return "unknown";
}

std::optional<Embedding> parse_embedding(std::string_view name) {
  for (const auto& [emb, n] : kEmbeddingNames)
    if (n == name) return emb;
  return std::nullopt;
}

std::vector<std::string> embedding_names() {
  std::vector<std::string> out;
  for (const auto& [emb, name] : kEmbeddingNames) out.emplace_back(name);
  return out;
}

std::string_view kind_name(WidthKind k) {
  for (const auto& [kind, name] : kKindNames)
    if (kind == k) return name;
  return "unknown";
}

std::optional<WidthKind> parse_kind(std::string_view name) {
  for (const auto& [kind, n] : kKindNames)
    if (n == name) return kind;
  return std::nullopt;
}

std::vector<std::string> kind_names() {
  std::vector<std::string> out;
  for (const auto& [kind, name] : kKindNames) out.emplace_back(name);
  return out;
}

namespace {

// Scan h = start, start+1, ... for the sup with index n. Callers guarantee
// the smallest maximizer over [n, inf) is >= start.
SupResult scan_from(const SigmaPrefix& prefix, std::size_t n, std::size_t start) {
  const auto& cum = prefix.cum_inv_sq();
  const auto& sig = prefix.values();
  double best = -1.0;
  std::size_t arg = 0;
  for (std::size_t h = start; h <= prefix.size(); ++h) {
    const double ratio = static_cast<double>(h - n + 1) / cum[h - 1];
    if (ratio > best) {
      best = ratio;
      arg = h;
    }
    const double tail_bound = sig[h - 1] * sig[h - 1];
    if (tail_bound <= best) return SupResult{std::sqrt(best), arg};
  }
  throw PrefixTooShort("prefix exhausted before certificate", 2 * prefix.size());
}

// u_n for n = first..last. The smallest maximizer is nondecreasing in n
// (ratio(h; n+1) / ratio(h; n) = (h-n)/(h-n+1) increases with h), so each scan
// resumes at the previous argmax.
std::vector<SupResult> sup_series(const SigmaPrefix& prefix, std::size_t first, std::size_t last) {
  std::vector<SupResult> out;
  out.reserve(last - first + 1);
  std::size_t start = first;
  for (std::size_t n = first; n <= last; ++n) {
    start = std::max(start, n);
    out.push_back(scan_from(prefix, n, start));
    start = out.back().argmax;
  }
  return out;
}

}  // namespace

SupResult sup_over_h(const SigmaPrefix& prefix, std::size_t n) {
  if (n < 1) throw DomainError("sup_over_h requires n>=1");
  require_length(prefix, n);
  return scan_from(prefix, n, n);
}

double bernstein_value(const SigmaPrefix& prefix, std::size_t n) {
  if (n < 1) throw DomainError("width index n must be >= 1");
  require_length(prefix, n);
  return 1.0 / std::sqrt(prefix.cum_inv_sq(n));
}

WeightSpec cmix_companion_spec(const WeightSpec& spec) {
  const double m = spec.s();
  return WeightSpec::mixed(m, 2.0 * m, spec.dim());
}

void validate_query(const WeightSpec& spec, const WidthQuery& q) {
  if (q.n < 1) throw DomainError("width index n must be >= 1");
  switch (q.embedding) {
    case Embedding::AtoLp:
      if (!(q.p > 2.0) || !std::isfinite(q.p))
        throw DomainError("a-to-lp arity: requires 2<p<inf (use a-to-l2 / a-to-linf)");
      break;
    case Embedding::CmixToL2:
      if (!spec.is_product() || !is_integer_order(spec.s()))
        throw DomainError("cmix-to-l2 requires a mixed weight with integer s=m>=1");
      break;
    case Embedding::AmixToH1:
    case Embedding::HmixToH1:
      if (spec.family() != Family::H1Ratio)
        throw DomainError(std::string(embedding_name(q.embedding)) +
                          " requires the h1-ratio weight");
      break;
    default:
      break;
  }
}

WidthValue width(const SigmaPrefix& prefix, const WidthQuery& q, const SigmaPrefix* companion) {
  validate_query(prefix.spec(), q);
  const std::size_t n = q.n;
  require_length(prefix, n);
  const double sigma_n = prefix.sigma(n);
  const bool u_kind = is_u_kind(q.kind);

  switch (q.embedding) {
    case Embedding::AtoA:
    case Embedding::FtoL2:
    case Embedding::HmixToH1:
      return WidthValue::exact_value(sigma_n);

    case Embedding::AtoL2:
    case Embedding::AmixToH1:
      return WidthValue::exact_value(u_kind ? sup_over_h(prefix, n).value
                                            : bernstein_value(prefix, n));

    case Embedding::AtoLinf:
    case Embedding::AtoLp: {
      // L2 <= Lp <= A along the embedding chain (all inclusions of norm 1).
      const double lower = u_kind ? sup_over_h(prefix, n).value : bernstein_value(prefix, n);
      return WidthValue::bounds(lower, sigma_n);
    }

    case Embedding::CmixToL2: {
      if (!u_kind) return WidthValue::exact_value(bernstein_value(prefix, n));
      const double lower = sup_over_h(prefix, n).value;
      const WeightSpec comp_spec = cmix_companion_spec(prefix.spec());
      double comp_sigma;
      if (companion != nullptr) {
        if (!(companion->spec() == comp_spec))
          throw DomainError("cmix companion prefix must be " + comp_spec.describe());
        require_length(*companion, n);
        comp_sigma = companion->sigma(n);
      } else if (prefix.spec() == comp_spec) {
        comp_sigma = sigma_n;
      } else {
        comp_sigma = sigma_prefix(comp_spec, n).sigma(n);
      }
      const double norm = std::pow(2.0, 0.5 * prefix.spec().dim());
      return WidthValue::bounds(lower, norm * comp_sigma);
    }
  }
  throw DomainError("unknown embedding");
}

std::vector<WidthValue> width_series(const SigmaPrefix& prefix, Embedding e, WidthKind kind,
                                     std::size_t first, std::size_t last, double p) {
  if (first < 1 || last < first) throw DomainError("width range must satisfy 1<=first<=last");
  validate_query(prefix.spec(), WidthQuery{e, kind, first, p});
  std::optional<SigmaPrefix> companion;
  if (e == Embedding::CmixToL2 && is_u_kind(kind)) {
    const WeightSpec comp_spec = cmix_companion_spec(prefix.spec());
    companion = prefix.spec() == comp_spec && prefix.size() >= last
                    ? prefix
                    : sigma_prefix(comp_spec, last);
  }
  require_length(prefix, last);
  std::vector<WidthValue> out;
  out.reserve(last - first + 1);
  const bool scan = is_u_kind(kind) && (e == Embedding::AtoL2 || e == Embedding::AmixToH1 ||
                                         e == Embedding::AtoLinf || e == Embedding::AtoLp ||
                                         e == Embedding::CmixToL2);
  if (!scan) {
    for (std::size_t n = first; n <= last; ++n)
      out.push_back(width(prefix, WidthQuery{e, kind, n, p}, companion ? &*companion : nullptr));
    return out;
  }
  const auto sups = sup_series(prefix, first, last);
  const double norm = std::pow(2.0, 0.5 * prefix.spec().dim());
  for (std::size_t n = first; n <= last; ++n) {
    const double u = sups[n - first].value;
    switch (e) {
      case Embedding::AtoL2:
      case Embedding::AmixToH1:
        out.push_back(WidthValue::exact_value(u));
        break;
      case Embedding::CmixToL2:
        out.push_back(WidthValue::bounds(u, norm * companion->sigma(n)));
        break;
      default:
        out.push_back(WidthValue::bounds(u, prefix.sigma(n)));
        break;
    }
  }
  return out;
}

SigmaPrefix prefix_for_widths(const WeightSpec& spec, Embedding e, WidthKind kind,
                              std::size_t first, std::size_t last, unsigned threads, double p) {
  validate_query(spec, WidthQuery{e, kind, first, p});
  const bool needs_scan = is_u_kind(kind) && e != Embedding::AtoA && e != Embedding::FtoL2 &&
                          e != Embedding::HmixToH1;
  std::size_t N = needs_scan ? 2 * last + 16 : last;
  while (true) {
    SigmaPrefix prefix = sigma_prefix(spec, N, threads);
    if (!needs_scan) return prefix;
    try {
      (void)sup_series(prefix, first, last);
      return prefix;
    } catch (const PrefixTooShort& err) {
      N = std::max(2 * N, err.required());
    }
  }
}

double s_lambda_error(const WeightSpec& spec, std::size_t n) {
  const auto lambda = best_index_set(spec, n);
  const std::set<LatticePoint> in_lambda(lambda.begin(), lambda.end());
  // A minimizer of omega outside Lambda is either 0 or a unit step away from
  // Lambda: walking any outside point towards 0 never increases omega.
  double min_outside = std::numeric_limits<double>::infinity();
  auto consider = [&](const LatticePoint& k) {
    if (!in_lambda.contains(k)) min_outside = std::min(min_outside, evaluate(spec, k));
  };
  consider(LatticePoint(static_cast<std::size_t>(spec.dim()), 0));
  for (const auto& k : lambda) {
    LatticePoint nb = k;
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (Index step : {Index{-1}, Index{1}}) {
        nb[i] += step;
        consider(nb);
        nb[i] -= step;
      }
    }
  }
  return 1.0 / min_outside;
}

}  // namespace mixwidth
