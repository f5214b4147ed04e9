#include "mixwidth/asymptotics.hpp"

#include <array>
#include <cmath>

#include "mixwidth/compensated.hpp"
#include "mixwidth/errors.hpp"
#include "mixwidth/quadrature.hpp"

namespace mixwidth {

namespace {

constexpr std::array<std::pair<ConstantName, std::string_view>, 6> kConstantNames{{
    {ConstantName::MixL2Sigma, "mix-l2-sigma"},
    {ConstantName::TransferUV, "transfer-uv"},
    {ConstantName::TransferVW, "transfer-vw"},
    {ConstantName::Preasymptotic, "preasymptotic"},
    {ConstantName::H1Constant, "h1-constant"},
    {ConstantName::SSeries, "s-series"},
}};

constexpr std::size_t kMaxSeriesTerms = 4'000'000'000ULL;

void require_positive_s(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("constant requires s>0");
}

void require_s_above_one(double s) {
  if (!(s > 1.0) || !std::isfinite(s)) throw DomainError("constant requires s>1");
}

double preasymptotic_cd(int d) {
  const double l = std::log2(static_cast<double>(d - 1));
  const double dm1 = static_cast<double>(d - 1);
  return std::pow(1.0 + (1.0 + 2.0 / l) / dm1, dm1);
}

// Bracket of sum_{k>K} (k^2+1)^-p.
struct TailBracket {
  double lower, upper;
};

TailBracket tail_bracket(double p, double K) {
  const double q = 2.0 * p - 1.0;
  const double upper = std::pow(K, -q) / q;
  const double lower = std::pow(K + 1.0, -q) / q - p * std::pow(K + 1.0, -2.0 * p - 1.0) / (2.0 * p + 1.0);
  return {lower, upper};
}

}  // namespace

std::string_view constant_name(ConstantName c) {
  for (const auto& [name, str] : kConstantNames)
    if (name == c) return str;
  return "unknown";
}

std::optional<ConstantName> parse_constant(std::string_view name) {
  for (const auto& [c, str] : kConstantNames)
    if (str == name) return c;
  return std::nullopt;
}

std::vector<std::string> constant_names() {
  std::vector<std::string> out;
  for (const auto& [c, str] : kConstantNames) out.emplace_back(str);
  return out;
}

SeriesValue series_S(double s, double tol) {
  if (!(s > 1.0) || !std::isfinite(s)) throw DomainError("series S requires s>1");
  if (!(tol > 0.0)) throw DomainError("series S requires tol>0");
  const double p = s / (2.0 * (s - 1.0));

  double K = 1024.0;
  while (true) {
    const auto br = tail_bracket(p, K);
    if (0.5 * (br.upper - br.lower) < 0.5 * tol) break;
    K *= 2.0;
    if (K > static_cast<double>(kMaxSeriesTerms))
      throw ResourceError("series S: tolerance unreachable within " +
                          std::to_string(kMaxSeriesTerms) + " terms; loosen tol");
  }
  const auto terms = static_cast<std::size_t>(K);
  CompensatedSum<double> acc;
  // Smallest terms first.
  for (std::size_t k = terms; k >= 1; --k) {
    const double x = static_cast<double>(k);
    acc += std::pow(x * x + 1.0, -p);
  }
  const auto br = tail_bracket(p, K);
  const double value = acc.value() + 0.5 * (br.upper + br.lower);
  const double rounding = 64.0 * std::numeric_limits<double>::epsilon() * value;
  return SeriesValue{value, 0.5 * (br.upper - br.lower) + rounding, terms};
}

double constant(const ConstantSpec& c) {
  switch (c.name) {
    case ConstantName::MixL2Sigma: {
      require_positive_s(c.s);
      if (c.d < 1) throw DomainError("mix-l2-sigma requires d>=1");
      const double base = std::pow(2.0, c.d) / std::tgamma(static_cast<double>(c.d));
      return std::pow(base, c.s);
    }
    case ConstantName::TransferUV:
      require_positive_s(c.s);
      return std::pow(2.0 * c.s / (2.0 * c.s + 1.0), c.s);
    case ConstantName::TransferVW:
      require_positive_s(c.s);
      return std::sqrt(2.0 * c.s + 1.0);
    case ConstantName::Preasymptotic:
      if (c.d < 3) throw DomainError("preasymptotic constant requires d>=3");
      if (!(c.r >= 1.0) || !std::isfinite(c.r))
        throw DomainError("preasymptotic constant requires 1<=r<inf");
      return preasymptotic_cd(c.d);
    case ConstantName::H1Constant: {
      require_s_above_one(c.s);
      if (c.d < 1) throw DomainError("h1-constant requires d>=1");
      const double d = static_cast<double>(c.d);
      const double factor = std::pow(2.0 * d, c.s - 1.0);
      if (c.d == 1) return factor;
      const double S = series_S(c.s, 1e-12).value;
      return factor * std::pow(2.0 * S + 1.0, (c.s - 1.0) * (d - 1.0));
    }
    case ConstantName::SSeries:
      return series_S(c.s, 1e-12).value;
  }
  throw DomainError("unknown constant");
}

double preasymptotic_bound(int d, double s, double r, std::size_t n) {
  require_positive_s(s);
  if (n < 2) throw DomainError("preasymptotic bound requires n>=2");
  const double cd = constant(ConstantSpec{ConstantName::Preasymptotic, s, d, r});
  const double exponent = s / (r * (1.0 + std::log2(static_cast<double>(d - 1))));
  return std::pow(cd / static_cast<double>(n), exponent);
}

ConvergenceTable convergence_table(const SigmaPrefix& prefix, Embedding e, WidthKind kind,
                                   std::span<const std::size_t> n_grid, double alpha, double beta,
                                   double target) {
  if (n_grid.empty()) throw DomainError("convergence table needs a non-empty n grid");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 3) throw DomainError("convergence table requires n>=3");
    if (i > 0 && n_grid[i] <= n_grid[i - 1])
      throw DomainError("convergence table requires an increasing n grid");
  }
  ConvergenceTable table{e, kind, alpha, beta, {}};
  for (std::size_t n : n_grid) {
    const WidthValue w = width(prefix, WidthQuery{e, kind, n, 0.0});
    if (!w.exact)
      throw DomainError("convergence table requires an exact width; " +
                        std::string(embedding_name(e)) + " only has bounds for this kind");
    const double nn = static_cast<double>(n);
    const double normalizer = std::pow(nn, -alpha) * std::pow(std::log(nn), beta);
    table.rows.push_back(ConvergenceRow{n, w.value(), normalizer, w.value() / normalizer, target});
  }
  return table;
}

double aux_integral(double s, double beta, double a, double n) {
  if (!(s > 0.0)) throw DomainError("aux_integral requires s>0");
  if (!(beta >= 0.0)) throw DomainError("aux_integral requires beta>=0");
  if (!(a > 1.0)) throw DomainError("aux_integral requires a>1");
  if (!(a / n < 1.0)) throw DomainError("aux_integral requires a/n<1");
  const double log_n = std::log(n);
  auto f = [=](double y) {
    return std::pow(y, s) * std::pow(log_n / (std::log(y) + log_n), beta);
  };
  const auto res = integrate_adaptive(f, a / n, 1.0, 1e-11);
  if (!res.converged) throw ResourceError("aux_integral: quadrature did not reach 1e-10");
  return res.value;
}

}  // namespace mixwidth
