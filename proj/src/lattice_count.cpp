#include "mixwidth/lattice_count.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include <boost/multiprecision/cpp_int.hpp>

#include "mixwidth/asymptotics.hpp"
#include "mixwidth/errors.hpp"
#include "mixwidth/sigma.hpp"
#include "mixwidth/weights.hpp"

namespace mixwidth {

namespace {

using boost::multiprecision::cpp_int;

constexpr std::int64_t kMaxDenominator = 1000;
constexpr std::int64_t kMaxNumerator = 1'000'000;
constexpr std::int64_t kMaxRadius = 1'000'000;
constexpr double kGuardBand = 1e-9;
constexpr double kSandwichTolerance = 1e-12;

// Decides (1+r^2)^((s-1)/2) >= omega(k), i.e.
// prod (1+k_i^2)^s <= (1+r^2)^(s-1) (1+sum k_i^2).
class Threshold {
 public:
  Threshold(const Smoothness& s, std::int64_t r)
      : s_(s), r_sq_(r * r), log_rhs_((s.value - 1.0) * std::log1p(static_cast<double>(r * r))) {}

  bool leq(std::span<const std::int64_t> k, bool& inexact) const {
    double log_lhs = 0.0;
    std::int64_t norm_sq = 0;
    for (std::int64_t v : k) {
      const std::int64_t sq = v * v;
      log_lhs += std::log1p(static_cast<double>(sq));
      norm_sq += sq;
    }
    const double diff =
        s_.value * log_lhs - log_rhs_ - std::log1p(static_cast<double>(norm_sq));
    if (diff < -kGuardBand) return true;
    if (diff > kGuardBand) return false;
    if (!s_.rational) {
      inexact = true;
      return true;
    }
    return leq_exact(k, norm_sq);
  }

 private:
  bool leq_exact(std::span<const std::int64_t> k, std::int64_t norm_sq) const {
    cpp_int prod = 1;
    for (std::int64_t v : k) prod *= cpp_int(1 + v * v);
    const auto p = static_cast<unsigned>(s_.p);
    const auto q = static_cast<unsigned>(s_.q);
    const cpp_int lhs = boost::multiprecision::pow(prod, p);
    const cpp_int rhs = boost::multiprecision::pow(cpp_int(1 + r_sq_), p - q) *
                        boost::multiprecision::pow(cpp_int(1 + norm_sq), q);
    return lhs <= rhs;
  }

  Smoothness s_;
  std::int64_t r_sq_;
  double log_rhs_;
};

struct Ranges {
  std::vector<std::int64_t> lo;
  std::vector<std::int64_t> hi;
};

struct Tally {
  std::uint64_t count = 0;
  bool inexact = false;
};

// Counts ordered tuples with lo_i <= k_i <= hi_i below the threshold, each
// weighted by 2^(#nonzero) when `signed_weight`. Coordinates not yet fixed sit
// at their lower limit; since omega is nondecreasing in every |k_i|, the first
// failing value of k_pos ends the loop at that level.
void dfs(const Threshold& th, const Ranges& rg, bool signed_weight, std::vector<std::int64_t>& k,
         std::size_t pos, Tally& tally) {
  const std::size_t last = k.size() - 1;
  for (std::int64_t v = rg.lo[pos]; v <= rg.hi[pos]; ++v) {
    k[pos] = v;
    if (!th.leq(k, tally.inexact)) break;
    if (pos == last) {
      std::uint64_t w = 1;
      if (signed_weight)
        for (std::int64_t x : k)
          if (x != 0) w *= 2;
      tally.count += w;
    } else {
      dfs(th, rg, signed_weight, k, pos + 1, tally);
    }
  }
  k[pos] = rg.lo[pos];
}

Tally count_tuples(const Threshold& th, const Ranges& rg, bool signed_weight, unsigned threads) {
  for (std::size_t i = 0; i < rg.lo.size(); ++i)
    if (rg.lo[i] > rg.hi[i]) return {};
  const std::int64_t first_lo = rg.lo[0];
  const auto width = static_cast<std::size_t>(rg.hi[0] - first_lo + 1);
  std::vector<Tally> per_value(width);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    std::vector<std::int64_t> k(rg.lo);
    for (std::size_t idx = next++; idx < width; idx = next++) {
      k[0] = first_lo + static_cast<std::int64_t>(idx);
      Tally& t = per_value[idx];
      if (!th.leq(k, t.inexact)) continue;
      if (k.size() == 1) {
        t.count = (signed_weight && k[0] != 0) ? 2 : 1;
      } else {
        dfs(th, rg, signed_weight, k, 1, t);
      }
      k[0] = rg.lo[0];
    }
  };
  const unsigned n_threads =
      std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(width)));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  Tally total;
  for (const Tally& t : per_value) {
    total.count += t.count;
    total.inexact = total.inexact || t.inexact;
  }
  return total;
}

void check_radius(std::int64_t r) {
  if (r < 1) throw DomainError("lattice count requires r>=1");
  if (r > kMaxRadius) throw ResourceError("lattice count radius capped at 1e6");
}

}  // namespace

Smoothness Smoothness::from_double(double s) {
  if (!(s > 1.0) || !std::isfinite(s)) throw DomainError("lattice count requires s>1");
  for (std::int64_t q = 1; q <= kMaxDenominator; ++q) {
    const double pq = s * static_cast<double>(q);
    if (pq > static_cast<double>(kMaxNumerator)) break;
    const std::int64_t p = std::llround(pq);
    if (std::abs(static_cast<double>(p) / static_cast<double>(q) - s) <=
        4.0 * std::numeric_limits<double>::epsilon() * s)
      return Smoothness{s, p, q, true};
  }
  return Smoothness{s, 0, 0, false};
}

CountResult count_C(double s, std::int64_t r, int d, std::int64_t box_radius, unsigned threads) {
  const Smoothness sm = Smoothness::from_double(s);
  check_radius(r);
  if (d < 1) throw DomainError("count_C requires d>=1");
  if (box_radius == 0) box_radius = r;
  if (box_radius < 1) throw DomainError("count_C box radius must be >= 1");
  check_radius(box_radius);
  const Threshold th(sm, r);
  const Ranges rg{std::vector<std::int64_t>(static_cast<std::size_t>(d), 0),
                  std::vector<std::int64_t>(static_cast<std::size_t>(d), box_radius)};
  const Tally t = count_tuples(th, rg, true, threads);
  return CountResult{r, d, std::nullopt, std::nullopt, t.count, !t.inexact};
}

CountResult count_A(double s, std::int64_t r, int ell, unsigned threads) {
  const Smoothness sm = Smoothness::from_double(s);
  check_radius(r);
  if (ell < 1) throw DomainError("count_A requires ell>=1");
  const Threshold th(sm, r);
  const Ranges rg{std::vector<std::int64_t>(static_cast<std::size_t>(ell), 1),
                  std::vector<std::int64_t>(static_cast<std::size_t>(ell), r)};
  const Tally t = count_tuples(th, rg, false, threads);
  return CountResult{r, ell, std::nullopt, std::nullopt, t.count, !t.inexact};
}

CountResult count_A_split(double s, std::int64_t r, int ell, int j, std::int64_t r_ell,
                          unsigned threads) {
  const Smoothness sm = Smoothness::from_double(s);
  check_radius(r);
  if (ell < 1) throw DomainError("count_A_split requires ell>=1");
  if (j < 0 || j > ell) throw DomainError("count_A_split requires 0<=j<=ell");
  if (r_ell < 1 || r_ell > r) throw DomainError("count_A_split requires 1<=r_ell<=r");
  const Threshold th(sm, r);
  Ranges rg;
  for (int i = 0; i < ell; ++i) {
    rg.lo.push_back(i < j ? 1 : r_ell + 1);
    rg.hi.push_back(i < j ? r_ell : r);
  }
  const Tally t = count_tuples(th, rg, false, threads);
  return CountResult{r, ell, j, r_ell, t.count, !t.inexact};
}

double split_exponent(double s, int ell) {
  if (!(s > 1.0)) throw DomainError("split exponent requires s>1");
  if (ell < 1) throw DomainError("split exponent requires ell>=1");
  return (s - 1.0) / (2.0 * s * ell);
}

std::int64_t split_radius(double s, std::int64_t r, int ell) {
  check_radius(r);
  const double lambda = split_exponent(s, ell);
  const double x = std::exp(lambda * std::log(static_cast<double>(r)));
  auto m = static_cast<std::int64_t>(std::floor(x * (1.0 + 1e-14)));
  return std::clamp<std::int64_t>(m, 1, r);
}

AppendixReport verify_appendix_limits(double s, int d, std::span<const std::int64_t> r_grid,
                                      unsigned threads) {
  if (!(s > 1.0)) throw DomainError("appendix limits require s>1");
  if (d < 1) throw DomainError("appendix limits require d>=1");
  for (std::size_t i = 1; i < r_grid.size(); ++i)
    if (r_grid[i] <= r_grid[i - 1]) throw DomainError("appendix limits require an increasing r grid");

  AppendixReport report{s, d, series_S(s, 1e-10).value, {}};
  const double S = report.S;
  const double c_target = 2.0 * d * std::pow(2.0 * S + 1.0, d - 1);
  for (std::int64_t r : r_grid) {
    const double rd = static_cast<double>(r);
    const CountResult c = count_C(s, r, d, 0, threads);
    report.rows.push_back(AppendixRow{"C", r, d, std::nullopt, std::nullopt, c.count,
                                      static_cast<double>(c.count) / rd, c_target, c.exact});
    for (int ell = 1; ell <= d; ++ell) {
      const double s_pow = std::pow(S, ell - 1);
      const CountResult a = count_A(s, r, ell, threads);
      report.rows.push_back(AppendixRow{"A", r, ell, std::nullopt, std::nullopt, a.count,
                                        static_cast<double>(a.count) / rd, ell * s_pow, a.exact});
      const std::int64_t r_ell = split_radius(s, r, ell);
      for (int j = 0; j <= ell; ++j) {
        const CountResult as = count_A_split(s, r, ell, j, r_ell, threads);
        report.rows.push_back(AppendixRow{"A-split", r, ell, j, r_ell, as.count,
                                          static_cast<double>(as.count) / rd,
                                          j == ell - 1 ? s_pow : 0.0, as.exact});
      }
    }
  }
  return report;
}

SandwichResult sandwich_check(double s, int d, std::int64_t r, unsigned threads) {
  if (r < 2) throw DomainError("sandwich check requires r>=2");
  const CountResult prev = count_C(s, r - 1, d, 0, threads);
  const CountResult cur = count_C(s, r, d, 0, threads);
  const double rd = static_cast<double>(r);
  SandwichResult out{true, prev.count + 1, cur.count,
                     std::pow(1.0 + rd * rd, -(s - 1.0) / 2.0),
                     std::pow(1.0 + (rd - 1.0) * (rd - 1.0), -(s - 1.0) / 2.0), 0};
  if (cur.count <= prev.count) return out;
  const SigmaPrefix prefix =
      sigma_prefix(WeightSpec::h1_ratio(s, d), static_cast<std::size_t>(cur.count), threads);
  for (std::uint64_t n = out.first_n; n <= out.last_n; ++n) {
    const double v = prefix.sigma(static_cast<std::size_t>(n));
    if (v < out.lower * (1.0 - kSandwichTolerance) || v > out.upper * (1.0 + kSandwichTolerance))
      ++out.failures;
  }
  out.pass = out.failures == 0;
  return out;
}

}  // namespace mixwidth
