#include "mixwidth/sigma.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <queue>
#include <thread>

#include "mixwidth/compensated.hpp"
#include "mixwidth/errors.hpp"

namespace mixwidth {

SigmaPrefix::SigmaPrefix(WeightSpec spec, std::vector<double> weights) : spec_(std::move(spec)) {
  values_.reserve(weights.size());
  cum_inv_sq_.reserve(weights.size());
  CompensatedSum<double> acc;
  for (double w : weights) {
    acc += w * w;
    const double c = acc.value();
    if (!std::isfinite(c)) throw ResourceError("cumsum overflow; reduce N or s");
    values_.push_back(1.0 / w);
    cum_inv_sq_.push_back(c);
  }
}

std::uint64_t orbit_multiplicity(std::span<const Index> rep) {
  std::uint64_t m = 1;
  // Multinomial d! / prod(run!) built up position by position: after placing
  // i items with the current run of length `run`, multiply by i / run.
  std::size_t run = 0;
  for (std::size_t i = 0; i < rep.size(); ++i) {
    run = (i > 0 && rep[i] == rep[i - 1]) ? run + 1 : 1;
    m = m * (i + 1) / run;
    if (rep[i] != 0) m *= 2;
  }
  return m;
}

std::vector<LatticePoint> expand_orbit(std::span<const Index> rep) {
  LatticePoint base(rep.begin(), rep.end());
  std::sort(base.begin(), base.end());
  std::vector<LatticePoint> out;
  do {
    std::vector<std::size_t> nz;
    for (std::size_t i = 0; i < base.size(); ++i)
      if (base[i] != 0) nz.push_back(i);
    const std::uint64_t patterns = std::uint64_t{1} << nz.size();
    for (std::uint64_t mask = 0; mask < patterns; ++mask) {
      LatticePoint k = base;
      for (std::size_t b = 0; b < nz.size(); ++b)
        if (mask >> b & 1U) k[nz[b]] = -k[nz[b]];
      out.push_back(std::move(k));
    }
  } while (std::next_permutation(base.begin(), base.end()));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool rep_less(std::span<const Index> a, std::span<const Index> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool orbit_less(const OrbitEntry& a, const OrbitEntry& b) {
  if (a.weight != b.weight) return a.weight < b.weight;
  return rep_less(a.rep, b.rep);
}

void check_request(std::size_t N) {
  if (N < 1) throw DomainError("N must be >= 1");
  if (N > kMaxPrefix)
    throw ResourceError("N=" + std::to_string(N) + " exceeds the prefix cap " +
                        std::to_string(kMaxPrefix));
}

// Best-first search over nonincreasing vectors in N_0^d. Each vector's parent
// is obtained by decrementing its last nonzero coordinate, which makes the
// search space a tree: a node has at most two children (increment the last
// nonzero coordinate if that keeps the order, or switch on the next zero
// coordinate). Monotonicity of omega keeps the pop order sorted.
std::vector<OrbitEntry> best_first_orbits(const WeightSpec& spec, std::size_t N) {
  const std::size_t d = static_cast<std::size_t>(spec.dim());
  std::vector<Index> arena;
  struct Node {
    double w;
    std::size_t id;
  };
  auto rep_of = [&](std::size_t id) { return std::span<const Index>(arena.data() + id * d, d); };
  auto greater = [&](const Node& a, const Node& b) {
    if (a.w != b.w) return a.w > b.w;
    return rep_less(rep_of(b.id), rep_of(a.id));
  };
  std::priority_queue<Node, std::vector<Node>, decltype(greater)> heap(greater);

  auto push = [&](std::span<const Index> rep) {
    const std::size_t id = arena.size() / d;
    arena.insert(arena.end(), rep.begin(), rep.end());
    heap.push(Node{evaluate_canonical(spec, rep), id});
  };

  LatticePoint cur(d, 0);
  push(cur);
  std::vector<OrbitEntry> out;
  std::uint64_t covered = 0;
  while (covered < N) {
    const Node top = heap.top();
    heap.pop();
    auto rep = rep_of(top.id);
    cur.assign(rep.begin(), rep.end());
    const std::uint64_t mult = orbit_multiplicity(cur);
    out.push_back(OrbitEntry{cur, top.w, mult});
    covered += mult;

    std::ptrdiff_t last = -1;
    for (std::size_t i = 0; i < d; ++i)
      if (cur[i] != 0) last = static_cast<std::ptrdiff_t>(i);
    if (last >= 0) {
      const auto L = static_cast<std::size_t>(last);
      if (L == 0 || cur[L - 1] > cur[L]) {
        ++cur[L];
        push(cur);
        --cur[L];
      }
    }
    if (static_cast<std::size_t>(last + 1) < d) {
      cur[static_cast<std::size_t>(last + 1)] = 1;
      push(cur);
    }
  }
  return out;
}

// Visits every nonincreasing rep with omega(rep) <= t whose first coordinate
// equals `first`. Prunes each level by monotonicity in the current coordinate.
void visit_subtree(const WeightSpec& spec, double t, Index first,
                   const std::function<void(std::span<const Index>, double)>& visit) {
  const std::size_t d = static_cast<std::size_t>(spec.dim());
  LatticePoint rep(d, 0);
  rep[0] = first;
  const double w0 = evaluate_canonical(spec, rep);
  if (w0 > t) return;
  if (d == 1) {
    visit(rep, w0);
    return;
  }
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    for (Index v = 0; v <= rep[i - 1]; ++v) {
      rep[i] = v;
      const double w = evaluate_canonical(spec, rep);
      if (w > t) break;
      if (i + 1 == d) {
        visit(rep, w);
      } else {
        rec(i + 1);
      }
    }
    rep[i] = 0;
  };
  rec(1);
}

// Largest first coordinate that can still satisfy omega <= t, plus one.
Index first_coordinate_bound(const WeightSpec& spec, double t) {
  LatticePoint rep(static_cast<std::size_t>(spec.dim()), 0);
  Index a = 0;
  while (true) {
    rep[0] = a;
    if (evaluate_canonical(spec, rep) > t) return a;
    ++a;
  }
}

template <typename PerTask>
void parallel_over_first(Index tasks, unsigned threads, PerTask&& work) {
  std::atomic<Index> next{0};
  auto worker = [&](unsigned tid) {
    for (Index a = next++; a < tasks; a = next++) work(tid, a);
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker, i);
  worker(0);
  for (auto& th : pool) th.join();
}

std::uint64_t count_points_parallel(const WeightSpec& spec, double t, unsigned threads) {
  const Index tasks = first_coordinate_bound(spec, t);
  std::vector<std::uint64_t> partial(threads, 0);
  parallel_over_first(tasks, threads, [&](unsigned tid, Index a) {
    visit_subtree(spec, t, a, [&](std::span<const Index> rep, double) {
      partial[tid] += orbit_multiplicity(rep);
    });
  });
  std::uint64_t total = 0;
  for (auto c : partial) total += c;
  return total;
}

std::vector<OrbitEntry> threshold_orbits(const WeightSpec& spec, std::size_t N, unsigned threads) {
  double lo = 1.0;
  double hi = 1.0;
  std::uint64_t count_hi = count_points_parallel(spec, hi, threads);
  while (count_hi < N) {
    lo = hi;
    hi *= 2.0;
    count_hi = count_points_parallel(spec, hi, threads);
  }
  // Shrink the bracket so the collected set stays within a small factor of N.
  for (int it = 0; it < 60 && count_hi > 2 * static_cast<std::uint64_t>(N) && hi > lo; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (!(mid > lo && mid < hi)) break;
    const std::uint64_t c = count_points_parallel(spec, mid, threads);
    if (c >= N) {
      hi = mid;
      count_hi = c;
    } else {
      lo = mid;
    }
  }

  const Index tasks = first_coordinate_bound(spec, hi);
  std::vector<std::vector<OrbitEntry>> partial(threads);
  parallel_over_first(tasks, threads, [&](unsigned tid, Index a) {
    visit_subtree(spec, hi, a, [&](std::span<const Index> rep, double w) {
      partial[tid].push_back(OrbitEntry{LatticePoint(rep.begin(), rep.end()), w,
                                        orbit_multiplicity(rep)});
    });
  });
  std::vector<OrbitEntry> all;
  for (auto& p : partial) std::move(p.begin(), p.end(), std::back_inserter(all));
  std::sort(all.begin(), all.end(), orbit_less);

  std::uint64_t covered = 0;
  std::size_t keep = 0;
  while (covered < N) covered += all[keep++].multiplicity;
  all.resize(keep);
  return all;
}

// Product weights: N_d(t) = sum_a c(a) N_{d-1}(t / w(a)), c(0)=1, c(a>0)=2.
std::uint64_t count_product(const WeightSpec& spec, int dims, double t) {
  if (t < 1.0) return 0;
  if (dims == 0) return 1;
  if (dims == 1) {
    // Closed-form inverse of the one-dimensional factor, then fix rounding.
    double guess = 0.0;
    if (spec.family() == Family::MixedInf) {
      guess = std::pow(t, 1.0 / spec.s());
    } else {
      const double inner = std::pow(t, spec.r() / spec.s()) - 1.0;
      guess = inner > 0.0 ? std::pow(inner, 1.0 / spec.r()) : 0.0;
    }
    auto a = static_cast<Index>(std::min(guess, 9.0e15));
    while (product_factor(spec, a + 1) <= t) ++a;
    while (a > 0 && product_factor(spec, a) > t) --a;
    return 1 + 2 * static_cast<std::uint64_t>(a);
  }
  std::uint64_t total = 0;
  for (Index a = 0;; ++a) {
    const double w = product_factor(spec, a);
    if (w > t) break;
    total += (a == 0 ? 1 : 2) * count_product(spec, dims - 1, t / w);
  }
  return total;
}

}  // namespace

std::vector<OrbitEntry> leading_orbits(const WeightSpec& spec, std::size_t N, unsigned threads) {
  check_request(N);
  if (threads <= 1) return best_first_orbits(spec, N);
  return threshold_orbits(spec, N, threads);
}

SigmaPrefix sigma_prefix(const WeightSpec& spec, std::size_t N, unsigned threads) {
  const auto orbits = leading_orbits(spec, N, threads);
  std::vector<double> weights;
  weights.reserve(N);
  for (const auto& o : orbits) {
    const std::uint64_t take = std::min<std::uint64_t>(o.multiplicity, N - weights.size());
    weights.insert(weights.end(), take, o.weight);
  }
  return SigmaPrefix(spec, std::move(weights));
}

std::uint64_t count_leq(const WeightSpec& spec, double t) {
  const double teff = t * (1.0 + kTieTolerance);
  if (!(teff >= 1.0)) return 0;
  if (spec.is_product()) return count_product(spec, spec.dim(), teff);
  std::uint64_t total = 0;
  const Index tasks = first_coordinate_bound(spec, teff);
  for (Index a = 0; a < tasks; ++a)
    visit_subtree(spec, teff, a, [&](std::span<const Index> rep, double) {
      total += orbit_multiplicity(rep);
    });
  return total;
}

std::vector<LatticePoint> best_index_set(const WeightSpec& spec, std::size_t n) {
  if (n < 1) throw DomainError("best_index_set requires n>=1");
  std::vector<LatticePoint> out;
  if (n == 1) return out;
  for (const auto& o : leading_orbits(spec, n - 1)) {
    for (auto& k : expand_orbit(o.rep)) {
      if (out.size() == n - 1) return out;
      out.push_back(std::move(k));
    }
  }
  return out;
}

SigmaPrefix sigma_bruteforce(const WeightSpec& spec, std::size_t N, Index box_radius) {
  check_request(N);
  if (box_radius < 0) throw DomainError("box_radius must be >= 0");
  const std::size_t d = static_cast<std::size_t>(spec.dim());
  const double side = 2.0 * static_cast<double>(box_radius) + 1.0;
  if (std::pow(side, static_cast<double>(d)) > 5e8) throw ResourceError("brute-force box too large");
  if (std::pow(side, static_cast<double>(d)) < static_cast<double>(N))
    throw DomainError("box too small");

  std::vector<double> weights;
  LatticePoint k(d, -box_radius);
  while (true) {
    weights.push_back(evaluate(spec, k));
    std::size_t i = 0;
    while (i < d && k[i] == box_radius) k[i++] = -box_radius;
    if (i == d) break;
    ++k[i];
  }
  std::nth_element(weights.begin(), weights.begin() + static_cast<std::ptrdiff_t>(N - 1),
                   weights.end());
  weights.resize(N);
  std::sort(weights.begin(), weights.end());

  // The cheapest point outside the box sits on an axis just past the boundary.
  LatticePoint outside(d, 0);
  outside[0] = box_radius + 1;
  if (weights.back() > evaluate(spec, outside) * (1.0 + kTieTolerance))
    throw DomainError("box too small");
  return SigmaPrefix(spec, std::move(weights));
}

}  // namespace mixwidth
