#include "mixwidth/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "mixwidth/compensated.hpp"

namespace mixwidth {

namespace {

// Kronrod nodes on [0, 1) of the symmetric rule; odd indices are the Gauss nodes.
constexpr std::array<double, 8> kNodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrod{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGauss{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a, b, value, error;
  bool operator<(const Piece& o) const { return error < o.error; }
};

Piece gk15(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(mid);
  double kron = fc * kKronrod[7];
  double gauss = fc * kGauss[3];
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const double pair = f(mid - dx) + f(mid + dx);
    kron += kKronrod[i] * pair;
    if (i % 2 == 1) gauss += kGauss[i / 2] * pair;
  }
  return Piece{a, b, kron * half, std::abs((kron - gauss) * half)};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, std::size_t max_intervals) {
  std::priority_queue<Piece> pieces;
  pieces.push(gk15(f, a, b));
  double total_err = pieces.top().error;
  while (total_err > abs_tol && pieces.size() < max_intervals) {
    const Piece worst = pieces.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;
    pieces.pop();
    const Piece left = gk15(f, worst.a, mid);
    const Piece right = gk15(f, mid, worst.b);
    pieces.push(left);
    pieces.push(right);
    total_err += left.error + right.error - worst.error;
  }
  CompensatedSum<double> value;
  CompensatedSum<double> error;
  const std::size_t count = pieces.size();
  while (!pieces.empty()) {
    value += pieces.top().value;
    error += pieces.top().error;
    pieces.pop();
  }
  return QuadratureResult{value.value(), error.value(), count, error.value() <= abs_tol};
}

}  // namespace mixwidth
