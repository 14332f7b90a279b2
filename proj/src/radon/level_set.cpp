#include "tomo/level_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tomo {

namespace {

struct Vec2 {
  double x, y;
};

Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
double length(Vec2 a) { return std::hypot(a.x, a.y); }

Coord lift(Vec2 v) { return {v.x, v.y, 0.0}; }

class Marcher {
 public:
  Marcher(const ScalarField& f, const LevelFunction& g) : f_(f), g_(g) {}

  // Crossing of `level` on the edge p -> q with node values vp, vq.
  Vec2 crossing(Vec2 p, Vec2 q, double vp, double vq, double level) const {
    double t = (vp - level) / (vp - vq);
    const Vec2 e = q - p;
    Vec2 x = p + t * e;
    const Coord grad = g_.gradient(lift(x));
    const double slope = grad[0] * e.x + grad[1] * e.y;
    const double r = g_.value(lift(x)) - level;
    if (slope != 0.0 && std::isfinite(r)) {
      const double t1 = t - r / slope;
      if (t1 >= 0.0 && t1 <= 1.0) {
        t = t1;
        x = p + t * e;
      }
    }
    return x;
  }

  double weight(Vec2 x) const {
    const Coord c = lift(x);
    const double fv = f_.interpolate(c);
    if (fv == 0.0) return 0.0;
    const Coord grad = g_.gradient(c);
    const double gn = std::hypot(grad[0], grad[1]);
    return gn > 0.0 ? fv / gn : 0.0;
  }

  double segment(Vec2 a, Vec2 b, double level) const {
    const Vec2 m = 0.5 * (a + b);
    Vec2 mp = m;
    const double chord = length(b - a);
    if (!(chord > 0.0)) return 0.0;
    const Coord cm = lift(m);
    const Coord grad = g_.gradient(cm);
    const double g2 = grad[0] * grad[0] + grad[1] * grad[1];
    const double r = g_.value(cm) - level;
    if (g2 > 0.0 && std::isfinite(r)) {
      const Vec2 step{r * grad[0] / g2, r * grad[1] / g2};
      if (length(step) <= 0.5 * chord) mp = m - step;
    }
    const double s0 = length(-3.0 * a + 4.0 * mp - b);
    const double s1 = chord;
    const double s2 = length(a - 4.0 * mp + 3.0 * b);
    return (weight(a) * s0 + 4.0 * weight(mp) * s1 + weight(b) * s2) / 6.0;
  }

 private:
  const ScalarField& f_;
  const LevelFunction& g_;
};

}  // namespace

void level_set_integrals(const ScalarField& f, const LevelFunction& g,
                         std::span<const double> levels, std::span<double> out, int refine) {
  require(f.dim() == 2, "level-set integration is implemented for 2-D fields");
  require(refine >= 1, "level-set refinement must be >= 1");
  require(levels.size() == out.size(), "level-set output size mismatch");
  require(std::is_sorted(levels.begin(), levels.end()), "levels must be sorted ascending");
  std::fill(out.begin(), out.end(), 0.0);
  if (levels.empty()) return;

  const BoxDomain& dom = f.domain();
  const std::size_t n0 = (dom.shape()[0] - 1) * std::size_t(refine) + 1;
  const std::size_t n1 = (dom.shape()[1] - 1) * std::size_t(refine) + 1;
  const double h0 = dom.spacing(0) / refine, h1 = dom.spacing(1) / refine;
  const double lo0 = dom.lo()[0], lo1 = dom.lo()[1];
  auto node = [&](std::size_t i, std::size_t j) {
    return Vec2{lo0 + double(i) * h0, lo1 + double(j) * h1};
  };
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> gv(n0 * n1);
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t j = 0; j < n1; ++j) {
      const Coord c = lift(node(i, j));
      double v = (g.masked && g.masked(c)) ? nan : g.value(c);
      gv[i * n1 + j] = std::isfinite(v) ? v : nan;
    }

  // Cells where f vanishes at every corner cannot contribute.
  const std::size_t fs = dom.stride(0);
  const auto& fv = f.values();
  auto field_cell_zero = [&](std::size_t i, std::size_t j) {
    const std::size_t fi = i / std::size_t(refine), fj = j / std::size_t(refine);
    const std::size_t o = fi * fs + fj;
    return fv[o] == 0.0 && fv[o + 1] == 0.0 && fv[o + fs] == 0.0 && fv[o + fs + 1] == 0.0;
  };

  const Marcher march(f, g);
  for (std::size_t i = 0; i + 1 < n0; ++i) {
    for (std::size_t j = 0; j + 1 < n1; ++j) {
      const double v[4] = {gv[i * n1 + j], gv[(i + 1) * n1 + j], gv[(i + 1) * n1 + j + 1],
                           gv[i * n1 + j + 1]};
      if (std::isnan(v[0]) || std::isnan(v[1]) || std::isnan(v[2]) || std::isnan(v[3]))
        continue;
      const double vmin = std::min({v[0], v[1], v[2], v[3]});
      const double vmax = std::max({v[0], v[1], v[2], v[3]});
      auto first = std::upper_bound(levels.begin(), levels.end(), vmin);
      auto last = std::upper_bound(levels.begin(), levels.end(), vmax);
      if (first == last || field_cell_zero(i, j)) continue;
      if (g.masked && g.masked(lift(node(i, j) + 0.5 * Vec2{h0, h1}))) continue;
      const Vec2 p[4] = {node(i, j), node(i + 1, j), node(i + 1, j + 1), node(i, j + 1)};
      for (auto it = first; it != last; ++it) {
        const double level = *it;
        bool pos[4];
        for (int k = 0; k < 4; ++k) pos[k] = v[k] >= level;
        Vec2 x[4];
        int crossing[4], nc = 0;
        for (int k = 0; k < 4; ++k) {
          const int k1 = (k + 1) % 4;
          if (pos[k] != pos[k1]) {
            x[k] = march.crossing(p[k], p[k1], v[k], v[k1], level);
            crossing[nc++] = k;
          }
        }
        double sum = 0.0;
        if (nc == 2) {
          sum = march.segment(x[crossing[0]], x[crossing[1]], level);
        } else if (nc == 4) {
          const Vec2 c = 0.5 * (p[0] + p[2]);
          const double gc = g.value(lift(c));
          const bool center_pos = gc >= level;
          if (center_pos != pos[1])
            sum = march.segment(x[0], x[1], level) + march.segment(x[2], x[3], level);
          else
            sum = march.segment(x[3], x[0], level) + march.segment(x[1], x[2], level);
        }
        out[std::size_t(it - levels.begin())] += sum;
      }
    }
  }
}

double level_set_integral(const ScalarField& f, const LevelFunction& g, double level,
                          int refine) {
  double out = 0.0;
  level_set_integrals(f, g, std::span<const double>(&level, 1), std::span<double>(&out, 1),
                      refine);
  return out;
}

}  // namespace tomo
