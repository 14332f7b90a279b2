#pragma once

#include <functional>
#include <span>

#include "tomo/field.hpp"

namespace tomo {

/// A smooth scalar function on the plane with its analytic gradient.
struct LevelFunction {
  std::function<double(const Coord&)> value;
  std::function<Coord(const Coord&)> gradient;
  /// Optional: true where the function must not be evaluated (singular set).
  std::function<bool(const Coord&)> masked;
};

/// Marching-squares evaluation of \int f delta(level - g) d^2q for several
/// levels at once. g is sampled on the field lattice refined `refine` times;
/// a node counts as positive when g - level >= 0. Crossings are placed on the
/// exact level set by a safeguarded Newton step along each cell edge, each
/// segment's midpoint is projected onto the level set, and f / |grad g| is
/// integrated with Simpson's rule on the resulting quadratic arc. Cells that
/// touch a masked point or a non-finite node value contribute nothing.
/// `levels` must be sorted ascending; results are written to `out`.
void level_set_integrals(const ScalarField& f, const LevelFunction& g,
                         std::span<const double> levels, std::span<double> out, int refine = 1);

double level_set_integral(const ScalarField& f, const LevelFunction& g, double level,
                          int refine = 1);

}  // namespace tomo
