#ifndef PDSP_CUTS_HPP
#define PDSP_CUTS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pdsp/instance.hpp"

namespace pdsp {

/// Tangent plane theta <= g.x + c of f at a feasible point y,
/// with g = Qy and c = f(y) - <Qy,y> = -f(y).
struct Cut {
  std::vector<double> gradient;
  double offset = 0.0;
  Bits source;
  std::size_t iteration = 0;

  /// g.x + c, i.e. h(x, source).
  double evaluate(std::span<const double> x) const;
  double evaluate(std::span<const std::uint8_t> x) const;
};

/// Qx. Entry i is the total distance from location i to the selected set.
std::vector<double> gradient(const Instance& inst, std::span<const std::uint8_t> x);
std::vector<double> gradient(const Instance& inst, std::span<const double> x);

Cut make_cut(const Instance& inst, const BinarySolution& y, std::size_t iteration);

/// theta - (g.x + c); positive when (x, theta) violates the cut.
double cut_violation(const Cut& cut, std::span<const double> x, double theta);

/// h(x, y) = <Qy, x - y> + f(y), computed directly from the definition.
double tangent_value(const Instance& inst, std::span<const std::uint8_t> x,
                     std::span<const std::uint8_t> y);

}  // namespace pdsp

#endif  // PDSP_CUTS_HPP
