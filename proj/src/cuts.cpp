#include "pdsp/cuts.hpp"

#include "pdsp/errors.hpp"

namespace pdsp {

double Cut::evaluate(std::span<const double> x) const {
  if (x.size() != gradient.size()) throw ArgumentError("cut evaluation: dimension mismatch");
  double total = offset;
  for (std::size_t i = 0; i < x.size(); ++i) total += gradient[i] * x[i];
  return total;
}

double Cut::evaluate(std::span<const std::uint8_t> x) const {
  if (x.size() != gradient.size()) throw ArgumentError("cut evaluation: dimension mismatch");
  double total = offset;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i]) total += gradient[i];
  }
  return total;
}

std::vector<double> gradient(const Instance& inst, std::span<const std::uint8_t> x) {
  if (x.size() != inst.n()) throw ArgumentError("gradient: dimension mismatch");
  const std::size_t n = inst.n();
  std::vector<double> g(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (!x[j]) continue;
    // Q is symmetric, so column j equals row j.
    const auto col = inst.q().row(j);
    for (std::size_t i = 0; i < n; ++i) g[i] += col[i];
  }
  return g;
}

std::vector<double> gradient(const Instance& inst, std::span<const double> x) {
  if (x.size() != inst.n()) throw ArgumentError("gradient: dimension mismatch");
  const std::size_t n = inst.n();
  std::vector<double> g(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = inst.q().row(i);
    double dot = 0.0;
    for (std::size_t j = 0; j < n; ++j) dot += row[j] * x[j];
    g[i] = dot;
  }
  return g;
}

Cut make_cut(const Instance& inst, const BinarySolution& y, std::size_t iteration) {
  if (y.size() != inst.n() || popcount(y.bits()) != inst.p()) {
    throw ArgumentError("make_cut: source point is not in K");
  }
  Cut cut;
  cut.gradient = gradient(inst, std::span<const std::uint8_t>(y.bits()));
  cut.offset = -objective(inst, std::span<const std::uint8_t>(y.bits()));
  cut.source = y.bits();
  cut.iteration = iteration;
  return cut;
}

double cut_violation(const Cut& cut, std::span<const double> x, double theta) {
  return theta - cut.evaluate(x);
}

double tangent_value(const Instance& inst, std::span<const std::uint8_t> x,
                     std::span<const std::uint8_t> y) {
  const auto g = gradient(inst, y);
  double inner = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    inner += g[i] * (static_cast<double>(x[i]) - static_cast<double>(y[i]));
  }
  return inner + objective(inst, y);
}

}  // namespace pdsp
