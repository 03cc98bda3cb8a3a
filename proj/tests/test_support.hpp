#ifndef PDSP_TESTS_TEST_SUPPORT_HPP
#define PDSP_TESTS_TEST_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "pdsp/instance.hpp"
#include "pdsp/instance_io.hpp"

namespace pdsp::testing {

// Points (0,0), (3,0), (0,4): q12 = 3, q13 = 4, q23 = 5.
inline Instance triangle(std::size_t p) {
  return make_instance("triangle", DenseMatrix::from_rows({{0, 3, 4}, {3, 0, 5}, {4, 5, 0}}), p);
}

inline Instance random_instance(std::size_t n, std::size_t p, std::uint64_t seed, double r = 1.0,
                                std::size_t s = 2) {
  GenSpec spec;
  spec.n = n;
  spec.s = s;
  spec.seed = seed;
  spec.r = r;
  spec.p_rule = PRule::kExplicit;
  spec.p = p;
  return generate(spec);
}

inline Bits bits_from(std::initializer_list<int> v) {
  Bits b;
  for (int x : v) b.push_back(static_cast<std::uint8_t>(x));
  return b;
}

// Uniformly random point of K.
inline Bits random_point(std::size_t n, std::size_t p, std::mt19937_64& rng) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), rng);
  Bits b(n, 0);
  for (std::size_t i = 0; i < p; ++i) b[idx[i]] = 1;
  return b;
}

// Calls fn(bits) for every point of K in lexicographic order of index sets.
template <class Fn>
void for_each_subset(std::size_t n, std::size_t p, Fn&& fn) {
  std::vector<std::size_t> c(p);
  for (std::size_t i = 0; i < p; ++i) c[i] = i;
  for (;;) {
    Bits b(n, 0);
    for (std::size_t i : c) b[i] = 1;
    fn(b);
    std::size_t i = p;
    while (i > 0 && c[i - 1] == n - p + i - 1) --i;
    if (i == 0) return;
    ++c[i - 1];
    for (std::size_t j = i; j < p; ++j) c[j] = c[j - 1] + 1;
  }
}

}  // namespace pdsp::testing

#endif  // PDSP_TESTS_TEST_SUPPORT_HPP
