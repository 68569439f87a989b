#pragma once

#include "simplex_operad/dist.hpp"
#include "simplex_operad/endo.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace simplex_operad {

using Rng = std::mt19937_64;

/// Default upper bound for the integer weights behind random rationals.
inline constexpr unsigned kDefaultMaxWeight = 20;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent stream for sample `index` of a sweep seeded with `seed`, so a
/// sample's inputs never depend on how many samples ran before it.
inline Rng sample_rng(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

/// Uniform integer in [lo, hi].
inline std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

/// Uniform double in [lo, hi).
inline double uniform_real(Rng& rng, double lo, double hi) {
  double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

/// Integer weights in [0, max_weight] normalized by their sum. Zero entries
/// come up on their own; an all-zero draw is redrawn.
inline Dist random_rational_dist(Rng& rng, std::size_t n, unsigned max_weight = kDefaultMaxWeight) {
  std::vector<long> w(n);
  long total = 0;
  while (total == 0) {
    total = 0;
    for (auto& x : w) {
      x = static_cast<long>(uniform_index(rng, 0, max_weight));
      total += x;
    }
  }
  std::vector<Scalar> probs;
  probs.reserve(n);
  for (long x : w) probs.emplace_back(x, total);
  return Dist(std::move(probs));
}

/// Like random_rational_dist, with entry `zero_slot` (1-based) forced to 0.
/// Requires n >= 2.
inline Dist random_dist_with_zero(Rng& rng, std::size_t n, std::size_t zero_slot,
                                  unsigned max_weight = kDefaultMaxWeight) {
  std::vector<long> w(n);
  long total = 0;
  while (total == 0) {
    total = 0;
    for (std::size_t k = 0; k < n; ++k) {
      w[k] = k + 1 == zero_slot ? 0 : static_cast<long>(uniform_index(rng, 0, max_weight));
      total += w[k];
    }
  }
  std::vector<Scalar> probs;
  for (long x : w) probs.emplace_back(x, total);
  return Dist(std::move(probs));
}

inline Point random_point(Rng& rng, std::size_t n, double lo = -10.0, double hi = 10.0) {
  std::vector<double> x(n);
  for (auto& c : x) c = uniform_real(rng, lo, hi);
  return Point(std::move(x));
}

/// Random function of the given arity built from const, proj, repr and sum
/// nodes, at most `depth` levels deep.
inline EndoFn random_endofn(Rng& rng, std::size_t arity, int depth = 3) {
  std::size_t pick = uniform_index(rng, 0, depth > 0 ? 3 : 2);
  switch (pick) {
    case 0: return EndoFn::constant(arity, uniform_real(rng, -10.0, 10.0));
    case 1: return EndoFn::projection(arity, uniform_index(rng, 1, arity));
    case 2: return represent(random_rational_dist(rng, arity));
    default: {
      EndoFn a = random_endofn(rng, arity, depth - 1);
      EndoFn b = random_endofn(rng, arity, depth - 1);
      return add(a, b);
    }
  }
}

}  // namespace simplex_operad
