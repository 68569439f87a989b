#pragma once

#include "simplex_operad/endo.hpp"
#include "simplex_operad/operad_laws.hpp"
#include "simplex_operad/sexpr.hpp"

#include <array>
#include <cmath>
#include <cstdint>

namespace simplex_operad {

/// Where the module element sits in (p ∘_j q) ∘_i r.
enum class ModulePlacement { first, second, third };

inline const char* to_string(ModulePlacement p) {
  switch (p) {
    case ModulePlacement::first: return "MxOxO";
    case ModulePlacement::second: return "OxMxO";
    default: return "OxOxM";
  }
}

inline const char* to_string(AssocWindow w) { return to_string(to_law(w)); }

namespace detail {

// Draws (i, j) inside the requested window; n >= 2 for the outer windows.
inline std::array<std::size_t, 2> slots_in_window(Rng& rng, AssocWindow w, std::size_t n, std::size_t m) {
  switch (w) {
    case AssocWindow::left: {
      std::size_t j = uniform_index(rng, 2, n);
      return {uniform_index(rng, 1, j - 1), j};
    }
    case AssocWindow::nested: {
      std::size_t j = uniform_index(rng, 1, n);
      return {uniform_index(rng, j, j + m - 1), j};
    }
    default: {
      std::size_t j = uniform_index(rng, 1, n - 1);
      return {uniform_index(rng, j + m, n + m - 1), j};
    }
  }
}

template <class P, class Q, class R>
double assoc_gap(const P& p, const Q& q, const R& r, std::size_t i, std::size_t j, const Point& x) {
  return std::fabs(evaluate(assoc_lhs(p, q, r, i, j), x) - evaluate(assoc_rhs(p, q, r, i, j), x));
}

}  // namespace detail

/// Module associativity of End_R over the simplex operad: every placement of
/// the module element crossed with every index window, cycling through the
/// nine combinations. Functions are random depth-3 const/proj/repr/sum trees;
/// each sample is compared at `points` random points.
inline LawReport check_module_assoc(std::size_t samples, std::uint64_t seed,
                                    double tol = kArithmeticTolerance, std::size_t points = 3) {
  LawReport report;
  report.law = "module-assoc";
  report.seed = seed;
  report.tolerance = tol;
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng = sample_rng(seed, s);
    auto placement = static_cast<ModulePlacement>(s % 3);
    auto window = static_cast<AssocWindow>((s / 3) % 3);
    std::size_t n = uniform_index(rng, window == AssocWindow::nested ? 1 : 2, 4);
    std::size_t m = uniform_index(rng, 1, 4), k = uniform_index(rng, 1, 4);
    const auto slots = detail::slots_in_window(rng, window, n, m);
    const std::size_t i = slots[0], j = slots[1];

    Dist p = random_rational_dist(rng, n), q = random_rational_dist(rng, m), r = random_rational_dist(rng, k);
    std::size_t arity = placement == ModulePlacement::first ? n : (placement == ModulePlacement::second ? m : k);
    EndoFn f = random_endofn(rng, arity, 3);

    double worst = 0.0;
    Point worst_x;
    for (std::size_t t = 0; t < points; ++t) {
      Point x = random_point(rng, n + m + k - 2);
      double gap = 0.0;
      switch (placement) {
        case ModulePlacement::first: gap = detail::assoc_gap(f, q, r, i, j, x); break;
        case ModulePlacement::second: gap = detail::assoc_gap(p, f, r, i, j, x); break;
        case ModulePlacement::third: gap = detail::assoc_gap(p, q, f, i, j, x); break;
      }
      if (t == 0 || gap > worst) {
        worst = gap;
        worst_x = x;
      }
    }
    report.observe(worst, [&] {
      return nlohmann::json{{"case", LawCase{Law::module_assoc, n, m, k, i, j}.to_json()},
                            {"placement", to_string(placement)},
                            {"window", to_string(window)},
                            {"p", to_json(p)},
                            {"q", to_json(q)},
                            {"r", to_json(r)},
                            {"module_element", to_sexpr(f)},
                            {"x", point_json(worst_x)}};
    });
  }
  return report;
}

/// (f + g) ∘_i^R q = f ∘_i^R q + g ∘_i^R q and p ∘_i^L (f + g) = p ∘_i^L f +
/// p ∘_i^L g, pointwise.
inline LawReport check_distributivity(std::size_t samples, std::uint64_t seed, double tol = kArithmeticTolerance) {
  LawReport report;
  report.law = "distributivity";
  report.seed = seed;
  report.tolerance = tol;
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng = sample_rng(seed, s);
    std::size_t n = uniform_index(rng, 1, 4), m = uniform_index(rng, 1, 4);
    std::size_t i = uniform_index(rng, 1, n);
    Dist p = random_rational_dist(rng, n), q = random_rational_dist(rng, m);
    EndoFn f = random_endofn(rng, n, 3), g = random_endofn(rng, n, 3);
    EndoFn u = random_endofn(rng, m, 3), v = random_endofn(rng, m, 3);
    Point x = random_point(rng, n + m - 1);
    double right_gap = std::fabs(evaluate(right_compose(f + g, i, q), x) -
                                 evaluate(right_compose(f, i, q) + right_compose(g, i, q), x));
    double left_gap = std::fabs(evaluate(left_compose(p, i, u + v), x) -
                                evaluate(left_compose(p, i, u) + left_compose(p, i, v), x));
    report.observe(std::max(right_gap, left_gap), [&] {
      return nlohmann::json{{"case", LawCase{Law::distributivity, n, m, 0, i, 0}.to_json()},
                            {"p", to_json(p)}, {"q", to_json(q)}, {"x", point_json(x)},
                            {"right_gap", right_gap}, {"left_gap", left_gap}};
    });
  }
  return report;
}

/// Commutative monoid laws of pointwise addition, identity zero(n).
inline LawReport check_abelian_monoid(std::size_t samples, std::uint64_t seed, double tol = kArithmeticTolerance) {
  LawReport report;
  report.law = "abelian-monoid";
  report.seed = seed;
  report.tolerance = tol;
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng = sample_rng(seed, s);
    std::size_t n = uniform_index(rng, 1, 5);
    EndoFn f = random_endofn(rng, n), g = random_endofn(rng, n), h = random_endofn(rng, n);
    Point x = random_point(rng, n);
    double fx = evaluate(f, x);
    double gap = std::fabs(evaluate(f + EndoFn::zero(n), x) - fx);
    gap = std::max(gap, std::fabs(evaluate(EndoFn::zero(n) + f, x) - fx));
    gap = std::max(gap, std::fabs(evaluate(f + g, x) - evaluate(g + f, x)));
    gap = std::max(gap, std::fabs(evaluate((f + g) + h, x) - evaluate(f + (g + h), x)));
    report.observe(gap, [&] { return nlohmann::json{{"arity", n}, {"x", point_json(x)}}; });
  }
  return report;
}

}  // namespace simplex_operad
