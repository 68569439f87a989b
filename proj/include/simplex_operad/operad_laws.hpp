#pragma once

#include "simplex_operad/dist.hpp"
#include "simplex_operad/endo.hpp"
#include "simplex_operad/law_report.hpp"
#include "simplex_operad/random.hpp"
#include "simplex_operad/tree.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace simplex_operad {

/// Absolute tolerance for float checks that involve only products and sums.
inline constexpr double kArithmeticTolerance = 1e-12;
/// Absolute tolerance for checks that pass through a logarithm.
inline constexpr double kEntropyTolerance = 1e-9;

// Composition dispatch shared by the operad, module and endomorphism-operad
// checks: the same associativity template covers Δ × Δ × Δ, every placement
// of a module element, and End_R itself.

inline Dist circ(const Dist& p, const Dist& q, std::size_t i) { return compose_at(p, q, i); }
inline EndoFn circ(const Dist& p, const EndoFn& f, std::size_t i) { return left_compose(p, i, f); }
inline EndoFn circ(const EndoFn& g, const Dist& q, std::size_t i) { return right_compose(g, i, q); }
inline EndoFn circ(const EndoFn& f, const EndoFn& g, std::size_t i) { return endo_compose(f, i, g); }

inline std::size_t arity_of(const Dist& p) { return p.arity(); }
inline std::size_t arity_of(const EndoFn& f) { return f.arity(); }

/// (p ∘_j q) ∘_i r.
template <class P, class Q, class R>
auto assoc_lhs(const P& p, const Q& q, const R& r, std::size_t i, std::size_t j) {
  return circ(circ(p, q, j), r, i);
}

/// The rearrangement of (p ∘_j q) ∘_i r dictated by the window i falls in.
template <class P, class Q, class R>
auto assoc_rhs(const P& p, const Q& q, const R& r, std::size_t i, std::size_t j) {
  const std::size_t m = arity_of(q), k = arity_of(r);
  switch (classify_assoc(arity_of(p), m, i, j)) {
    case AssocWindow::left: return circ(circ(p, r, i), q, j + k - 1);
    case AssocWindow::nested: return circ(p, circ(q, r, i - j + 1), j);
    default: return circ(circ(p, r, i - m + 1), q, j);
  }
}

/// Largest entrywise |a - b|; infinite on arity mismatch.
inline double dist_residual(const Dist& a, const Dist& b) {
  if (a.arity() != b.arity()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t k = 0; k < a.arity(); ++k)
    worst = std::max(worst, abs_difference(a.probs()[k], b.probs()[k]));
  return worst;
}

/// Adds `delta` to the first entry without revalidating. Exact inputs stay
/// exact (the double delta converts without rounding).
inline Dist perturb_first_entry(const Dist& p, double delta) {
  if (delta == 0.0) return p;
  std::vector<Scalar> probs = p.probs();
  probs[0] = p.is_exact() ? probs[0] + Scalar(mpq_class(delta)) : Scalar(probs[0].to_double() + delta);
  return Dist::unchecked(std::move(probs));
}

struct AssocSweep {
  std::size_t triples_per_config = 100;
  std::uint64_t seed = 0;
  unsigned max_weight = kDefaultMaxWeight;
  double fault = 0.0;
};

/// Operad associativity over every arity triple (n, m, k) <= max_arity and
/// every composable (i, j). The first triple of each configuration is
/// uniform, the rest are random rationals. Exact mode compares rationals for
/// equality; float mode compares the double images within 1e-12.
inline LawReport check_operad_assoc(std::size_t max_arity, Mode mode, const AssocSweep& opt = {}) {
  LawReport report;
  report.law = "operad-assoc";
  report.seed = opt.seed;
  report.tolerance = mode == Mode::exact ? 0.0 : kArithmeticTolerance;
  std::uint64_t config = 0;
  for (std::size_t n = 1; n <= max_arity; ++n)
    for (std::size_t m = 1; m <= max_arity; ++m)
      for (std::size_t k = 1; k <= max_arity; ++k, ++config)
        for (std::size_t t = 0; t < opt.triples_per_config; ++t) {
          Rng rng = sample_rng(opt.seed, config * opt.triples_per_config + t);
          Dist p = t == 0 ? Dist::uniform(n) : random_rational_dist(rng, n, opt.max_weight);
          Dist q = t == 0 ? Dist::uniform(m) : random_rational_dist(rng, m, opt.max_weight);
          Dist r = t == 0 ? Dist::uniform(k) : random_rational_dist(rng, k, opt.max_weight);
          if (mode == Mode::floating) {
            p = p.to_floating();
            q = q.to_floating();
            r = r.to_floating();
          }
          for (std::size_t j = 1; j <= n; ++j)
            for (std::size_t i = 1; i <= n + m - 1; ++i) {
              Dist lhs = perturb_first_entry(assoc_lhs(p, q, r, i, j), opt.fault);
              Dist rhs = assoc_rhs(p, q, r, i, j);
              report.observe(dist_residual(lhs, rhs), [&] {
                LawCase c{to_law(classify_assoc(n, m, i, j)), n, m, k, i, j};
                return nlohmann::json{{"case", c.to_json()}, {"p", to_json(p)}, {"q", to_json(q)},
                                      {"r", to_json(r)}, {"lhs", to_json(lhs)}, {"rhs", to_json(rhs)}};
              });
            }
        }
  return report;
}

/// 1 ∘_1 p = p and p ∘_i 1 = p, exactly, for random p of every arity up to
/// max_arity (the uniform one included) and every slot.
inline LawReport check_operad_identity(std::size_t max_arity, std::size_t per_arity = 25,
                                       std::uint64_t seed = 0, double fault = 0.0) {
  LawReport report;
  report.law = "operad-identity";
  report.seed = seed;
  const Dist one = unit_dist();
  for (std::size_t n = 1; n <= max_arity; ++n)
    for (std::size_t t = 0; t < per_arity; ++t) {
      Rng rng = sample_rng(seed, n * per_arity + t);
      Dist p = t == 0 ? Dist::uniform(n) : random_rational_dist(rng, n);
      auto witness = [&](Law law, std::size_t i, const Dist& got) {
        return [&, law, i] {
          return nlohmann::json{{"case", LawCase{law, n, 1, 0, i, 0}.to_json()}, {"p", to_json(p)},
                                {"composite", to_json(got)}};
        };
      };
      Dist left = perturb_first_entry(compose_at(one, p, 1), fault);
      report.observe(dist_residual(left, p), witness(Law::identity_left, 1, left));
      for (std::size_t i = 1; i <= n; ++i) {
        Dist right = perturb_first_entry(compose_at(p, one, i), fault);
        report.observe(dist_residual(right, p), witness(Law::identity_right, i, right));
      }
    }
  return report;
}

inline nlohmann::json point_json(const Point& x) {
  return nlohmann::json(std::vector<double>(x.coords().begin(), x.coords().end()));
}

/// φ(p ∘_i q) = φ(p) ∘_i φ(q) and φ(1) = id, evaluated at random points of
/// [-10, 10]^N, for random p, q of arity <= 5.
inline LawReport check_representation(std::size_t samples, std::uint64_t seed,
                                      double tol = kArithmeticTolerance, double fault = 0.0) {
  LawReport report;
  report.law = "representation";
  report.seed = seed;
  report.tolerance = tol;
  const EndoFn phi_one = represent(unit_dist());
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng = sample_rng(seed, s);
    std::size_t n = uniform_index(rng, 1, 5), m = uniform_index(rng, 1, 5);
    std::size_t i = uniform_index(rng, 1, n);
    Dist p = random_rational_dist(rng, n), q = random_rational_dist(rng, m);
    Point x = random_point(rng, n + m - 1);
    Dist composite = perturb_first_entry(compose_at(p, q, i), fault);
    double lhs = evaluate(represent(composite), x);
    double rhs = evaluate(endo_compose(represent(p), i, represent(q)), x);
    double x1 = uniform_real(rng, -10.0, 10.0);
    double unit_residual = std::fabs(phi_one(std::span<const double>(&x1, 1)) - x1);
    report.observe(std::max(std::fabs(lhs - rhs), unit_residual), [&] {
      return nlohmann::json{{"case", LawCase{Law::representation, n, m, 0, i, 0}.to_json()},
                            {"p", to_json(p)}, {"q", to_json(q)}, {"x", point_json(x)},
                            {"lhs", lhs}, {"rhs", rhs}};
    });
  }
  return report;
}

namespace detail {

struct ModelledTree {
  TreeExpr tree;
  Dist dist;  // the same composite, built with compose_at / compose_simul only
};

// A corolla, or a corolla with another corolla grafted into one of its
// leaves, with at most `budget` leaves.
inline ModelledTree random_piece(Rng& rng, std::size_t budget) {
  std::size_t a = uniform_index(rng, 1, std::min<std::size_t>(budget, 4));
  Dist base = random_rational_dist(rng, a);
  ModelledTree piece{TreeExpr::corolla(base), base};
  if (budget > a && uniform_index(rng, 0, 2) == 0) {
    std::size_t b = uniform_index(rng, 1, std::min<std::size_t>(budget - a + 1, 3));
    Dist inner = random_rational_dist(rng, b);
    std::size_t slot = uniform_index(rng, 1, a);
    piece.tree = tree_graft(piece.tree, slot, TreeExpr::corolla(inner));
    piece.dist = compose_at(piece.dist, inner, slot);
  }
  return piece;
}

}  // namespace detail

/// Builds random trees symbolically with tree_graft and checks that they
/// flatten to exactly the distribution obtained from compose_at (even
/// samples: a random grafting sequence) or compose_simul (odd samples: one
/// operand grafted into every leaf, left to right).
inline LawReport oracle_equivalence(std::size_t samples, std::size_t max_total_arity, std::uint64_t seed,
                                    double fault = 0.0) {
  LawReport report;
  report.law = "oracle";
  report.seed = seed;
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng = sample_rng(seed, s);
    detail::ModelledTree model = detail::random_piece(rng, max_total_arity);
    if (s % 2 == 0) {
      std::size_t steps = uniform_index(rng, 0, 4);
      for (std::size_t t = 0; t < steps; ++t) {
        std::size_t leaves = model.dist.arity();
        if (leaves >= max_total_arity) break;
        detail::ModelledTree piece = detail::random_piece(rng, max_total_arity - leaves + 1);
        std::size_t slot = uniform_index(rng, 1, leaves);
        model.tree = tree_graft(model.tree, slot, piece.tree);
        model.dist = compose_at(model.dist, piece.dist, slot);
      }
    } else {
      Dist p = model.dist;
      std::size_t budget = max_total_arity;
      std::vector<Dist> qs;
      for (std::size_t i = 1; i <= p.arity(); ++i) {
        std::size_t room = budget - (p.arity() - i);  // leave one leaf per later slot
        std::size_t k = uniform_index(rng, 1, std::min<std::size_t>(room, 3));
        budget -= k;
        qs.push_back(random_rational_dist(rng, k));
      }
      std::size_t slot = 1;
      for (const auto& q : qs) {
        model.tree = tree_graft(model.tree, slot, TreeExpr::corolla(q));
        slot += q.arity();
      }
      model.dist = compose_simul(p, qs);
    }
    Dist expected = perturb_first_entry(model.dist, fault);
    Dist flat = tree_flatten(model.tree);
    report.observe(dist_residual(flat, expected), [&] {
      return nlohmann::json{{"tree", to_json(model.tree)}, {"flatten", to_json(flat)},
                            {"composite", to_json(expected)}};
    });
  }
  return report;
}

}  // namespace simplex_operad
