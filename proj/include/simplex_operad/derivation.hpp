#pragma once

#include "simplex_operad/dist.hpp"
#include "simplex_operad/endo.hpp"
#include "simplex_operad/law_report.hpp"
#include "simplex_operad/operad_laws.hpp"
#include "simplex_operad/random.hpp"
#include "simplex_operad/sexpr.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace simplex_operad {

/// A family d_n : Δ_n → End_R(n), one function per distribution.
///
/// Built-in kinds are the entropy derivation p ↦ const H(p), its real
/// multiples, and zero. A custom derivation is an s-expression template in
/// which `$p1` .. `$pn` stand for the entries of p and `$H` for its natural
/// entropy; nothing about a custom template is assumed, check_leibniz decides.
class Derivation {
 public:
  enum class Kind { entropy, scaled, zero, custom };

  static Derivation entropy(LogBase base = LogBase::e) {
    Derivation d(Kind::entropy);
    d.base_ = base;
    d.scale_ = 1.0 / log_of_base(base);
    return d;
  }
  static Derivation scaled(double c) {
    Derivation d(Kind::scaled);
    d.scale_ = c;
    return d;
  }
  static Derivation zero() {
    Derivation d(Kind::zero);
    d.scale_ = 0.0;
    return d;
  }
  /// Throws parse_error when the template does not parse at arity 1.
  static Derivation custom(std::string templ) {
    Derivation d(Kind::custom);
    d.template_ = std::move(templ);
    d(unit_dist());
    return d;
  }

  Kind kind() const { return kind_; }
  /// Multiple of the natural-log entropy for the built-in kinds.
  double scale() const { return scale_; }
  LogBase base() const { return base_; }
  const std::string& template_text() const { return template_; }

  std::string describe() const {
    switch (kind_) {
      case Kind::entropy: return "entropy";
      case Kind::scaled: return "scaled:" + format_double(scale_);
      case Kind::zero: return "zero";
      case Kind::custom: return "custom:" + template_;
    }
    return "?";
  }

  /// d(p), of arity arity(p).
  EndoFn operator()(const Dist& p) const {
    switch (kind_) {
      case Kind::entropy: return EndoFn::constant(p.arity(), simplex_operad::entropy(p, base_));
      case Kind::scaled: return EndoFn::constant(p.arity(), scale_ * simplex_operad::entropy(p, LogBase::e));
      case Kind::zero: return EndoFn::zero(p.arity());
      case Kind::custom: break;
    }
    PlaceholderFn env = [&p](std::string_view name) -> std::optional<Scalar> {
      if (name == "H") return Scalar(simplex_operad::entropy(p, LogBase::e));
      if (name.size() > 1 && name[0] == 'p') {
        std::size_t k = 0;
        for (char c : name.substr(1)) {
          if (c < '0' || c > '9') return std::nullopt;
          k = k * 10 + static_cast<std::size_t>(c - '0');
        }
        if (k >= 1 && k <= p.arity()) return p.prob(k);
      }
      return std::nullopt;
    };
    return parse_endofn(template_, p.arity(), env);
  }

 private:
  explicit Derivation(Kind k) : kind_(k) {}

  Kind kind_;
  double scale_ = 1.0;
  LogBase base_ = LogBase::e;
  std::string template_;
};

/// The derivation p ↦ (x ↦ H(p)).
inline Derivation entropy_derivation(LogBase base = LogBase::e) { return Derivation::entropy(base); }

inline EndoFn apply(const Derivation& d, const Dist& p) { return d(p); }

/// Raised when a family fails derivation validation or grid verification.
class verification_failure : public std::runtime_error {
 public:
  verification_failure(const std::string& what, double deviation, nlohmann::json witness)
      : std::runtime_error(what), deviation_(deviation), witness_(std::move(witness)) {}
  double deviation() const { return deviation_; }
  const nlohmann::json& witness() const { return witness_; }

 private:
  double deviation_;
  nlohmann::json witness_;
};

/// d(p ∘_i q)(x) = (d(p) ∘_i^R q)(x) + (p ∘_i^L d(q))(x) at random p, q of
/// arity <= 5, slots i and points x. Every fourth sample has p_i = 0.
inline LawReport check_leibniz(const Derivation& d, std::size_t samples, std::uint64_t seed,
                               double tol = kEntropyTolerance, double fault = 0.0) {
  LawReport report;
  report.law = "leibniz";
  report.seed = seed;
  report.tolerance = tol;
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng = sample_rng(seed, s);
    bool degenerate = s % 4 == 3;
    std::size_t n = uniform_index(rng, degenerate ? 2 : 1, 5), m = uniform_index(rng, 1, 5);
    std::size_t i = uniform_index(rng, 1, n);
    Dist p = degenerate ? random_dist_with_zero(rng, n, i) : random_rational_dist(rng, n);
    Dist q = random_rational_dist(rng, m);
    Point x = random_point(rng, n + m - 1);
    Dist composite = perturb_first_entry(compose_at(p, q, i), fault);
    double lhs = evaluate(d(composite), x);
    double rhs = evaluate(right_compose(d(p), i, q), x) + evaluate(left_compose(p, i, d(q)), x);
    report.observe(std::fabs(lhs - rhs), [&] {
      return nlohmann::json{{"case", LawCase{Law::leibniz, n, m, 0, i, 0}.to_json()},
                            {"p", to_json(p)}, {"q", to_json(q)}, {"x", point_json(x)},
                            {"lhs", lhs}, {"rhs", rhs}};
    });
  }
  return report;
}

/// d(p ∘ (q^1..q^n))(x) = d(p)(⟨q^1, x_1⟩, .., ⟨q^n, x_n⟩) + Σ p_i d(q^i)(x_i),
/// where x_i is the i-th block of x of length arity(q^i). Arities are <= 5;
/// sample 0 uses units in every slot.
inline LawReport check_chain_rule(const Derivation& d, std::size_t samples, std::uint64_t seed,
                                  double tol = kEntropyTolerance, double fault = 0.0) {
  LawReport report;
  report.law = "chain-rule";
  report.seed = seed;
  report.tolerance = tol;
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng = sample_rng(seed, s);
    std::size_t n = uniform_index(rng, 1, 5);
    Dist p = random_rational_dist(rng, n);
    std::vector<Dist> qs;
    std::size_t total = 0;
    for (std::size_t a = 0; a < n; ++a) {
      qs.push_back(s == 0 ? unit_dist() : random_rational_dist(rng, uniform_index(rng, 1, 5)));
      total += qs.back().arity();
    }
    Point x = random_point(rng, total);
    Dist composite = perturb_first_entry(compose_simul(p, qs), fault);
    double lhs = evaluate(d(composite), x);

    std::vector<double> averages;
    double weighted = 0.0;
    std::size_t offset = 1;
    for (std::size_t a = 0; a < n; ++a) {
      const Dist& q = qs[a];
      auto block = x.subtuple(offset, q.arity());
      averages.push_back(evaluate(represent(q), Point(std::vector<double>(block.begin(), block.end()))));
      weighted += p.probs()[a].to_double() * d(q)(block);
      offset += q.arity();
    }
    double rhs = d(p)(averages) + weighted;
    report.observe(std::fabs(lhs - rhs), [&] {
      nlohmann::json qj = nlohmann::json::array();
      for (const auto& q : qs) qj.push_back(to_json(q));
      return nlohmann::json{{"case", LawCase{Law::chain_rule, n, total, 0, 0, 0}.to_json()},
                            {"p", to_json(p)}, {"qs", qj}, {"x", point_json(x)},
                            {"lhs", lhs}, {"rhs", rhs}};
    });
  }
  return report;
}

/// d(1) must vanish for a derivation: the Leibniz rule at p = q = 1 reads
/// d(1) = 2 d(1). Sampled at random points of R^1.
inline LawReport check_unit_vanishes(const Derivation& d, std::size_t samples, std::uint64_t seed,
                                     double tol = kEntropyTolerance) {
  LawReport report;
  report.law = "unit-vanishes";
  report.seed = seed;
  report.tolerance = tol;
  EndoFn at_unit = d(unit_dist());
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng = sample_rng(seed, s);
    Point x = random_point(rng, 1);
    double v = evaluate(at_unit, x);
    report.observe(std::fabs(v), [&] { return nlohmann::json{{"x", point_json(x)}, {"value", v}}; });
  }
  return report;
}

/// F(p) = d(p)(0).
inline double restrict_at_zero(const Derivation& d, const Dist& p) {
  return evaluate(d(p), Point::zeros(p.arity()));
}

/// F(p ∘ (q^1..q^n)) = F(p) + Σ p_i F(q^i) for F = restrict_at_zero(d, ·).
inline LawReport check_faddeev_equation(const Derivation& d, std::size_t samples, std::uint64_t seed,
                                        double tol = kEntropyTolerance) {
  LawReport report;
  report.law = "faddeev";
  report.seed = seed;
  report.tolerance = tol;
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng = sample_rng(seed, s);
    std::size_t n = uniform_index(rng, 1, 5);
    Dist p = random_rational_dist(rng, n);
    std::vector<Dist> qs;
    double rhs = restrict_at_zero(d, p);
    for (std::size_t a = 0; a < n; ++a) {
      qs.push_back(random_rational_dist(rng, uniform_index(rng, 1, 5)));
      rhs += p.probs()[a].to_double() * restrict_at_zero(d, qs.back());
    }
    double lhs = restrict_at_zero(d, compose_simul(p, qs));
    report.observe(std::fabs(lhs - rhs), [&] {
      return nlohmann::json{{"p", to_json(p)}, {"lhs", lhs}, {"rhs", rhs}};
    });
  }
  return report;
}

/// Every exact point of Δ_n whose coordinates are multiples of
/// 1/resolution, vertices and faces included.
inline std::vector<Dist> simplex_grid(std::size_t n, std::size_t resolution) {
  if (n == 0 || resolution == 0) throw std::invalid_argument("simplex_grid: arity and resolution must be positive");
  std::vector<Dist> out;
  std::vector<long> parts(n, 0);
  const long total = static_cast<long>(resolution);
  // Enumerate compositions of `resolution` into n nonnegative parts in
  // lexicographic order.
  auto emit = [&] {
    std::vector<Scalar> probs;
    probs.reserve(n);
    for (long a : parts) probs.emplace_back(a, total);
    out.emplace_back(std::move(probs));
  };
  std::function<void(std::size_t, long)> rec = [&](std::size_t k, long left) {
    if (k + 1 == n) {
      parts[k] = left;
      emit();
      return;
    }
    for (long a = left; a >= 0; --a) {
      parts[k] = a;
      rec(k + 1, left - a);
    }
  };
  rec(0, total);
  return out;
}

struct ConstantEstimate {
  double c = 0.0;
  Dist reference = Dist::uniform(2);
  double max_deviation = 0.0;
  std::size_t grid_resolution = 0;
  std::size_t min_arity = 2, max_arity = 5;
  std::size_t grid_points = 0;

  nlohmann::json to_json() const {
    return {{"c", c},
            {"reference", simplex_operad::to_json(reference)},
            {"max_deviation", max_deviation},
            {"grid",
             {{"arities", {min_arity, max_arity}}, {"resolution", grid_resolution}, {"points", grid_points}}}};
  }
};

struct EstimateOptions {
  std::size_t grid_resolution = 8;
  double tol = kEntropyTolerance;
  std::size_t min_arity = 2, max_arity = 5;
  /// Leibniz validation run before estimating; 0 skips it.
  std::size_t leibniz_samples = 200;
  std::uint64_t seed = 0;
};

/// Recovers c with F = c H, where F = restrict_at_zero(d, ·): c comes from
/// the reference (1/2, 1/2), and |F(p) - c H(p)| is then bounded over the
/// simplex grids of every arity in [min_arity, max_arity]. Throws
/// verification_failure if d fails the Leibniz check or the bound exceeds tol.
inline ConstantEstimate estimate_constant(const Derivation& d, const EstimateOptions& opt = {}) {
  if (opt.leibniz_samples > 0) {
    LawReport leibniz = check_leibniz(d, opt.leibniz_samples, opt.seed, opt.tol);
    if (!leibniz.passed())
      throw verification_failure("not a derivation: Leibniz rule fails (worst residual " +
                                     format_double(leibniz.worst_residual) + ")",
                                 leibniz.worst_residual, leibniz.witness);
  }
  ConstantEstimate est;
  est.grid_resolution = opt.grid_resolution;
  est.min_arity = opt.min_arity;
  est.max_arity = opt.max_arity;
  est.c = restrict_at_zero(d, est.reference) / std::numbers::ln2;
  nlohmann::json worst_at;
  for (std::size_t n = opt.min_arity; n <= opt.max_arity; ++n)
    for (const Dist& p : simplex_grid(n, opt.grid_resolution)) {
      ++est.grid_points;
      double dev = std::fabs(restrict_at_zero(d, p) - est.c * entropy(p));
      if (dev > est.max_deviation || worst_at.is_null()) {
        est.max_deviation = std::max(est.max_deviation, dev);
        worst_at = to_json(p);
      }
    }
  if (!(est.max_deviation <= opt.tol))
    throw verification_failure("F differs from c*H by " + format_double(est.max_deviation) + " on the grid",
                               est.max_deviation, nlohmann::json{{"c", est.c}, {"p", worst_at}});
  return est;
}

/// eta(xy) = eta(x) y + x eta(y) for x, y in [0, 1]. The first samples pin
/// the endpoints.
inline LawReport check_eta_leibniz(std::size_t samples, std::uint64_t seed, double tol = kArithmeticTolerance) {
  LawReport report;
  report.law = "eta-leibniz";
  report.seed = seed;
  report.tolerance = tol;
  static constexpr double kCorners[][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {0, 0.5}, {1, 0.5}};
  for (std::size_t s = 0; s < samples; ++s) {
    double x, y;
    if (s < std::size(kCorners)) {
      x = kCorners[s][0];
      y = kCorners[s][1];
    } else {
      Rng rng = sample_rng(seed, s);
      x = uniform_real(rng, 0.0, 1.0);
      y = uniform_real(rng, 0.0, 1.0);
    }
    double gap = std::fabs(eta(x * y) - eta(x) * y - x * eta(y));
    report.observe(gap, [&] { return nlohmann::json{{"x", x}, {"y", y}, {"gap", gap}}; });
  }
  return report;
}

}  // namespace simplex_operad
