#pragma once

#include "simplex_operad/scalar.hpp"

#include <json.hpp>

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace simplex_operad {

/// Float-mode distributions must sum to 1 within this absolute slack.
inline constexpr double kFloatSumTolerance = 1e-9;

/// A point of the probability simplex with n vertices; the n-ary operations
/// of the simplex operad.
///
/// Entries are indexed from 1 on the public surface. A distribution is exact
/// when every entry is an exact rational; a single floating entry demotes the
/// whole tuple to floating. Construction validates and never renormalizes.
class Dist {
 public:
  explicit Dist(std::vector<Scalar> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw std::invalid_argument("Dist: arity must be at least 1");
    settle_mode();
    validate();
  }

  Dist(std::initializer_list<Scalar> probs) : Dist(std::vector<Scalar>(probs)) {}

  /// Skips validation. Only for harnesses that inject faults into composites.
  static Dist unchecked(std::vector<Scalar> probs) {
    Dist d;
    d.probs_ = std::move(probs);
    d.settle_mode();
    return d;
  }

  static Dist uniform(std::size_t n) {
    if (n == 0) throw std::invalid_argument("Dist: arity must be at least 1");
    return Dist(std::vector<Scalar>(n, Scalar(1, static_cast<long>(n))));
  }

  std::size_t arity() const { return probs_.size(); }
  Mode mode() const { return mode_; }
  bool is_exact() const { return mode_ == Mode::exact; }

  /// 1-based access.
  const Scalar& prob(std::size_t i) const {
    if (i < 1 || i > probs_.size())
      throw std::out_of_range("Dist: index " + std::to_string(i) + " outside 1.." +
                              std::to_string(probs_.size()));
    return probs_[i - 1];
  }

  const std::vector<Scalar>& probs() const { return probs_; }

  std::vector<double> to_doubles() const {
    std::vector<double> out;
    out.reserve(probs_.size());
    for (const auto& p : probs_) out.push_back(p.to_double());
    return out;
  }

  Dist to_floating() const {
    std::vector<Scalar> out;
    out.reserve(probs_.size());
    for (const auto& p : probs_) out.push_back(p.to_floating());
    return Dist::unchecked(std::move(out));
  }

  /// Entrywise value equality, independent of mode.
  friend bool operator==(const Dist& a, const Dist& b) { return a.probs_ == b.probs_; }

 private:
  Dist() = default;

  void settle_mode() {
    mode_ = Mode::exact;
    for (const auto& p : probs_)
      if (!p.is_exact()) mode_ = Mode::floating;
    if (mode_ == Mode::floating)
      for (auto& p : probs_)
        if (p.is_exact()) p = p.to_floating();
  }

  void validate() const {
    for (std::size_t k = 0; k < probs_.size(); ++k) {
      const auto& p = probs_[k];
      if (p.sign() < 0 || p > Scalar(1))
        throw std::invalid_argument("Dist: entry " + std::to_string(k + 1) + " = " + p.str() +
                                    " outside [0,1]");
    }
    if (mode_ == Mode::exact) {
      mpq_class sum = 0;
      for (const auto& p : probs_) sum += p.rational();
      if (sum != 1) throw std::invalid_argument("Dist: entries sum to " + sum.get_str() + ", not 1");
    } else {
      double sum = 0.0;
      for (const auto& p : probs_) sum += p.to_double();
      if (std::fabs(sum - 1.0) > kFloatSumTolerance)
        throw std::invalid_argument("Dist: entries sum to " + format_double(sum) + ", not 1");
    }
  }

  std::vector<Scalar> probs_;
  Mode mode_ = Mode::exact;
};

/// The operad unit: the only distribution on a one-point set.
inline Dist unit_dist() { return Dist({Scalar(1)}); }

/// Divides the weights by their sum. Never applied implicitly.
inline Dist normalize(const std::vector<Scalar>& weights) {
  if (weights.empty()) throw std::invalid_argument("normalize: no weights");
  Scalar total;
  for (const auto& w : weights) {
    if (w.sign() < 0) throw std::invalid_argument("normalize: negative weight " + w.str());
    total += w;
  }
  if (total.sign() == 0) throw std::invalid_argument("normalize: weights sum to zero");
  std::vector<Scalar> out;
  out.reserve(weights.size());
  for (const auto& w : weights) out.push_back(w / total);
  return Dist(std::move(out));
}

/// Partial composition p ∘_i q: slot i of p is replaced by q scaled by p_i.
inline Dist compose_at(const Dist& p, const Dist& q, std::size_t i) {
  if (i < 1 || i > p.arity())
    throw std::out_of_range("compose_at: slot " + std::to_string(i) + " outside 1.." +
                            std::to_string(p.arity()));
  const auto& ps = p.probs();
  std::vector<Scalar> out;
  out.reserve(p.arity() + q.arity() - 1);
  for (std::size_t k = 0; k + 1 < i; ++k) out.push_back(ps[k]);
  const Scalar& pi = ps[i - 1];
  for (const auto& qk : q.probs()) out.push_back(pi * qk);
  for (std::size_t k = i; k < ps.size(); ++k) out.push_back(ps[k]);
  // Products of valid entries are valid; float rounding stays far below the
  // sum tolerance.
  return Dist::unchecked(std::move(out));
}

/// Simultaneous composition p ∘ (q^1, ..., q^n), folded from the last slot to
/// the first so that earlier slot indices stay put.
inline Dist compose_simul(const Dist& p, std::span<const Dist> qs) {
  if (qs.size() != p.arity())
    throw std::invalid_argument("compose_simul: " + std::to_string(qs.size()) + " operands for arity " +
                                std::to_string(p.arity()));
  Dist acc = p;
  for (std::size_t i = p.arity(); i >= 1; --i) acc = compose_at(acc, qs[i - 1], i);
  return acc;
}

inline Dist compose_simul(const Dist& p, const std::vector<Dist>& qs) {
  return compose_simul(p, std::span<const Dist>(qs));
}

enum class LogBase { e, two, ten };

inline double log_of_base(LogBase b) {
  switch (b) {
    case LogBase::two: return std::numbers::ln2;
    case LogBase::ten: return std::numbers::ln10;
    default: return 1.0;
  }
}

inline LogBase parse_log_base(std::string_view s) {
  if (s == "e") return LogBase::e;
  if (s == "2") return LogBase::two;
  if (s == "10") return LogBase::ten;
  throw std::invalid_argument("unknown log base '" + std::string(s) + "' (expected e, 2 or 10)");
}

/// x ↦ −x log x on [0,1], with 0 at 0.
inline double eta(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("eta: argument outside [0,1]");
  if (x == 0.0) return 0.0;
  return -x * std::log(x) + 0.0;
}

/// Shannon entropy −Σ p_i log p_i in the requested base.
inline double entropy(const Dist& p, LogBase base = LogBase::e) {
  double h = 0.0;
  for (const auto& pi : p.probs()) {
    double x = pi.to_double();
    if (x > 0.0) h += -x * std::log(x);
  }
  return h / log_of_base(base);
}

// Text and JSON encodings.

/// Comma-separated entries, e.g. "1/6,1/6,1/12,1/12,1/6,1/6,1/6".
inline std::string format_dist(const Dist& p) {
  std::string out;
  for (const auto& s : p.probs()) {
    if (!out.empty()) out += ',';
    out += s.str();
  }
  return out;
}

inline Dist parse_dist(std::string_view text) {
  std::vector<Scalar> probs;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    probs.push_back(Scalar::parse(text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Dist(std::move(probs));
}

inline nlohmann::json scalar_to_json(const Scalar& s) {
  if (s.is_exact()) return s.str();
  return s.to_double();
}

inline Scalar scalar_from_json(const nlohmann::json& j) {
  if (j.is_string()) return Scalar::parse(j.get<std::string>());
  if (j.is_number()) return Scalar(j.get<double>());
  throw std::invalid_argument("expected a number or a fraction string, got " + j.dump());
}

/// {"probs": ["1/2", "1/2"]} for exact, {"probs": [0.5, 0.5]} for float.
inline nlohmann::json to_json(const Dist& p) {
  nlohmann::json probs = nlohmann::json::array();
  for (const auto& s : p.probs()) probs.push_back(scalar_to_json(s));
  return {{"probs", probs}};
}

inline Dist dist_from_json(const nlohmann::json& j) {
  const nlohmann::json* arr = &j;
  if (j.is_object()) {
    if (!j.contains("probs")) throw std::invalid_argument("distribution JSON lacks \"probs\"");
    arr = &j.at("probs");
  }
  if (!arr->is_array()) throw std::invalid_argument("distribution probs must be an array");
  std::vector<Scalar> probs;
  for (const auto& e : *arr) probs.push_back(scalar_from_json(e));
  return Dist(std::move(probs));
}

}  // namespace simplex_operad
