#pragma once

#include <json.hpp>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace simplex_operad {

enum class Law {
  assoc_left,
  assoc_nested,
  assoc_right,
  identity_left,
  identity_right,
  representation,
  module_assoc,
  distributivity,
  leibniz,
  chain_rule,
};

inline const char* to_string(Law law) {
  switch (law) {
    case Law::assoc_left: return "assoc-left";
    case Law::assoc_nested: return "assoc-nested";
    case Law::assoc_right: return "assoc-right";
    case Law::identity_left: return "identity-left";
    case Law::identity_right: return "identity-right";
    case Law::representation: return "representation";
    case Law::module_assoc: return "module-assoc";
    case Law::distributivity: return "distributivity";
    case Law::leibniz: return "leibniz";
    case Law::chain_rule: return "chain-rule";
  }
  return "?";
}

/// Which side of (p ∘_j q) ∘_i r the slot i lands on, for p of arity n and q
/// of arity m.
enum class AssocWindow { left, nested, right };

inline Law to_law(AssocWindow w) {
  switch (w) {
    case AssocWindow::left: return Law::assoc_left;
    case AssocWindow::nested: return Law::assoc_nested;
    default: return Law::assoc_right;
  }
}

/// Requires 1 <= j <= n and 1 <= i <= n + m - 1.
inline AssocWindow classify_assoc(std::size_t n, std::size_t m, std::size_t i, std::size_t j) {
  if (j < 1 || j > n || i < 1 || i > n + m - 1)
    throw std::out_of_range("classify_assoc: (i,j) outside the composable range");
  if (i + 1 <= j) return AssocWindow::left;
  if (i <= j + m - 1) return AssocWindow::nested;
  return AssocWindow::right;
}

/// One instance of a law: arities (n, m, k) of the three operands and the
/// slots (i, j) of (p ∘_j q) ∘_i r. Unused fields stay 0.
struct LawCase {
  Law law = Law::assoc_left;
  std::size_t n = 0, m = 0, k = 0;
  std::size_t i = 0, j = 0;

  nlohmann::json to_json() const {
    return {{"law", to_string(law)}, {"arities", {n, m, k}}, {"i", i}, {"j", j}};
  }
};

/// Outcome of a sweep. A sample violates the law when its residual exceeds
/// `tolerance`; `witness` describes the sample with the largest residual, or
/// is null when every residual was 0.
struct LawReport {
  std::string law;
  std::size_t samples = 0;
  std::size_t violations = 0;
  double worst_residual = 0.0;
  nlohmann::json witness;
  std::uint64_t seed = 0;
  double tolerance = 0.0;

  bool passed() const { return violations == 0; }

  template <class MakeWitness>
  void observe(double residual, MakeWitness&& make_witness) {
    ++samples;
    if (std::isnan(residual)) residual = std::numeric_limits<double>::infinity();
    if (residual > tolerance) ++violations;
    if (residual > worst_residual) {
      worst_residual = residual;
      witness = make_witness();
    }
  }

  /// Associative reduction of two partial sweeps of the same law.
  void merge(const LawReport& other) {
    samples += other.samples;
    violations += other.violations;
    if (other.worst_residual > worst_residual) {
      worst_residual = other.worst_residual;
      witness = other.witness;
    }
  }

  nlohmann::json to_json() const {
    return {{"law", law},           {"samples", samples}, {"violations", violations},
            {"worst_residual", worst_residual}, {"witness", witness},
            {"seed", seed},         {"tolerance", tolerance}};
  }
};

}  // namespace simplex_operad
