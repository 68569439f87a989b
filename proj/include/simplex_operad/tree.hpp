#pragma once

#include "simplex_operad/dist.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace simplex_operad {

/// Planar rooted tree with weighted leaves, used as a symbolic model of
/// composites in the simplex operad.
///
/// Every subtree carries a paint factor. Flattening reads the leaves left to
/// right and multiplies each leaf weight by the paint factors on its path to
/// the root (its own included). Grafting a tree into a leaf paints the
/// grafted tree with that leaf's weight, which is how p_i scales q in p ∘_i q.
class TreeExpr {
 public:
  static TreeExpr leaf(Scalar weight, Scalar paint = Scalar(1)) {
    TreeExpr t;
    t.weight_ = std::move(weight);
    t.paint_ = std::move(paint);
    return t;
  }

  static TreeExpr corolla(std::vector<TreeExpr> children, Scalar paint = Scalar(1)) {
    if (children.empty()) throw std::invalid_argument("TreeExpr: corolla without children");
    TreeExpr t;
    t.children_ = std::move(children);
    t.paint_ = std::move(paint);
    return t;
  }

  /// One internal node whose leaves carry p's entries.
  static TreeExpr corolla(const Dist& p) {
    std::vector<TreeExpr> leaves;
    leaves.reserve(p.arity());
    for (const auto& w : p.probs()) leaves.push_back(leaf(w));
    return corolla(std::move(leaves));
  }

  bool is_leaf() const { return weight_.has_value(); }
  const Scalar& weight() const { return *weight_; }
  const Scalar& paint() const { return paint_; }
  const std::vector<TreeExpr>& children() const { return children_; }

  TreeExpr with_paint(Scalar paint) const {
    TreeExpr t = *this;
    t.paint_ = std::move(paint);
    return t;
  }

  std::size_t leaf_count() const {
    if (is_leaf()) return 1;
    std::size_t n = 0;
    for (const auto& c : children_) n += c.leaf_count();
    return n;
  }

  std::size_t depth() const {
    if (is_leaf()) return 0;
    std::size_t d = 0;
    for (const auto& c : children_) d = std::max(d, c.depth());
    return d + 1;
  }

 private:
  TreeExpr() = default;

  std::optional<Scalar> weight_;
  std::vector<TreeExpr> children_;
  Scalar paint_{1};
};

namespace detail {

inline void flatten_into(const TreeExpr& t, const Scalar& factor, std::vector<Scalar>& out) {
  Scalar f = factor * t.paint();
  if (t.is_leaf()) {
    out.push_back(f * t.weight());
    return;
  }
  if (t.children().empty()) throw std::invalid_argument("tree_flatten: empty corolla");
  for (const auto& c : t.children()) flatten_into(c, f, out);
}

// Replaces leaf number `slot` (0-based, counted within t) and returns true once
// done; `slot` is decremented by the leaves passed over.
inline bool graft_into(TreeExpr& t, std::size_t& slot, const TreeExpr& s,
                       const std::optional<Scalar>& paint) {
  if (t.is_leaf()) {
    if (slot != 0) {
      --slot;
      return false;
    }
    Scalar factor = paint ? *paint : t.paint() * t.weight();
    t = s.with_paint(s.paint() * factor);
    return true;
  }
  std::vector<TreeExpr> kids = t.children();
  for (auto& c : kids) {
    if (graft_into(c, slot, s, paint)) {
      t = TreeExpr::corolla(std::move(kids), t.paint());
      return true;
    }
  }
  return false;
}

inline TreeExpr graft_at(const TreeExpr& t, std::size_t i, const TreeExpr& s,
                         const std::optional<Scalar>& paint) {
  std::size_t leaves = t.leaf_count();
  if (i < 1 || i > leaves)
    throw std::out_of_range("tree_graft: slot " + std::to_string(i) + " outside 1.." +
                            std::to_string(leaves));
  TreeExpr out = t;
  std::size_t slot = i - 1;
  graft_into(out, slot, s, paint);
  return out;
}

}  // namespace detail

/// Left-to-right leaf values, each scaled by the paint on its root path.
inline Dist tree_flatten(const TreeExpr& t) {
  std::vector<Scalar> out;
  detail::flatten_into(t, Scalar(1), out);
  if (out.empty()) throw std::invalid_argument("tree_flatten: empty tree");
  return Dist(std::move(out));
}

/// Replaces the i-th leaf (1-based, left to right) of t by s, painting s with
/// that leaf's weight. tree_flatten of the result equals
/// compose_at(tree_flatten(t), tree_flatten(s), i).
inline TreeExpr tree_graft(const TreeExpr& t, std::size_t i, const TreeExpr& s) {
  return detail::graft_at(t, i, s, std::nullopt);
}

/// Same, with an explicit paint factor in place of the leaf's weight.
inline TreeExpr tree_graft(const TreeExpr& t, std::size_t i, const TreeExpr& s, const Scalar& paint) {
  return detail::graft_at(t, i, s, paint);
}

// JSON: a corolla is ["node", child, ...], optionally ["node", {"paint": w},
// child, ...]; a leaf is its weight, or {"weight": w, "paint": c}.

inline nlohmann::json to_json(const TreeExpr& t) {
  bool painted = !(t.paint() == Scalar(1));
  if (t.is_leaf()) {
    if (!painted) return scalar_to_json(t.weight());
    return {{"weight", scalar_to_json(t.weight())}, {"paint", scalar_to_json(t.paint())}};
  }
  nlohmann::json j = nlohmann::json::array({"node"});
  if (painted) j.push_back({{"paint", scalar_to_json(t.paint())}});
  for (const auto& c : t.children()) j.push_back(to_json(c));
  return j;
}

inline TreeExpr tree_from_json(const nlohmann::json& j) {
  if (j.is_array()) {
    if (j.empty() || !j[0].is_string() || j[0].get<std::string>() != "node")
      throw std::invalid_argument("tree JSON: a corolla must start with \"node\"");
    std::size_t first = 1;
    Scalar paint(1);
    if (j.size() > 1 && j[1].is_object()) {
      if (!j[1].contains("paint")) throw std::invalid_argument("tree JSON: corolla options lack \"paint\"");
      paint = scalar_from_json(j[1].at("paint"));
      first = 2;
    }
    if (first >= j.size()) throw std::invalid_argument("tree JSON: corolla without children");
    std::vector<TreeExpr> kids;
    for (std::size_t k = first; k < j.size(); ++k) kids.push_back(tree_from_json(j[k]));
    return TreeExpr::corolla(std::move(kids), paint);
  }
  if (j.is_object()) {
    if (!j.contains("weight")) throw std::invalid_argument("tree JSON: leaf object lacks \"weight\"");
    Scalar paint = j.contains("paint") ? scalar_from_json(j.at("paint")) : Scalar(1);
    return TreeExpr::leaf(scalar_from_json(j.at("weight")), paint);
  }
  return TreeExpr::leaf(scalar_from_json(j));
}

}  // namespace simplex_operad
