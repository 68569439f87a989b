#pragma once

#include "simplex_operad/dist.hpp"

#include <cstddef>
#include <initializer_list>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace simplex_operad {

/// A point of R^N with 1-based coordinates.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {}
  Point(std::initializer_list<double> coords) : coords_(coords) {}

  static Point zeros(std::size_t n) { return Point(std::vector<double>(n, 0.0)); }

  std::size_t size() const { return coords_.size(); }
  double coord(std::size_t i) const {
    if (i < 1 || i > coords_.size()) throw std::out_of_range("Point: coordinate " + std::to_string(i));
    return coords_[i - 1];
  }
  std::span<const double> coords() const { return coords_; }
  std::vector<double>& mutable_coords() { return coords_; }

  /// x_{i,k} = (x_i, ..., x_{i+k-1}).
  std::span<const double> subtuple(std::size_t i, std::size_t k) const {
    if (i < 1 || i + k - 1 > coords_.size())
      throw std::out_of_range("Point: subtuple (" + std::to_string(i) + "," + std::to_string(k) +
                              ") of a " + std::to_string(coords_.size()) + "-point");
    return std::span<const double>(coords_).subspan(i - 1, k);
  }

 private:
  std::vector<double> coords_;
};

/// An element of End_R(n): a real function of n real arguments, kept as a
/// closed expression tree so composites stay printable and comparable.
///
/// Node kinds and their arities:
///   constant(n, c)            n
///   projection(n, k)          n
///   represent(p)              arity(p)       x ↦ ⟨p, x⟩
///   add(f, g)                 arity(f) = arity(g)
///   left_compose(p, i, f)     n + m - 1      x ↦ p_i f(x_{i,m})
///   right_compose(g, i, q)    n + m - 1      x ↦ g(.., ⟨q, x_{i,m}⟩, ..)
///   endo_compose(f, i, g)     n + m - 1      x ↦ f(.., g(x_{i,m}), ..)
///
/// Values are immutable and share subtrees; evaluation is reentrant.
class EndoFn {
 public:
  enum class Kind { constant, projection, represent, sum, left_comp, right_comp, endo_comp };

  static EndoFn constant(std::size_t arity, double c);
  static EndoFn projection(std::size_t arity, std::size_t k);
  static EndoFn zero(std::size_t arity) { return constant(arity, 0.0); }

  std::size_t arity() const;
  Kind kind() const;

  double constant_value() const;
  /// Projection coordinate, or composition slot.
  std::size_t index() const;
  /// Distribution of represent, left_comp and right_comp nodes.
  const Dist& dist() const;
  /// Children: one for left/right composition, two for sum and endo_comp.
  const std::vector<EndoFn>& operands() const;

  double operator()(std::span<const double> x) const {
    if (x.size() != arity())
      throw std::invalid_argument("EndoFn: evaluated at a " + std::to_string(x.size()) +
                                  "-point, arity is " + std::to_string(arity()));
    return eval(x);
  }

  friend EndoFn represent(const Dist& p);
  friend EndoFn add(const EndoFn& f, const EndoFn& g);
  friend EndoFn left_compose(const Dist& p, std::size_t i, const EndoFn& f);
  friend EndoFn right_compose(const EndoFn& g, std::size_t i, const Dist& q);
  friend EndoFn endo_compose(const EndoFn& f, std::size_t i, const EndoFn& g);

 private:
  struct Node;
  explicit EndoFn(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  double eval(std::span<const double> x) const;

  std::shared_ptr<const Node> node_;
};

struct EndoFn::Node {
  Kind kind;
  std::size_t arity = 0;
  double c = 0.0;
  std::size_t index = 0;
  std::vector<Dist> dist;        // zero or one entry
  std::vector<double> weights;   // dist entries as doubles
  std::vector<EndoFn> operands;
};

inline EndoFn EndoFn::constant(std::size_t arity, double c) {
  if (arity == 0) throw std::invalid_argument("EndoFn: arity must be at least 1");
  auto n = std::make_shared<Node>();
  n->kind = Kind::constant;
  n->arity = arity;
  n->c = c;
  return EndoFn(std::move(n));
}

inline EndoFn EndoFn::projection(std::size_t arity, std::size_t k) {
  if (k < 1 || k > arity)
    throw std::out_of_range("EndoFn: projection " + std::to_string(k) + " outside 1.." + std::to_string(arity));
  auto n = std::make_shared<Node>();
  n->kind = Kind::projection;
  n->arity = arity;
  n->index = k;
  return EndoFn(std::move(n));
}

inline std::size_t EndoFn::arity() const { return node_->arity; }
inline EndoFn::Kind EndoFn::kind() const { return node_->kind; }
inline double EndoFn::constant_value() const { return node_->c; }
inline std::size_t EndoFn::index() const { return node_->index; }
inline const std::vector<EndoFn>& EndoFn::operands() const { return node_->operands; }
inline const Dist& EndoFn::dist() const {
  if (node_->dist.empty()) throw std::logic_error("EndoFn: node carries no distribution");
  return node_->dist.front();
}

inline double EndoFn::eval(std::span<const double> x) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::constant:
      return n.c;
    case Kind::projection:
      return x[n.index - 1];
    case Kind::represent: {
      double s = 0.0;
      for (std::size_t k = 0; k < n.weights.size(); ++k) s += n.weights[k] * x[k];
      return s;
    }
    case Kind::sum:
      return n.operands[0].eval(x) + n.operands[1].eval(x);
    case Kind::left_comp: {
      const EndoFn& f = n.operands[0];
      return n.weights[n.index - 1] * f.eval(x.subspan(n.index - 1, f.arity()));
    }
    case Kind::right_comp: {
      const EndoFn& g = n.operands[0];
      std::size_t i = n.index, m = n.weights.size();
      std::vector<double> y(x.begin(), x.begin() + (i - 1));
      double inner = 0.0;
      for (std::size_t k = 0; k < m; ++k) inner += n.weights[k] * x[i - 1 + k];
      y.push_back(inner);
      y.insert(y.end(), x.begin() + (i - 1 + m), x.end());
      return g.eval(y);
    }
    case Kind::endo_comp: {
      const EndoFn& f = n.operands[0];
      const EndoFn& g = n.operands[1];
      std::size_t i = n.index, m = g.arity();
      std::vector<double> y(x.begin(), x.begin() + (i - 1));
      y.push_back(g.eval(x.subspan(i - 1, m)));
      y.insert(y.end(), x.begin() + (i - 1 + m), x.end());
      return f.eval(y);
    }
  }
  throw std::logic_error("EndoFn: unknown node kind");
}

inline double evaluate(const EndoFn& f, const Point& x) { return f(x.coords()); }

/// x ↦ ⟨p, x⟩.
inline EndoFn represent(const Dist& p) {
  auto n = std::make_shared<EndoFn::Node>();
  n->kind = EndoFn::Kind::represent;
  n->arity = p.arity();
  n->dist.push_back(p);
  n->weights = p.to_doubles();
  return EndoFn(std::move(n));
}

/// Pointwise sum; the abelian monoid on each End_R(n), identity zero(n).
inline EndoFn add(const EndoFn& f, const EndoFn& g) {
  if (f.arity() != g.arity())
    throw std::invalid_argument("add: arity mismatch " + std::to_string(f.arity()) + " vs " +
                                std::to_string(g.arity()));
  auto n = std::make_shared<EndoFn::Node>();
  n->kind = EndoFn::Kind::sum;
  n->arity = f.arity();
  n->operands = {f, g};
  return EndoFn(std::move(n));
}

inline EndoFn operator+(const EndoFn& f, const EndoFn& g) { return add(f, g); }

namespace detail {
inline void check_slot(const char* op, std::size_t i, std::size_t n) {
  if (i < 1 || i > n)
    throw std::out_of_range(std::string(op) + ": slot " + std::to_string(i) + " outside 1.." +
                            std::to_string(n));
}
}  // namespace detail

/// p ∘_i^L f: scales f evaluated on the window x_{i,m} by p_i. The other
/// n - 1 coordinates are plugged.
inline EndoFn left_compose(const Dist& p, std::size_t i, const EndoFn& f) {
  detail::check_slot("left_compose", i, p.arity());
  auto n = std::make_shared<EndoFn::Node>();
  n->kind = EndoFn::Kind::left_comp;
  n->arity = p.arity() + f.arity() - 1;
  n->index = i;
  n->dist.push_back(p);
  n->weights = p.to_doubles();
  n->operands = {f};
  return EndoFn(std::move(n));
}

/// g ∘_i^R q: feeds ⟨q, x_{i,m}⟩ into input i of g.
inline EndoFn right_compose(const EndoFn& g, std::size_t i, const Dist& q) {
  detail::check_slot("right_compose", i, g.arity());
  auto n = std::make_shared<EndoFn::Node>();
  n->kind = EndoFn::Kind::right_comp;
  n->arity = g.arity() + q.arity() - 1;
  n->index = i;
  n->dist.push_back(q);
  n->weights = q.to_doubles();
  n->operands = {g};
  return EndoFn(std::move(n));
}

/// f ∘_i g in the endomorphism operad: the output of g becomes input i of f.
inline EndoFn endo_compose(const EndoFn& f, std::size_t i, const EndoFn& g) {
  detail::check_slot("endo_compose", i, f.arity());
  auto n = std::make_shared<EndoFn::Node>();
  n->kind = EndoFn::Kind::endo_comp;
  n->arity = f.arity() + g.arity() - 1;
  n->index = i;
  n->operands = {f, g};
  return EndoFn(std::move(n));
}

/// The identity of End_R(1), which is represent(unit_dist()) as a function.
inline EndoFn identity_fn() { return EndoFn::projection(1, 1); }

}  // namespace simplex_operad
