#pragma once

#include "simplex_operad/endo.hpp"
#include "simplex_operad/tree.hpp"

#include <sstream>
#include <string>

namespace simplex_operad {

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

class DotWriter {
 public:
  std::string node(const std::string& attrs) {
    std::string id = "n" + std::to_string(next_++);
    body_ << "  " << id << " [" << attrs << "];\n";
    return id;
  }
  void edge(const std::string& from, const std::string& to, const std::string& attrs = {}) {
    body_ << "  " << from << " -> " << to;
    if (!attrs.empty()) body_ << " [" << attrs << "]";
    body_ << ";\n";
  }
  std::string finish(const std::string& name, const std::string& defaults) const {
    return "digraph " + name + " {\n" + defaults + body_.str() + "}\n";
  }

 private:
  std::ostringstream body_;
  int next_ = 0;
};

inline std::string label(const std::string& s) { return "label=\"" + dot_escape(s) + "\""; }

inline std::string tree_dot(DotWriter& w, const TreeExpr& t, const Scalar& factor) {
  Scalar f = factor * t.paint();
  if (t.is_leaf()) return w.node("shape=box, " + label((f * t.weight()).str()));
  std::string id = w.node("shape=point, width=0.08");
  for (const auto& c : t.children()) {
    std::string child = tree_dot(w, c, f);
    if (c.paint() == Scalar(1))
      w.edge(id, child);
    else
      w.edge(id, child, label("x " + c.paint().str()));
  }
  return id;
}

inline std::string dist_label(const Dist& p) { return "(" + format_dist(p) + ")"; }

inline std::string plug(DotWriter& w, std::size_t coord) {
  return w.node("shape=circle, style=filled, fillcolor=black, fontcolor=white, width=0.25, " +
                label("x" + std::to_string(coord)));
}

inline std::string endo_dot(DotWriter& w, const EndoFn& f) {
  const auto& ops = f.operands();
  std::string i = std::to_string(f.index());
  switch (f.kind()) {
    case EndoFn::Kind::constant: return w.node(label("const " + format_double(f.constant_value())));
    case EndoFn::Kind::projection: return w.node(label("proj " + i));
    case EndoFn::Kind::represent: return w.node(label("repr " + dist_label(f.dist())));
    case EndoFn::Kind::sum: {
      std::string id = w.node("shape=circle, " + label("+"));
      w.edge(id, endo_dot(w, ops[0]));
      w.edge(id, endo_dot(w, ops[1]));
      return id;
    }
    case EndoFn::Kind::left_comp: {
      std::string id = w.node(label("lcomp @" + i + " " + dist_label(f.dist())));
      std::size_t m = ops[0].arity();
      for (std::size_t k = 1; k < f.index(); ++k) w.edge(id, plug(w, k), "style=dotted");
      w.edge(id, endo_dot(w, ops[0]), label("x" + i + ".." + "x" + std::to_string(f.index() + m - 1)));
      for (std::size_t k = f.index() + m; k <= f.arity(); ++k) w.edge(id, plug(w, k), "style=dotted");
      return id;
    }
    case EndoFn::Kind::right_comp: {
      std::string id = w.node(label("rcomp @" + i + " " + dist_label(f.dist())));
      w.edge(id, endo_dot(w, ops[0]));
      return id;
    }
    case EndoFn::Kind::endo_comp: {
      std::string id = w.node(label("ecomp @" + i));
      w.edge(id, endo_dot(w, ops[0]));
      w.edge(id, endo_dot(w, ops[1]), label("input " + i));
      return id;
    }
  }
  return {};
}

}  // namespace detail

/// Leaves are labelled with their flattened probabilities; edges into painted
/// subtrees carry the paint factor.
inline std::string to_dot(const TreeExpr& t) {
  detail::DotWriter w;
  detail::tree_dot(w, t, Scalar(1));
  return w.finish("tree", "  node [fontname=\"Helvetica\"];\n");
}

/// Expression tree of f. Coordinates discarded by a left composition are drawn
/// as filled plug nodes hanging off it.
inline std::string to_dot(const EndoFn& f) {
  detail::DotWriter w;
  detail::endo_dot(w, f);
  return w.finish("endofn", "  node [shape=box, fontname=\"Helvetica\"];\n");
}

}  // namespace simplex_operad
