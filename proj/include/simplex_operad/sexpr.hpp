#pragma once

#include "simplex_operad/endo.hpp"

#include <cctype>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace simplex_operad {

/// Raised for any malformed s-expression or template.
class parse_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// S-expression form of EndoFn:
//
//   (const c) | (proj k) | (repr p1 ... pn) | (sum E E)
//   (lcomp p1 ... pn @i E) | (rcomp E @i q1 ... qm) | (ecomp E @i E)
//
// const and proj do not determine their own arity. The parser takes it from
// the enclosing form (or from the caller); where nothing pins it down the
// writer appends an annotation, as in (proj 2 :3).

/// Resolves `$name` tokens; returns nullopt for unknown names.
using PlaceholderFn = std::function<std::optional<Scalar>(std::string_view)>;

namespace detail {

inline bool intrinsic_arity_known(const EndoFn& f) {
  switch (f.kind()) {
    case EndoFn::Kind::constant:
    case EndoFn::Kind::projection: return false;
    case EndoFn::Kind::represent: return true;
    case EndoFn::Kind::sum:
      return intrinsic_arity_known(f.operands()[0]) || intrinsic_arity_known(f.operands()[1]);
    case EndoFn::Kind::left_comp:
    case EndoFn::Kind::right_comp: return intrinsic_arity_known(f.operands()[0]);
    case EndoFn::Kind::endo_comp:
      return intrinsic_arity_known(f.operands()[0]) && intrinsic_arity_known(f.operands()[1]);
  }
  return false;
}

inline std::string entries(const Dist& p) {
  std::string s;
  for (const auto& e : p.probs()) {
    if (!s.empty()) s += ' ';
    s += e.str();
  }
  return s;
}

inline std::string write(const EndoFn& f, bool context) {
  bool known = context || intrinsic_arity_known(f);
  auto note = [&] { return known ? std::string() : " :" + std::to_string(f.arity()); };
  const auto& ops = f.operands();
  switch (f.kind()) {
    case EndoFn::Kind::constant: return "(const " + format_double(f.constant_value()) + note() + ")";
    case EndoFn::Kind::projection: return "(proj " + std::to_string(f.index()) + note() + ")";
    case EndoFn::Kind::represent: return "(repr " + entries(f.dist()) + ")";
    case EndoFn::Kind::sum:
      if (known) return "(sum " + write(ops[0], true) + " " + write(ops[1], true) + ")";
      return "(sum " + write(ops[0], false) + " " + write(ops[1], true) + ")";
    case EndoFn::Kind::left_comp:
      return "(lcomp " + entries(f.dist()) + " @" + std::to_string(f.index()) + " " + write(ops[0], known) + ")";
    case EndoFn::Kind::right_comp:
      return "(rcomp " + write(ops[0], known) + " @" + std::to_string(f.index()) + " " + entries(f.dist()) + ")";
    case EndoFn::Kind::endo_comp: {
      bool inner_known = known && (intrinsic_arity_known(ops[0]) || intrinsic_arity_known(ops[1]));
      return "(ecomp " + write(ops[0], inner_known) + " @" + std::to_string(f.index()) + " " +
             write(ops[1], known) + ")";
    }
  }
  throw std::logic_error("to_sexpr: unknown node kind");
}

struct RawExpr {
  std::string head;
  std::vector<Scalar> numbers;  // const value, or distribution entries
  std::size_t k = 0;            // proj coordinate or composition slot
  std::optional<std::size_t> annotated;
  std::vector<RawExpr> children;
};

class SexprReader {
 public:
  SexprReader(std::string_view text, const PlaceholderFn* env) : env_(env) { tokenize(text); }

  RawExpr read_all() {
    RawExpr e = read();
    if (pos_ != tokens_.size()) fail("trailing input after expression");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw parse_error("s-expression: " + msg); }

  void tokenize(std::string_view s) {
    std::size_t k = 0;
    while (k < s.size()) {
      char c = s[k];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++k;
      } else if (c == '(' || c == ')') {
        tokens_.emplace_back(1, c);
        ++k;
      } else {
        std::size_t start = k;
        while (k < s.size() && !std::isspace(static_cast<unsigned char>(s[k])) && s[k] != '(' && s[k] != ')') ++k;
        tokens_.emplace_back(s.substr(start, k - start));
      }
    }
  }

  bool at_end() const { return pos_ >= tokens_.size(); }
  const std::string& peek() const {
    if (at_end()) fail("unexpected end of input");
    return tokens_[pos_];
  }
  std::string next() {
    std::string t = peek();
    ++pos_;
    return t;
  }
  void expect(const char* tok) {
    if (next() != tok) fail(std::string("expected '") + tok + "'");
  }

  static bool is_word(const std::string& t) { return t != "(" && t != ")"; }
  static bool is_slot(const std::string& t) { return t.size() > 1 && t[0] == '@'; }
  static bool is_note(const std::string& t) { return t.size() > 1 && t[0] == ':'; }

  std::size_t count(const std::string& t, std::size_t skip) const {
    std::string_view digits = std::string_view(t).substr(skip);
    std::size_t v = 0;
    if (digits.empty()) fail("missing integer in '" + t + "'");
    for (char c : digits) {
      if (c < '0' || c > '9') fail("expected a positive integer, got '" + t + "'");
      v = v * 10 + static_cast<std::size_t>(c - '0');
    }
    if (v == 0) fail("indices and arities start at 1, got '" + t + "'");
    return v;
  }

  Scalar number(const std::string& t) const {
    if (!t.empty() && t[0] == '$') {
      if (env_ == nullptr || !*env_) fail("placeholder '" + t + "' outside a template");
      auto v = (*env_)(std::string_view(t).substr(1));
      if (!v) fail("unknown placeholder '" + t + "'");
      return *v;
    }
    try {
      return Scalar::parse(t);
    } catch (const std::invalid_argument&) {
      fail("malformed number '" + t + "'");
    }
  }

  std::vector<Scalar> numbers_until_close_or_slot() {
    std::vector<Scalar> out;
    while (is_word(peek()) && !is_slot(peek())) out.push_back(number(next()));
    return out;
  }

  void maybe_note(RawExpr& e) {
    if (!at_end() && is_note(peek())) e.annotated = count(next(), 1);
  }

  RawExpr read() {
    expect("(");
    RawExpr e;
    e.head = next();
    if (e.head == "const") {
      e.numbers.push_back(number(next()));
      maybe_note(e);
    } else if (e.head == "proj") {
      e.k = count(next(), 0);
      maybe_note(e);
    } else if (e.head == "repr") {
      e.numbers = numbers_until_close_or_slot();
      if (e.numbers.empty()) fail("repr needs at least one entry");
    } else if (e.head == "sum") {
      e.children.push_back(read());
      e.children.push_back(read());
    } else if (e.head == "lcomp") {
      e.numbers = numbers_until_close_or_slot();
      if (e.numbers.empty()) fail("lcomp needs distribution entries");
      if (!is_slot(peek())) fail("lcomp expects @i after the distribution");
      e.k = count(next(), 1);
      e.children.push_back(read());
    } else if (e.head == "rcomp") {
      e.children.push_back(read());
      if (!is_slot(peek())) fail("rcomp expects @i after the function");
      e.k = count(next(), 1);
      e.numbers = numbers_until_close_or_slot();
      if (e.numbers.empty()) fail("rcomp needs distribution entries");
    } else if (e.head == "ecomp") {
      e.children.push_back(read());
      if (!is_slot(peek())) fail("ecomp expects @i between its operands");
      e.k = count(next(), 1);
      e.children.push_back(read());
    } else {
      fail("unknown form '" + e.head + "'");
    }
    expect(")");
    return e;
  }

  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
  const PlaceholderFn* env_;
};

inline std::optional<std::size_t> intrinsic_arity(const RawExpr& e) {
  const auto& ch = e.children;
  if (e.head == "const" || e.head == "proj") return e.annotated;
  if (e.head == "repr") return e.numbers.size();
  if (e.head == "sum") {
    auto a = intrinsic_arity(ch[0]), b = intrinsic_arity(ch[1]);
    if (a && b && *a != *b) throw parse_error("s-expression: sum of arities " + std::to_string(*a) + " and " + std::to_string(*b));
    return a ? a : b;
  }
  if (e.head == "lcomp") {
    auto a = intrinsic_arity(ch[0]);
    if (!a) return std::nullopt;
    return e.numbers.size() + *a - 1;
  }
  if (e.head == "rcomp") {
    auto a = intrinsic_arity(ch[0]);
    if (!a) return std::nullopt;
    return *a + e.numbers.size() - 1;
  }
  auto a = intrinsic_arity(ch[0]), b = intrinsic_arity(ch[1]);
  if (a && b) return *a + *b - 1;
  return std::nullopt;
}

inline Dist raw_dist(const RawExpr& e) {
  try {
    return Dist(e.numbers);
  } catch (const std::invalid_argument& err) {
    throw parse_error(std::string("s-expression: ") + err.what());
  }
}

inline std::size_t inner_arity(std::size_t total, std::size_t outer, const char* form) {
  if (total < outer) throw parse_error(std::string("s-expression: ") + form + " cannot have arity " + std::to_string(total));
  return total - outer + 1;
}

inline EndoFn build(const RawExpr& e, std::optional<std::size_t> context) {
  auto own = intrinsic_arity(e);
  if (own && context && *own != *context)
    throw parse_error("s-expression: (" + e.head + " ...) has arity " + std::to_string(*own) + " where " +
                      std::to_string(*context) + " is required");
  auto n = own ? own : context;
  if (!n) throw parse_error("s-expression: cannot infer the arity of (" + e.head + " ...); annotate it as :n");
  std::size_t N = *n;
  try {
    if (e.head == "const") return EndoFn::constant(N, e.numbers[0].to_double());
    if (e.head == "proj") return EndoFn::projection(N, e.k);
    if (e.head == "repr") return represent(raw_dist(e));
    if (e.head == "sum") return add(build(e.children[0], N), build(e.children[1], N));
    if (e.head == "lcomp") {
      Dist p = raw_dist(e);
      return left_compose(p, e.k, build(e.children[0], inner_arity(N, p.arity(), "lcomp")));
    }
    if (e.head == "rcomp") {
      Dist q = raw_dist(e);
      return right_compose(build(e.children[0], inner_arity(N, q.arity(), "rcomp")), e.k, q);
    }
    auto a = intrinsic_arity(e.children[0]);
    auto b = intrinsic_arity(e.children[1]);
    if (!a && !b) throw parse_error("s-expression: ecomp operand arities are ambiguous; annotate one as :n");
    if (a) return endo_compose(build(e.children[0], a), e.k, build(e.children[1], inner_arity(N, *a, "ecomp")));
    return endo_compose(build(e.children[0], inner_arity(N, *b, "ecomp")), e.k, build(e.children[1], b));
  } catch (const std::out_of_range& err) {
    throw parse_error(std::string("s-expression: ") + err.what());
  }
}

}  // namespace detail

/// Self-contained s-expression; parse_endofn(to_sexpr(f)) rebuilds f.
inline std::string to_sexpr(const EndoFn& f) { return detail::write(f, false); }

/// Parses an s-expression. `arity` supplies the top-level arity when the
/// text does not determine it. `env` resolves `$name` placeholders.
inline EndoFn parse_endofn(std::string_view text, std::optional<std::size_t> arity = std::nullopt,
                           const PlaceholderFn& env = {}) {
  detail::SexprReader reader(text, &env);
  return detail::build(reader.read_all(), arity);
}

}  // namespace simplex_operad
