// Command-line front end: composition, entropy, law sweeps, constant
// recovery and DOT rendering.
//
// Exit codes: 0 success, 1 law violation or failed verification, 2 bad input
// or usage.

#include "simplex_operad.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace so = simplex_operad;
using nlohmann::json;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct usage_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json_file(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw usage_error("'" + path + "' is not valid JSON: " + e.what());
  }
}

// Inline "1/2,1/2" syntax, or a JSON document when the text starts with '{' or '['.
so::Dist dist_arg(const std::string& text) {
  if (!text.empty() && (text.front() == '{' || text.front() == '[')) {
    try {
      return so::dist_from_json(json::parse(text));
    } catch (const json::parse_error& e) {
      throw usage_error(std::string("malformed distribution JSON: ") + e.what());
    }
  }
  return so::parse_dist(text);
}

so::Dist dist_from_field(const json& doc, const char* key) {
  if (!doc.contains(key)) throw usage_error(std::string("input file lacks \"") + key + "\"");
  return so::dist_from_json(doc.at(key));
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw usage_error("cannot write '" + out_path + "'");
  out << text;
}

std::string fifteen_digits(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v + 0.0);
  return buf;
}

so::Derivation derivation_arg(const std::string& spec, so::LogBase base) {
  if (spec == "entropy") return so::Derivation::entropy(base);
  if (spec == "zero") return so::Derivation::zero();
  if (spec.rfind("scaled:", 0) == 0) {
    so::Scalar c = so::Scalar::parse(spec.substr(7));
    return so::Derivation::scaled(c.to_double());
  }
  if (spec.rfind("file:", 0) == 0) return so::Derivation::custom(read_file(spec.substr(5)));
  throw usage_error("unknown derivation '" + spec + "' (entropy, zero, scaled:<c>, file:<path>)");
}

struct CheckConfig {
  std::string law = "all";
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::optional<std::size_t> max_arity;
  std::size_t triples = 100;
  double fault = 0.0;
  bool floating = false;
  std::string derivation = "entropy";
};

const std::vector<std::string> kLaws = {"operad-assoc", "operad-identity", "representation", "module-assoc",
                                        "distributivity", "oracle",         "leibniz",        "chain-rule",
                                        "eta-leibniz"};

so::LawReport run_law(const std::string& law, const CheckConfig& cfg, const so::Derivation& d) {
  auto tol_or = [&](double def) { return cfg.tol.value_or(def); };
  if (law == "operad-assoc") {
    so::AssocSweep sweep;
    sweep.triples_per_config = cfg.triples;
    sweep.seed = cfg.seed;
    sweep.fault = cfg.fault;
    return so::check_operad_assoc(cfg.max_arity.value_or(4), cfg.floating ? so::Mode::floating : so::Mode::exact,
                                  sweep);
  }
  if (law == "operad-identity") return so::check_operad_identity(cfg.max_arity.value_or(6), 25, cfg.seed, cfg.fault);
  if (law == "representation")
    return so::check_representation(cfg.samples, cfg.seed, tol_or(so::kArithmeticTolerance), cfg.fault);
  if (law == "module-assoc") return so::check_module_assoc(cfg.samples, cfg.seed, tol_or(so::kArithmeticTolerance));
  if (law == "distributivity") return so::check_distributivity(cfg.samples, cfg.seed, tol_or(so::kArithmeticTolerance));
  if (law == "oracle") return so::oracle_equivalence(cfg.samples, cfg.max_arity.value_or(10), cfg.seed, cfg.fault);
  if (law == "leibniz") return so::check_leibniz(d, cfg.samples, cfg.seed, tol_or(so::kEntropyTolerance), cfg.fault);
  if (law == "chain-rule")
    return so::check_chain_rule(d, cfg.samples, cfg.seed, tol_or(so::kEntropyTolerance), cfg.fault);
  if (law == "eta-leibniz") return so::check_eta_leibniz(cfg.samples, cfg.seed, tol_or(so::kArithmeticTolerance));
  throw usage_error("unknown law '" + law + "'");
}

int cmd_check(const CheckConfig& cfg, so::LogBase base) {
  so::Derivation d = derivation_arg(cfg.derivation, base);
  std::vector<std::string> laws;
  if (cfg.law == "all") {
    laws = kLaws;
  } else if (std::find(kLaws.begin(), kLaws.end(), cfg.law) != kLaws.end()) {
    laws = {cfg.law};
  } else {
    throw usage_error("unknown law '" + cfg.law + "'");
  }
  json out = json::array();
  bool ok = true;
  for (const auto& law : laws) {
    so::LawReport r = run_law(law, cfg, d);
    ok = ok && r.passed();
    out.push_back(r.to_json());
  }
  std::cout << (laws.size() == 1 ? out[0] : out).dump(2) << "\n";
  return ok ? 0 : kExitViolation;
}

int cmd_faddeev(const std::string& spec, std::size_t grid, double tol, so::LogBase base, bool as_json) {
  so::Derivation d = derivation_arg(spec, base);
  so::EstimateOptions opt;
  opt.grid_resolution = grid;
  opt.tol = tol;
  try {
    so::ConstantEstimate est = so::estimate_constant(d, opt);
    if (as_json) {
      std::cout << est.to_json().dump(2) << "\n";
    } else {
      std::cout << "c = " << fifteen_digits(est.c) << "\n"
                << "max_deviation = " << fifteen_digits(est.max_deviation) << "\n";
    }
    return 0;
  } catch (const so::verification_failure& e) {
    json j{{"error", e.what()}, {"deviation", e.deviation()}, {"witness", e.witness()}};
    if (as_json)
      std::cout << j.dump(2) << "\n";
    else
      std::cerr << "faddeev: " << e.what() << "\n";
    return kExitViolation;
  }
}

struct RenderConfig {
  std::string tree, tree_file, expr, expr_file, p, q;
  std::size_t at = 0;
  std::optional<std::size_t> arity;
  std::string format = "dot";
  std::string out;
};

int cmd_render(const RenderConfig& cfg) {
  if (cfg.format != "dot") throw usage_error("unsupported format '" + cfg.format + "'");
  std::string dot;
  if (!cfg.tree.empty() || !cfg.tree_file.empty()) {
    json j;
    try {
      j = cfg.tree.empty() ? read_json_file(cfg.tree_file) : json::parse(cfg.tree);
    } catch (const json::parse_error& e) {
      throw usage_error(std::string("malformed tree JSON: ") + e.what());
    }
    dot = so::to_dot(so::tree_from_json(j));
  } else if (!cfg.expr.empty() || !cfg.expr_file.empty()) {
    std::string text = cfg.expr.empty() ? read_file(cfg.expr_file) : cfg.expr;
    dot = so::to_dot(so::parse_endofn(text, cfg.arity));
  } else if (!cfg.p.empty()) {
    so::TreeExpr t = so::TreeExpr::corolla(dist_arg(cfg.p));
    if (!cfg.q.empty()) t = so::tree_graft(t, cfg.at, so::TreeExpr::corolla(dist_arg(cfg.q)));
    dot = so::to_dot(t);
  } else {
    throw usage_error("render needs --tree, --tree-file, --expr, --expr-file or --p");
  }
  emit(dot, cfg.out);
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{"Simplex operad toolkit: compositions, entropy, law sweeps, derivations"};
  app.require_subcommand(1);
  bool as_json = false;
  std::string base_text = "e";
  app.add_flag("--json", as_json, "Emit JSON instead of plain text");
  app.add_option("--base", base_text, "Logarithm base: e, 2 or 10")->check(CLI::IsMember({"e", "2", "10"}));

  std::string p_text, q_text, file;
  std::size_t at = 0;
  std::vector<std::string> q_list;

  auto* compose = app.add_subcommand("compose", "Partial composition p o_i q");
  compose->add_option("--p", p_text, "Outer distribution");
  compose->add_option("--q", q_text, "Inner distribution");
  compose->add_option("--at", at, "Slot i (1-based)");
  compose->add_option("--file", file, "JSON file {\"p\": .., \"q\": .., \"at\": i}");
  compose->add_flag("--json", as_json);

  auto* multi = app.add_subcommand("compose-multi", "Simultaneous composition p o (q1, .., qn)");
  multi->add_option("--p", p_text, "Outer distribution");
  multi->add_option("--q", q_list, "One inner distribution per slot, in order")->take_all();
  multi->add_option("--file", file, "JSON file {\"p\": .., \"qs\": [..]}");
  multi->add_flag("--json", as_json);

  auto* ent = app.add_subcommand("entropy", "Shannon entropy of a distribution");
  ent->add_option("--p", p_text, "Distribution");
  ent->add_option("--file", file, "JSON distribution file");
  ent->add_option("--base", base_text, "Logarithm base: e, 2 or 10")->check(CLI::IsMember({"e", "2", "10"}));
  ent->add_flag("--json", as_json);

  CheckConfig check_cfg;
  double fault = 0.0;
  double tol = 0.0;
  std::size_t max_arity = 0;
  auto* check = app.add_subcommand("check", "Run law sweeps; exit 0 iff no violations");
  check->add_option("--law", check_cfg.law, "operad-assoc, operad-identity, representation, module-assoc, "
                                            "distributivity, oracle, leibniz, chain-rule, eta-leibniz, all");
  check->add_option("--samples", check_cfg.samples, "Samples for randomized sweeps")->check(CLI::PositiveNumber);
  check->add_option("--seed", check_cfg.seed, "RNG seed");
  auto* tol_opt = check->add_option("--tol", tol, "Tolerance override")->check(CLI::PositiveNumber);
  auto* arity_opt = check->add_option("--max-arity", max_arity, "Arity bound for exhaustive sweeps")
                        ->check(CLI::PositiveNumber);
  check->add_option("--triples", check_cfg.triples, "Random triples per arity configuration (operad-assoc)")
      ->check(CLI::PositiveNumber);
  check->add_flag("--float", check_cfg.floating, "Run operad-assoc on doubles instead of rationals");
  check->add_option("--derivation", check_cfg.derivation, "entropy, zero, scaled:<c>, file:<path>");
  check->add_option("--inject-fault", fault, "Add this amount to one entry of every composite under test");
  check->add_option("--base", base_text, "Logarithm base for the entropy derivation")
      ->check(CLI::IsMember({"e", "2", "10"}));

  std::string derivation_spec = "entropy";
  std::size_t grid = 8;
  double faddeev_tol = so::kEntropyTolerance;
  auto* faddeev = app.add_subcommand("faddeev", "Recover c with F = c H from a derivation");
  faddeev->add_option("--derivation", derivation_spec, "entropy, zero, scaled:<c>, file:<path>");
  faddeev->add_option("--grid", grid, "Simplex grid denominator")->check(CLI::PositiveNumber);
  faddeev->add_option("--tol", faddeev_tol, "Grid tolerance")->check(CLI::PositiveNumber);
  faddeev->add_option("--base", base_text, "Logarithm base for the entropy derivation")
      ->check(CLI::IsMember({"e", "2", "10"}));
  faddeev->add_flag("--json", as_json);

  RenderConfig render_cfg;
  std::size_t render_arity = 0;
  auto* render = app.add_subcommand("render", "Write a DOT diagram of a tree or an expression");
  render->add_option("--tree", render_cfg.tree, "Tree as JSON nested arrays");
  render->add_option("--tree-file", render_cfg.tree_file, "File holding a JSON tree");
  render->add_option("--expr", render_cfg.expr, "EndoFn s-expression");
  render->add_option("--expr-file", render_cfg.expr_file, "File holding an s-expression");
  auto* render_arity_opt = render->add_option("--arity", render_arity, "Arity when the expression leaves it open")
                               ->check(CLI::PositiveNumber);
  render->add_option("--p", render_cfg.p, "Corolla distribution");
  render->add_option("--q", render_cfg.q, "Distribution grafted at --at");
  render->add_option("--at", render_cfg.at, "Graft slot");
  render->add_option("--format", render_cfg.format, "Output format (dot)");
  render->add_option("--out", render_cfg.out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    so::LogBase base = so::parse_log_base(base_text);
    if (*compose) {
      so::Dist result = [&] {
        if (!file.empty()) {
          json doc = read_json_file(file);
          if (!doc.contains("at")) throw usage_error("input file lacks \"at\"");
          return so::compose_at(dist_from_field(doc, "p"), dist_from_field(doc, "q"), doc.at("at").get<std::size_t>());
        }
        if (p_text.empty() || q_text.empty() || at == 0) throw usage_error("compose needs --p, --q and --at");
        return so::compose_at(dist_arg(p_text), dist_arg(q_text), at);
      }();
      std::cout << (as_json ? so::to_json(result).dump() : so::format_dist(result)) << "\n";
      return 0;
    }
    if (*multi) {
      so::Dist p = so::unit_dist();
      std::vector<so::Dist> qs;
      if (!file.empty()) {
        json doc = read_json_file(file);
        p = dist_from_field(doc, "p");
        if (!doc.contains("qs") || !doc.at("qs").is_array()) throw usage_error("input file lacks a \"qs\" array");
        for (const auto& q : doc.at("qs")) qs.push_back(so::dist_from_json(q));
      } else {
        if (p_text.empty()) throw usage_error("compose-multi needs --p and one --q per slot");
        p = dist_arg(p_text);
        for (const auto& q : q_list) qs.push_back(dist_arg(q));
      }
      so::Dist result = so::compose_simul(p, qs);
      std::cout << (as_json ? so::to_json(result).dump() : so::format_dist(result)) << "\n";
      return 0;
    }
    if (*ent) {
      so::Dist p = !file.empty() ? so::dist_from_json(read_json_file(file))
                                 : (p_text.empty() ? throw usage_error("entropy needs --p or --file") : dist_arg(p_text));
      double h = so::entropy(p, base);
      if (as_json)
        std::cout << json{{"entropy", h}, {"base", base_text}, {"p", so::to_json(p)}}.dump() << "\n";
      else
        std::cout << fifteen_digits(h) << "\n";
      return 0;
    }
    if (*check) {
      if (*tol_opt) check_cfg.tol = tol;
      if (*arity_opt) check_cfg.max_arity = max_arity;
      check_cfg.fault = fault;
      return cmd_check(check_cfg, base);
    }
    if (*faddeev) return cmd_faddeev(derivation_spec, grid, faddeev_tol, base, as_json);
    if (*render) {
      if (*render_arity_opt) render_cfg.arity = render_arity;
      return cmd_render(render_cfg);
    }
  } catch (const so::verification_failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitViolation;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
