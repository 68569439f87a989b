// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only if
// every line passes.

#include "simplex_operad.hpp"

#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

namespace so = simplex_operad;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  std::cout << (ok ? "PASS" : "FAIL") << " [" << id << "] " << detail << std::endl;
}

std::string num(double v) {
  std::ostringstream ss;
  ss.precision(3);
  ss << v;
  return ss.str();
}

std::string summary(const so::LawReport& r) {
  return r.law + ": samples=" + std::to_string(r.samples) + " violations=" + std::to_string(r.violations) +
         " worst=" + num(r.worst_residual);
}

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args) {
  std::string cmd = std::string(SIMPLEX_OPERAD_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, {}};
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

void dice_coin() {
  const so::Dist die = so::Dist::uniform(6), coin = so::Dist::uniform(2);
  auto t0 = Clock::now();
  so::Dist r = so::compose_at(die, coin, 3);
  double elapsed = seconds_since(t0);
  const long den[] = {6, 6, 12, 12, 6, 6, 6};
  bool exact = r.is_exact() && r.arity() == 7;
  for (std::size_t k = 0; exact && k < 7; ++k) exact = r.probs()[k].rational() == mpq_class(1, den[k]);
  report(1, exact && elapsed < 1e-3,
         "dice o_3 coin = (" + so::format_dist(r) + ") exact, " + num(elapsed * 1e3) + " ms (< 1 ms)");
}

void operad_assoc() {
  so::AssocSweep sweep;
  sweep.triples_per_config = 100;
  sweep.seed = 0;
  auto t0 = Clock::now();
  so::LawReport r = so::check_operad_assoc(4, so::Mode::exact, sweep);
  double elapsed = seconds_since(t0);
  report(2, r.passed() && r.worst_residual == 0.0 && elapsed < 10.0,
         summary(r) + ", n,m,k <= 4, 100 triples/config, " + num(elapsed) + " s (< 10 s)");
}

void identity() {
  so::LawReport r = so::check_operad_identity(6);
  report(3, r.passed() && r.worst_residual == 0.0, summary(r) + ", arities <= 6, all slots");
}

void oracle() {
  so::LawReport r = so::oracle_equivalence(500, 10, 0);
  report(4, r.passed() && r.samples == 500 && r.worst_residual == 0.0, summary(r) + ", total arity <= 10, bit-exact");
}

void representation() {
  so::LawReport r = so::check_representation(1000, 0, 1e-12);
  report(5, r.passed() && r.samples == 1000, summary(r) + " (tol 1e-12)");
}

void module_laws() {
  so::LawReport m = so::check_module_assoc(1000, 0, 1e-12);
  so::LawReport d = so::check_distributivity(1000, 0, 1e-12);
  report(6, m.passed() && d.passed() && m.samples == 1000 && d.samples == 1000,
         summary(m) + "; " + summary(d) + " (3 placements x 3 windows, tol 1e-12)");
}

void leibniz() {
  so::Derivation h = so::entropy_derivation();
  so::LawReport r = so::check_leibniz(h, 1000, 0, 1e-9);
  so::Dist game = so::compose_at(so::Dist::uniform(6), so::Dist::uniform(2), 3);
  double spot = so::evaluate(h(game), so::Point::zeros(7));
  double direct = 0.0;
  for (double x : game.to_doubles()) direct -= x * std::log(x);
  bool spot_ok = std::fabs(spot - direct) <= 1e-9 && std::fabs(spot - (std::log(6.0) + std::log(2.0) / 6)) <= 1e-9;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10f", spot);
  report(7, r.passed() && r.samples == 1000 && spot_ok,
         summary(r) + " (tol 1e-9, p_i = 0 every 4th sample); H(dice o_3 coin) = " + buf);
}

void chain_rule() {
  so::Derivation h = so::entropy_derivation();
  so::LawReport r = so::check_chain_rule(h, 500, 0, 1e-9);
  so::LawReport units = so::check_chain_rule(h, 1, 0, 0.0);
  report(8, r.passed() && r.samples == 500 && units.passed() && units.worst_residual == 0.0,
         summary(r) + " (tol 1e-9); all-unit residual " + num(units.worst_residual));
}

void faddeev() {
  auto t0 = Clock::now();
  double worst_c = 0.0, worst_dev = 0.0;
  bool ok = true;
  for (double c : {-3.0, -1.0, 0.0, 0.5, 1.0, 2.5, 10.0}) {
    try {
      so::ConstantEstimate est = so::estimate_constant(so::Derivation::scaled(c));
      worst_c = std::max(worst_c, std::fabs(est.c - c));
      worst_dev = std::max(worst_dev, est.max_deviation);
      ok = ok && est.grid_resolution == 8 && est.min_arity == 2 && est.max_arity == 5;
    } catch (const so::verification_failure& e) {
      ok = false;
      std::cout << "  c = " << c << ": " << e.what() << "\n";
    }
  }
  double elapsed = seconds_since(t0);
  report(9, ok && worst_c <= 1e-9 && worst_dev <= 1e-9 && elapsed < 30.0,
         "c in {-3,-1,0,0.5,1,2.5,10}: max |c_est - c| = " + num(worst_c) + ", max grid deviation = " +
             num(worst_dev) + ", grid 1/8, arities 2..5, " + num(elapsed) + " s (< 30 s)");
}

void eta() {
  so::LawReport r = so::check_eta_leibniz(1000, 0, 1e-12);
  report(10, r.passed() && r.samples == 1000, summary(r) + " (tol 1e-12)");
}

void cli_integration() {
  Run clean = cli("check --law all --samples 500 --seed 1");
  Run faulty = cli("check --law all --samples 500 --seed 1 --inject-fault 1e-6");
  bool witness = false;
  try {
    for (const auto& rep : json::parse(faulty.out))
      witness = witness || (rep.at("violations").get<long>() > 0 && !rep.at("witness").is_null());
  } catch (const json::exception&) {
    witness = false;
  }
  report(11, clean.code == 0 && faulty.code == 1 && witness,
         "check --law all --samples 500 --seed 1 -> exit " + std::to_string(clean.code) +
             "; with --inject-fault 1e-6 -> exit " + std::to_string(faulty.code) +
             (witness ? ", witness reported" : ", no witness"));
}

}  // namespace

int main() {
  const std::function<void()> criteria[] = {dice_coin, operad_assoc,  identity, oracle, representation, module_laws,
                                            leibniz,   chain_rule,    faddeev,  eta,    cli_integration};
  for (const auto& run : criteria) {
    try {
      run();
    } catch (const std::exception& e) {
      ++failures;
      std::cout << "FAIL unexpected exception: " << e.what() << std::endl;
    }
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
