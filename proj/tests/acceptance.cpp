// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Exactness criteria use exact arithmetic throughout; the only tolerances are
// the wall-clock budgets and the witness success rate below.

#include "qorder/validation.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

namespace {

using namespace qorder;
using Clock = std::chrono::steady_clock;

constexpr double kRoundtripBudgetSeconds = 120.0;
constexpr double kThm11BudgetSeconds = 15.0 * 60.0;  // single-threaded

struct Criterion {
  int id;
  std::string title;
  std::string suite;
  unsigned workers;
  double budget_seconds;  // 0 = no time limit
};

std::string summarize(const SuiteResult& r) {
  std::string s;
  for (const auto& [k, v] : r.counts) s += (s.empty() ? "" : ", ") + k + "=" + std::to_string(v);
  return s;
}

}  // namespace

int main() {
  const unsigned all = default_workers();
  const std::vector<Criterion> criteria{
      {1, "round trip and associativity, B=3", "roundtrip", all, kRoundtripBudgetSeconds},
      {2, "Gram determinant coherence, B=3 plus 1000 random forms", "gram", all, 0},
      {3, "Bass equals brute-force basic, B=2, p in {2,3}", "thm11", 1, kThm11BudgetSeconds},
      {4, "equivalent local characterizations, B=2", "cor13", all, 0},
      {5, "named instances", "named-instances", 1, 0},
      {6, "superorder of Gorenstein ramified non-basic orders, B=2", "thm36", all, 0},
      {7, "radical element properties, B=2", "lemma41", all, 0},
      {8, "trace radical equals brute-force radical, B=2", "radical", all, 0},
      {9, "quadratic witnesses at H=30 for discrd <= 200, B=2", "witness", all, 0},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    auto start = Clock::now();
    SuiteResult r;
    std::string error;
    try {
      r = run_suite(c.suite, {-1, c.workers});
    } catch (const std::exception& e) {
      error = e.what();
    }
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    bool ok = error.empty() && r.passed;
    std::string detail = error.empty() ? summarize(r) : "exception: " + error;
    if (ok && c.budget_seconds > 0 && secs > c.budget_seconds) {
      ok = false;
      detail += "; over time budget " + std::to_string(static_cast<int>(c.budget_seconds)) + " s";
    }
    if (!ok && error.empty() && !r.failures.empty()) detail += "; first failure: " + r.failures.front();
    std::printf("criterion %d %s: %s (%.1f s, workers=%u; %s)\n", c.id, c.title.c_str(), ok ? "PASS" : "FAIL", secs,
                c.workers, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
