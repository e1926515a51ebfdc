// qorder: quaternion orders from ternary forms, Gorenstein/Bass/basic verdicts.
//
//   qorder analyze   --form '[1,1,1,0,0,0]' [--height H] [--count N]
//   qorder enumerate --bound B --primes 2,3 [--workers W]
//   qorder witness   --form '[1,1,1,0,0,0]' --height H --count N
//   qorder validate  --suite thm11 [--bound B] [--workers W]
//
// Reports are JSON on stdout (or --out FILE). Exit codes: 0 ok, 1 assertion
// or validation failure, 2 input error, 3 capacity exceeded.

#include "qorder/validation.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace {

using namespace qorder;

enum Exit { kOk = 0, kFail = 1, kInput = 2, kCapacity = 3 };

struct JobSpec {
  std::string command;
  std::string form;
  int bound = 2;
  std::vector<int> primes{2, 3};
  unsigned height = WitnessSearch{}.height;
  std::size_t count = WitnessSearch{}.count;
  unsigned workers = default_workers();
  std::string out;
  std::string suite;
};

// The worker count is left out: it never changes the output.
Json job_json(const JobSpec& job) {
  Json j;
  j["command"] = job.command;
  if (job.command == "analyze" || job.command == "witness") {
    j["form"] = Json::parse(job.form);
    j["height"] = job.height;
    j["count"] = job.count;
  } else if (job.command == "enumerate") {
    j["bound"] = job.bound;
    j["primes"] = job.primes;
  } else {
    j["suite"] = job.suite;
    j["bound"] = job.bound;
  }
  return j;
}

Json header(const JobSpec& job) {
  Json j;
  j["version"] = kVersion;
  j["job"] = job_json(job);
  return j;
}

void emit(const JobSpec& job, const Json& j) {
  std::string text = j.dump(2) + "\n";
  if (job.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(job.out);
  if (!f) throw InputError("cannot open output file " + job.out);
  f << text;
}

int cmd_analyze(const JobSpec& job) {
  TernaryForm q = parse_form(job.form);
  ClassificationReport r = classify(clifford_order(q), {job.height, job.count, false});
  Json j = header(job);
  Json body = to_json(r);
  for (auto& [k, v] : body.items()) j[k] = v;
  emit(job, j);
  return r.oracle_agreement ? kOk : kFail;
}

int cmd_witness(const JobSpec& job) {
  TernaryForm q = parse_form(job.form);
  GoodBasisOrder o = clifford_order(q);
  bool bass = true;
  for (const auto& [p, e] : factor_trial(discrd(o))) bass = bass && is_bass_local(o, p);
  auto ws = find_quadratic_witnesses(o, {job.height, job.count, false});
  Json j = header(job);
  j["form"] = to_json(q);
  j["discrd"] = to_json(discrd(o));
  j["bass"] = bass;
  Json list = Json::array();
  for (const auto& w : ws) list.push_back(to_json(w));
  j["witnesses"] = list;
  j["inconclusive"] = ws.empty() && bass;
  emit(job, j);
  return !bass && !ws.empty() ? kFail : kOk;
}

int cmd_enumerate(const JobSpec& job) {
  static const std::set<int> allowed{2, 3, 5, 7, 11, 13};
  if (job.bound < 0) throw InputError("--bound must be nonnegative");
  if (job.bound > 3) throw CapacityError("enumeration limited to --bound <= 3");
  for (int p : job.primes)
    if (!allowed.count(p)) throw CapacityError("enumeration primes must lie in {2,3,5,7,11,13}");
  FormBox box = enumerate_forms(job.bound);

  struct Row {
    std::vector<Json> verdicts;
    std::vector<std::string> violations;
  };
  auto rows = parallel_map<Row>(box.forms.size(), job.workers, [&](std::size_t n) {
    Row row;
    GoodBasisOrder o = clifford_order(box.forms[n]);
    Integer d = discrd(o);
    for (int p : job.primes) {
      if (d % p != 0) continue;
      LocalReport r = analyze_local(o, p);
      row.verdicts.push_back(Json::array({to_json(box.forms[n]), p, to_string(r.residual), r.gorenstein, r.bass,
                                          r.basic_bruteforce ? Json(*r.basic_bruteforce) : Json(nullptr),
                                          r.oracle_agreement}));
      for (const auto& s : r.disagreements) row.violations.push_back(s);
    }
    return row;
  });

  std::map<std::tuple<int, std::string, bool, bool>, std::int64_t> census;
  Json verdicts = Json::array(), violations = Json::array();
  std::int64_t checks = 0;
  for (const auto& row : rows) {
    for (const auto& v : row.verdicts) {
      ++checks;
      census[{v[1].get<int>(), v[2].get<std::string>(), v[3].get<bool>(), v[4].get<bool>()}]++;
      verdicts.push_back(v);
    }
    for (const auto& s : row.violations) violations.push_back(s);
  }
  Json j = header(job);
  Json c = Json::array();
  for (const auto& [k, n] : census)
    c.push_back(Json{{"p", std::get<0>(k)},
                     {"residual_type", std::get<1>(k)},
                     {"gorenstein", std::get<2>(k)},
                     {"bass", std::get<3>(k)},
                     {"count", n}});
  j["census"] = c;
  j["verdict_columns"] = {"form", "p", "residual_type", "gorenstein", "bass", "basic_bruteforce", "agreement"};
  j["verdicts"] = verdicts;
  j["violations"] = violations;
  j["footer"] = Json{{"forms", box.forms.size()}, {"degenerate_skipped", box.degenerate}, {"checks", checks},
                     {"violations", violations.size()}};
  emit(job, j);
  return violations.empty() ? kOk : kFail;
}

int cmd_validate(const JobSpec& job) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), job.suite) == names.end())
    throw InputError("unknown suite \"" + job.suite + "\"");
  SuiteResult r = run_suite(job.suite, {job.bound, job.workers});
  Json j = header(job);
  Json body = to_json(r);
  for (auto& [k, v] : body.items()) j[k] = v;
  emit(job, j);
  return r.passed ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quaternion orders and ternary quadratic forms"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  JobSpec job;

  auto* analyze = app.add_subcommand("analyze", "classify the order of one form");
  analyze->add_option("--form", job.form, "form as JSON [a,b,c,u,v,w]")->required();
  analyze->add_option("--height", job.height, "witness search height")->capture_default_str();
  analyze->add_option("--count", job.count, "number of witnesses")->capture_default_str();

  auto* enumerate = app.add_subcommand("enumerate", "census over all forms with coefficients in [-B,B]");
  enumerate->add_option("--bound", job.bound, "coefficient bound B")->capture_default_str();
  enumerate->add_option("--primes", job.primes, "primes (comma separated)")->delimiter(',')->capture_default_str();

  auto* witness = app.add_subcommand("witness", "search integrally closed quadratic suborders");
  witness->add_option("--form", job.form, "form as JSON [a,b,c,u,v,w]")->required();
  witness->add_option("--height", job.height, "coordinate bound H")->capture_default_str();
  witness->add_option("--count", job.count, "number of witnesses N")->capture_default_str();

  auto* validate = app.add_subcommand("validate", "run a named validation suite");
  validate->add_option("--suite", job.suite, "roundtrip|gram|thm11|cor13|lemma41|named-instances|...")->required();
  validate->add_option("--bound", job.bound, "coefficient bound (default: suite specific)");

  for (auto* sub : {analyze, enumerate, witness, validate}) {
    sub->add_option("--workers", job.workers, "worker threads")->capture_default_str();
    sub->add_option("--out", job.out, "write the report to this file");
  }
  job.bound = -1;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (analyze->parsed()) {
      job.command = "analyze";
      return cmd_analyze(job);
    }
    if (enumerate->parsed()) {
      job.command = "enumerate";
      if (job.bound < 0 && enumerate->count("--bound") == 0) job.bound = 2;
      return cmd_enumerate(job);
    }
    if (witness->parsed()) {
      job.command = "witness";
      return cmd_witness(job);
    }
    job.command = "validate";
    return cmd_validate(job);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const CapacityError& e) {
    std::cerr << "capacity exceeded: " << e.what() << "\n";
    return kCapacity;
  } catch (const Error& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kFail;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  }
}
