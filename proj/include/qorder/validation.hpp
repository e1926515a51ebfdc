#pragma once

// Named validation suites over coefficient boxes. Each suite returns counts
// and failure records; a suite passes iff it has no failures.

#include "qorder/global.hpp"
#include "qorder/json_io.hpp"
#include "qorder/sweep.hpp"

#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace qorder {

struct SuiteOptions {
  int bound = -1;  // -1: the suite default
  unsigned workers = 1;
};

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::map<std::string, std::int64_t> counts;
  std::vector<std::string> failures;
  std::vector<std::string> notes;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"roundtrip", "gram",   "thm11",   "cor13", "lemma41", "named-instances",
                                              "radical",   "thm36",  "witness", "chain"};
  return names;
}

namespace detail {

struct ItemResult {
  std::map<std::string, std::int64_t> counts;
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  void count(const std::string& k, std::int64_t n = 1) { counts[k] += n; }
  void fail(const std::string& s) { failures.push_back(s); }
};

inline std::string where(const GoodBasisOrder& o, const Integer& p) {
  return o.form().to_string() + " p=" + p.str();
}

// Runs fn over every nondegenerate form of the box and merges in form order.
inline SuiteResult sweep_suite(const std::string& name, int bound, unsigned workers,
                               const std::function<void(const GoodBasisOrder&, ItemResult&)>& fn) {
  FormBox box = enumerate_forms(bound);
  auto items = parallel_map<ItemResult>(box.forms.size(), workers, [&](std::size_t n) {
    ItemResult r;
    try {
      GoodBasisOrder o = clifford_order(box.forms[n]);
      fn(o, r);
    } catch (const Error& e) {
      r.fail(box.forms[n].to_string() + ": " + e.what());
    }
    return r;
  });
  SuiteResult out{name};
  out.counts["forms"] = static_cast<std::int64_t>(box.forms.size());
  out.counts["degenerate"] = static_cast<std::int64_t>(box.degenerate);
  for (auto& it : items) {
    for (auto& [k, v] : it.counts) out.counts[k] += v;
    for (auto& f : it.failures) out.failures.push_back(std::move(f));
    for (auto& s : it.notes) out.notes.push_back(std::move(s));
  }
  out.passed = out.failures.empty();
  return out;
}

inline const std::array<int, 2> kSweepPrimes{2, 3};

template <class F>
void for_sweep_primes(const GoodBasisOrder& o, F&& f) {
  Integer d = discrd(o);
  for (int p : kSweepPrimes)
    if (d % p == 0) f(Integer(p));
}

inline bool global_bass(const GoodBasisOrder& o) {
  for (const auto& [p, e] : factor_trial(discrd(o)))
    if (!is_bass_local(o, p)) return false;
  return true;
}

}  // namespace detail

inline SuiteResult suite_roundtrip(const SuiteOptions& opt) {
  int b = opt.bound < 0 ? 3 : opt.bound;
  return detail::sweep_suite("roundtrip", b, opt.workers, [](const GoodBasisOrder& o, detail::ItemResult& r) {
    // clifford_order has already checked all 64 basis triples for associativity.
    r.count("associative");
    if (order_form(o) == o.form())
      r.count("roundtrip");
    else
      r.fail(o.form().to_string() + ": order_form(clifford_order(Q)) != Q");
  });
}

inline SuiteResult suite_gram(const SuiteOptions& opt) {
  int b = opt.bound < 0 ? 3 : opt.bound;
  auto check = [](const GoodBasisOrder& o, detail::ItemResult& r) {
    GramDiscriminant g = gram_and_discrd(o);
    if (g.discrd == abs(half_discriminant(o.form())))
      r.count("gram_ok");
    else
      r.fail(o.form().to_string() + ": |det Gram| != half_discriminant^2");
  };
  SuiteResult out = detail::sweep_suite("gram", b, opt.workers, check);
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> coef(-50, 50);
  std::vector<TernaryForm> random;
  while (random.size() < 1000) {
    FormCoefficients k;
    for (auto& c : k) c = coef(rng);
    if (TernaryForm::half_discriminant_of(k) != 0) random.emplace_back(k);
  }
  auto items = parallel_map<detail::ItemResult>(random.size(), opt.workers, [&](std::size_t n) {
    detail::ItemResult r;
    try {
      check(clifford_order(random[n]), r);
    } catch (const Error& e) {
      r.fail(random[n].to_string() + ": " + e.what());
    }
    return r;
  });
  for (auto& it : items) {
    out.counts["random_gram_ok"] += it.counts["gram_ok"];
    for (auto& f : it.failures) out.failures.push_back(f);
  }
  out.counts["random_forms"] = static_cast<std::int64_t>(random.size());
  out.passed = out.failures.empty();
  return out;
}

inline SuiteResult suite_thm11(const SuiteOptions& opt) {
  int b = opt.bound < 0 ? 2 : opt.bound;
  return detail::sweep_suite("thm11", b, opt.workers, [](const GoodBasisOrder& o, detail::ItemResult& r) {
    detail::for_sweep_primes(o, [&](const Integer& p) {
      bool bass = is_bass_local(o, p), basic = is_basic_bruteforce(o, p);
      r.count("checks");
      r.count(bass ? "bass" : "not_bass");
      if (bass != basic)
        r.fail(detail::where(o, p) + ": bass=" + (bass ? "true" : "false") + " basic_bruteforce=" +
               (basic ? "true" : "false"));
    });
  });
}

inline SuiteResult suite_cor13(const SuiteOptions& opt) {
  int b = opt.bound < 0 ? 2 : opt.bound;
  return detail::sweep_suite("cor13", b, opt.workers, [](const GoodBasisOrder& o, detail::ItemResult& r) {
    detail::for_sweep_primes(o, [&](const Integer& p) {
      ResidualType t = residual_type(o, p);
      bool basic = is_basic_bruteforce(o, p);
      r.count("checks");
      if (!is_local_ring(t)) {
        r.count("non_local");
        if (!is_bass_local(o, p) || !basic) r.fail(detail::where(o, p) + ": non-local order not Bass/basic");
        return;
      }
      r.count("local");
      bool pair = is_gorenstein_local(o, p) && is_gorenstein_local(radical_idealizer(o, p).order, p);
      bool two = two_generation_dim(o, p) <= 2;
      bool none = !eichler_decomposition(o, p).has_value();
      r.count(pair ? "local_bass" : "local_not_bass");
      if (pair != two || pair != basic || pair != none)
        r.fail(detail::where(o, p) + ": gorenstein_pair=" + std::to_string(pair) + " two_gen=" + std::to_string(two) +
               " basic=" + std::to_string(basic) + " no_eichler=" + std::to_string(none));
    });
  });
}

inline SuiteResult suite_thm36(const SuiteOptions& opt) {
  int b = opt.bound < 0 ? 2 : opt.bound;
  return detail::sweep_suite("thm36", b, opt.workers, [](const GoodBasisOrder& o, detail::ItemResult& r) {
    detail::for_sweep_primes(o, [&](const Integer& p) {
      if (!is_gorenstein_local(o, p) || residual_type(o, p) != ResidualType::ResiduallyRamified ||
          is_basic_bruteforce(o, p))
        return;
      r.count("qualifying");
      SuperorderWitness w = superorder_witness(o, p);
      r.count(w.which == NormalFormCase::I ? "case_i" : "case_ii");
      QuatLattice sup = lattice_from_rows(o, w.order.transition);
      if (index(sup.basis, as_lattice(o).basis) != Rational(p)) r.fail(detail::where(o, p) + ": index != p");
      if (form_content(w.order.order.form()) % p != 0) r.fail(detail::where(o, p) + ": superorder Gorenstein");
      if (is_gorenstein_local(w.order.order, p)) r.fail(detail::where(o, p) + ": superorder passes Gorenstein test");
      if (!(lattice_from_rows(o, radical_idealizer(o, p).transition) == sup))
        r.fail(detail::where(o, p) + ": superorder != radical idealizer");
    });
  });
}

inline SuiteResult suite_lemma41(const SuiteOptions& opt) {
  int b = opt.bound < 0 ? 2 : opt.bound;
  return detail::sweep_suite("lemma41", b, opt.workers, [](const GoodBasisOrder& o, detail::ItemResult& r) {
    detail::for_sweep_primes(o, [&](const Integer& p) {
      if (!is_local_ring(residual_type(o, p))) return;
      RadicalElementReport rep = lemma41_properties(o, p);
      r.count("orders");
      r.count("elements", static_cast<std::int64_t>(rep.checked));
      if (rep.nonbasic) r.count("nonbasic_orders");
      for (const auto& v : rep.violations) r.fail(detail::where(o, p) + ": " + v);
    });
  });
}

inline SuiteResult suite_radical(const SuiteOptions& opt) {
  int b = opt.bound < 0 ? 2 : opt.bound;
  return detail::sweep_suite("radical", b, opt.workers, [](const GoodBasisOrder& o, detail::ItemResult& r) {
    for (int p : detail::kSweepPrimes) {
      FpSubspace trace = radical_mod_p_trace(o, p);
      FpSubspace brute = radical_mod_p_bruteforce(o, p);
      r.count("calls");
      if (!(trace == brute)) {
        r.fail(detail::where(o, Integer(p)) + ": trace radical != brute-force radical");
        continue;
      }
      check_radical(o, trace);
      r.count("certified");
    }
  });
}

inline constexpr unsigned kWitnessHeight = 30;
inline const Integer kWitnessMaxDiscrd = 200;

inline SuiteResult suite_witness(const SuiteOptions& opt) {
  int b = opt.bound < 0 ? 2 : opt.bound;
  SuiteResult out =
      detail::sweep_suite("witness", b, opt.workers, [](const GoodBasisOrder& o, detail::ItemResult& r) {
        bool bass = detail::global_bass(o);
        if (bass) {
          if (discrd(o) > kWitnessMaxDiscrd) return;
          r.count("bass_orders");
          auto w = find_quadratic_witnesses(o, {kWitnessHeight, 1, true});
          if (w.empty()) {
            r.count("inconclusive");
            r.notes.push_back("inconclusive: " + o.form().to_string());
          } else {
            r.count("found");
          }
        } else {
          r.count("non_bass_orders");
          auto w = find_quadratic_witnesses(o, {kWitnessHeight, 1, false});
          if (!w.empty())
            r.fail(o.form().to_string() + ": non-Bass order has witness d=" + w.front().d.str());
        }
      });
  std::int64_t total = out.counts["bass_orders"], found = out.counts["found"];
  // At least 95% of Bass orders must yield a witness at this height.
  if (found * 100 < total * 95) {
    out.failures.push_back("witness success rate " + std::to_string(found) + "/" + std::to_string(total) +
                           " below 95%");
    out.passed = false;
  }
  return out;
}

// Idealizer chains: strictly increasing, hereditary end, and each step from a
// Gorenstein local order is the unique minimal superorder (among superorders
// of index p and p^2 inside p^{-1} O).
inline SuiteResult suite_chain(const SuiteOptions& opt) {
  int b = opt.bound < 0 ? 2 : opt.bound;
  return detail::sweep_suite("chain", b, opt.workers, [](const GoodBasisOrder& o, detail::ItemResult& r) {
    detail::for_sweep_primes(o, [&](const Integer& p) {
      auto chain = idealizer_chain(o, p);
      r.count("chains");
      r.count("steps", static_cast<std::int64_t>(chain.size() - 1));
      if (*valuation(chain.back().discrd, p) > 1) r.fail(detail::where(o, p) + ": chain does not end hereditary");
      for (std::size_t n = 0; n + 1 < chain.size(); ++n) {
        const GoodBasisOrder& cur = chain[n].order;
        if (!(chain[n + 1].discrd < chain[n].discrd)) r.fail(detail::where(o, p) + ": chain not increasing");
        if (!is_gorenstein_local(cur, p) || !is_local_ring(residual_type(cur, p))) continue;
        NormalizedOrder nat = radical_idealizer(cur, p);
        r.count("minimality_checks");
        r.count("superorders_examined",
                static_cast<std::int64_t>(check_minimal_superorder(cur, p, lattice_from_rows(cur, nat.transition))));
      }
    });
  });
}

inline SuiteResult suite_named_instances(const SuiteOptions&) {
  SuiteResult out{"named-instances"};
  auto expect = [&](bool ok, const std::string& what) {
    out.counts["assertions"] += 1;
    if (!ok) out.failures.push_back(what);
  };
  auto order = [](int a, int b, int c, int u, int v, int w) { return clifford_order(TernaryForm(a, b, c, u, v, w)); };
  auto discs = [](const std::vector<QuadraticWitness>& ws) {
    std::vector<Integer> d;
    for (const auto& w : ws) d.push_back(w.d);
    return d;
  };
  try {
    {
      auto o = order(0, 0, -1, 0, 0, 1);
      auto r = classify(o, {1, 5, false});
      expect(r.discrd == 1, "(0,0,-1,0,0,1) discrd 1");
      expect(residual_type(o, 2) == ResidualType::QuaternionQuotient, "(0,0,-1,0,0,1) quaternion quotient at 2");
      expect(r.basic && is_basic_bruteforce(o, 2), "(0,0,-1,0,0,1) basic");
      bool d1 = false;
      for (const auto& w : r.witnesses) d1 = d1 || (w.d == 1 && w.alpha == QuatElement::basis(3));
      expect(d1, "(0,0,-1,0,0,1) witness d=1 via k");
    }
    {
      auto o = order(1, 1, 1, 0, 0, 0);
      auto r = classify(o, {4, 5, false});
      expect(r.discrd == 4, "(1,1,1,0,0,0) discrd 4");
      expect(residual_type(o, 2) == ResidualType::ResiduallyRamified, "(1,1,1,0,0,0) ramified at 2");
      std::vector<Integer> chain;
      for (const auto& s : idealizer_chain(o, 2)) chain.push_back(s.discrd);
      expect(chain == std::vector<Integer>{4, 2}, "(1,1,1,0,0,0) chain [4,2]");
      expect(r.bass && r.basic, "(1,1,1,0,0,0) Bass");
      expect(discs(r.witnesses) == std::vector<Integer>{-4, -8, -20, -24, -40}, "(1,1,1,0,0,0) witnesses at H=4");
    }
    {
      auto o = order(1, 1, 1, 1, 1, 1);
      auto r = classify(o, {4, 5, false});
      expect(r.discrd == 2, "(1,1,1,1,1,1) discrd 2");
      expect(residual_type(o, 2) == ResidualType::ResiduallyInert, "(1,1,1,1,1,1) inert at 2");
      expect(r.bass && is_bass_local(o, 2), "(1,1,1,1,1,1) Bass");
    }
    {
      auto o = order(0, 0, -2, 0, 0, 2);
      auto r = classify(o, {30, 5, false});
      expect(r.discrd == 8, "(0,0,-2,0,0,2) discrd 8");
      expect(!r.gorenstein && !is_gorenstein_local(o, 2), "(0,0,-2,0,0,2) not Gorenstein");
      expect(!r.basic && !is_basic_bruteforce(o, 2), "(0,0,-2,0,0,2) not basic");
      expect(discrd(radical_idealizer(o, 2).order) == 1, "(0,0,-2,0,0,2) radical idealizer discrd 1");
      expect(r.witnesses.empty(), "(0,0,-2,0,0,2) witness search empty");
    }
    {
      auto o = order(0, 0, -2, 0, 0, 1);
      auto r = classify(o, {4, 5, false});
      expect(r.discrd == 2, "(0,0,-2,0,0,1) discrd 2");
      expect(residual_type(o, 2) == ResidualType::ResiduallySplit, "(0,0,-2,0,0,1) split at 2");
      expect(r.basic && is_basic_bruteforce(o, 2), "(0,0,-2,0,0,1) basic");
    }
  } catch (const Error& e) {
    out.failures.push_back(std::string("exception: ") + e.what());
  }
  out.passed = out.failures.empty();
  return out;
}

inline SuiteResult run_suite(const std::string& name, const SuiteOptions& opt) {
  if (name == "roundtrip") return suite_roundtrip(opt);
  if (name == "gram") return suite_gram(opt);
  if (name == "thm11") return suite_thm11(opt);
  if (name == "cor13") return suite_cor13(opt);
  if (name == "lemma41") return suite_lemma41(opt);
  if (name == "named-instances") return suite_named_instances(opt);
  if (name == "radical") return suite_radical(opt);
  if (name == "thm36") return suite_thm36(opt);
  if (name == "witness") return suite_witness(opt);
  if (name == "chain") return suite_chain(opt);
  throw InputError("unknown suite \"" + name + "\"");
}

inline Json to_json(const SuiteResult& r, std::size_t max_records = 50) {
  Json j;
  j["suite"] = r.name;
  j["passed"] = r.passed;
  Json counts = Json::object();
  for (const auto& [k, v] : r.counts) counts[k] = v;
  j["counts"] = counts;
  j["failure_count"] = r.failures.size();
  Json f = Json::array();
  for (std::size_t n = 0; n < r.failures.size() && n < max_records; ++n) f.push_back(r.failures[n]);
  j["failures"] = f;
  j["notes"] = r.notes;
  return j;
}

}  // namespace qorder
