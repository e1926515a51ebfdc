#pragma once

// JSON encodings. Rationals are strings "p/q" (or "n"); integers that fit in
// 64 bits are JSON numbers, larger ones decimal strings.

#include "qorder/global.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace qorder {

using Json = nlohmann::ordered_json;

#ifndef QORDER_VERSION
#define QORDER_VERSION "0.1.0"
#endif

inline constexpr const char* kVersion = QORDER_VERSION;

inline Json to_json(const Integer& n) {
  if (n >= INT64_MIN && n <= INT64_MAX) return static_cast<std::int64_t>(n);
  return n.str();
}

inline Json to_json(const Rational& q) { return to_string(q); }

inline Json to_json(const TernaryForm& q) {
  Json a = Json::array();
  for (const auto& c : q.coefficients()) a.push_back(to_json(c));
  return a;
}

inline Json to_json(const QuatElement& x) {
  Json a = Json::array();
  for (const auto& c : x.coords) a.push_back(to_json(c));
  return a;
}

inline Json to_json(const Mat4Q& m) {
  Json rows = Json::array();
  for (const auto& r : m) {
    Json row = Json::array();
    for (const auto& c : r) row.push_back(to_json(c));
    rows.push_back(row);
  }
  return rows;
}

inline Json to_json(const QuatLattice& l) { return to_json(l.basis.rows()); }

inline Json order_json(const GoodBasisOrder& o) { return Json{{"form", to_json(o.form())}}; }

inline Json to_json(const QuadraticWitness& w) {
  return Json{{"alpha", to_json(w.alpha)}, {"d", to_json(w.d)}, {"height", w.height}};
}

inline Json to_json(const LocalReport& r) {
  Json j;
  j["p"] = to_json(r.p);
  j["residual_type"] = to_string(r.residual);
  j["gorenstein"] = r.gorenstein;
  j["bass"] = r.bass;
  j["basic_bruteforce"] = r.basic_bruteforce ? Json(*r.basic_bruteforce) : Json(nullptr);
  j["rad_two_gen_dim"] = r.rad_two_gen_dim ? Json(*r.rad_two_gen_dim) : Json(nullptr);
  Json discs = Json::array();
  for (const auto& s : r.chain) discs.push_back(to_json(s.discrd));
  j["chain_discrds"] = discs;
  j["basic_structural"] = r.basic_structural;
  j["eichler_decomposition"] = r.eichler ? to_json(*r.eichler) : Json(nullptr);
  Json chain = Json::array();
  for (const auto& s : r.chain)
    chain.push_back(Json{{"form", to_json(s.order.form())}, {"discrd", to_json(s.discrd)}, {"basis", to_json(s.to_base)}});
  j["idealizer_chain"] = chain;
  if (r.superorder) {
    const auto& w = *r.superorder;
    j["superorder_witness"] = Json{{"case", w.which == NormalFormCase::I ? "i" : "ii"},
                                   {"local_form", to_json(w.local_form)},
                                   {"predicted_form", to_json(w.predicted_form)},
                                   {"form", to_json(w.order.order.form())},
                                   {"basis", to_json(w.order.transition)}};
  } else {
    j["superorder_witness"] = nullptr;
  }
  j["oracle_agreement"] = r.oracle_agreement;
  j["disagreements"] = r.disagreements;
  return j;
}

inline Json to_json(const ClassificationReport& r) {
  Json j;
  j["form"] = to_json(r.form);
  j["discrd"] = to_json(r.discrd);
  Json f = Json::array();
  for (const auto& [p, e] : r.factors) f.push_back(Json::array({to_json(p), e}));
  j["discrd_factors"] = f;
  j["content"] = to_json(r.content);
  j["gorenstein"] = r.gorenstein;
  j["bass"] = r.bass;
  j["basic"] = r.basic;
  j["basic_bruteforce"] = r.basic_bruteforce ? Json(*r.basic_bruteforce) : Json(nullptr);
  Json local = Json::array();
  for (const auto& l : r.local) local.push_back(to_json(l));
  j["local"] = local;
  j["witness_search"] = Json{{"height", r.search.height}, {"count", r.search.count}};
  Json w = Json::array();
  for (const auto& x : r.witnesses) w.push_back(to_json(x));
  j["witnesses"] = w;
  j["inconclusive"] = r.inconclusive;
  j["oracle_agreement"] = r.oracle_agreement;
  j["disagreements"] = r.disagreements;
  return j;
}

inline Integer integer_from_json(const Json& v) {
  if (v.is_number_integer()) return Integer(v.get<std::int64_t>());
  if (v.is_string()) {
    Rational q = parse_rational(v.get<std::string>());
    if (!is_integer(q)) throw InputError("expected an integer, got " + v.dump());
    return numerator(q);
  }
  throw InputError("expected an integer, got " + v.dump());
}

// Accepts [a,b,c,u,v,w] or {"form":[a,b,c,u,v,w]}.
inline TernaryForm form_from_json(const Json& v) {
  const Json& arr = v.is_object() && v.contains("form") ? v.at("form") : v;
  if (!arr.is_array() || arr.size() != 6) throw InputError("a form is a list of six integers [a,b,c,u,v,w]");
  FormCoefficients k;
  for (std::size_t n = 0; n < 6; ++n) k[n] = integer_from_json(arr[n]);
  return TernaryForm(k[0], k[1], k[2], k[3], k[4], k[5]);
}

inline TernaryForm parse_form(const std::string& text) {
  Json v;
  try {
    v = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed form JSON: ") + e.what());
  }
  return form_from_json(v);
}

inline QuatElement element_from_json(const Json& v) {
  if (!v.is_array() || v.size() != 4) throw InputError("an element is a list [t,x,y,z]");
  QuatElement x;
  for (std::size_t n = 0; n < 4; ++n) {
    if (v[n].is_string())
      x.coords[n] = parse_rational(v[n].get<std::string>());
    else
      x.coords[n] = Rational(integer_from_json(v[n]));
  }
  return x;
}

}  // namespace qorder
