#pragma once

#include <string>

#include <json.hpp>

#include "diracflow/algebra.hpp"

namespace diracflow {

using Json = nlohmann::ordered_json;

/// Term schema: {"terms":[{"beta":0|1,"word":["O",...],"coeff":{"<k>":["<rat>",...]}}]}
/// with terms in canonical order and decay keys ascending.
inline Json to_json(const OperatorExpr& e) {
  Json terms = Json::array();
  for (const auto& [w, c] : e.terms()) {
    Json word = Json::array();
    for (Generator g : w.factors) word.push_back(std::string(1, generator_name(g)));
    Json coeff = Json::object();
    for (const auto& [k, poly] : c.parts()) {
      Json coeffs = Json::array();
      for (const auto& r : poly) coeffs.push_back(r.to_string());
      coeff[std::to_string(k)] = std::move(coeffs);
    }
    terms.push_back(Json{{"beta", w.beta ? 1 : 0},
                         {"word", std::move(word)},
                         {"coeff", std::move(coeff)}});
  }
  return Json{{"terms", std::move(terms)}};
}

inline OperatorExpr expr_from_json(const Json& j) {
  OperatorExpr e;
  for (const auto& term : j.at("terms")) {
    std::vector<OperatorExpr::RawFactor> raw;
    if (term.at("beta").get<int>() != 0) raw.push_back({true, Generator::O, 1});
    for (const auto& name : term.at("word")) {
      const std::string s = name.get<std::string>();
      if (s.size() != 1) throw std::invalid_argument("bad generator name '" + s + "'");
      Generator g;
      switch (s[0]) {
        case 'O': g = Generator::O; break;
        case 'E': g = Generator::E; break;
        case 'F': g = Generator::F; break;
        default: throw std::invalid_argument("bad generator name '" + s + "'");
      }
      raw.push_back({false, g, 1});
    }
    ExpPoly coeff;
    for (const auto& [key, coeffs] : term.at("coeff").items()) {
      int k = std::stoi(key);
      int power = 0;
      for (const auto& c : coeffs) {
        coeff += ExpPoly::monomial(Rational::from_string(c.get<std::string>()), power, k);
        ++power;
      }
    }
    e += OperatorExpr::from_raw(coeff, raw);
  }
  return e;
}

}  // namespace diracflow
