#ifndef BRAKET_MODEL_FILE_HPP
#define BRAKET_MODEL_FILE_HPP

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "braket/dsl.hpp"
#include "braket/error.hpp"
#include "braket/hilbert.hpp"
#include "braket/matrix.hpp"
#include "braket/model.hpp"
#include "braket/observable.hpp"

namespace braket {

// Model description document. Complex entries are always two-element
// [re, im] arrays. Matrices are validated Hermitian on load; names are
// unique across observables and vectors and must avoid the DSL
// builtins. The optional "composite" list names the factor observable
// of each slot; with exactly one observable it defaults to that
// observable on every slot.
struct ModelFile {
  struct ExpressionCheck {
    std::string expr;
    std::optional<Cplx> expect;
  };

  ModelConfig config;
  std::vector<std::pair<std::string, FactorObservable>> observables;
  std::vector<std::pair<std::string, HilbertVector>> vectors;
  std::vector<std::string> composite_names;
  std::vector<std::string> suites;
  std::vector<ExpressionCheck> expressions;

  bool has_composite() const { return !composite_names.empty(); }

  CompositeObservable composite() const {
    if (!has_composite()) {
      throw model_error("model declares no composite observable; add a \"composite\" list "
                        "or exactly one observable");
    }
    std::vector<FactorObservable> ops;
    ops.reserve(composite_names.size());
    for (const std::string &name : composite_names) ops.push_back(find_observable(name));
    return CompositeObservable(std::move(ops));
  }

  const FactorObservable &find_observable(const std::string &name) const {
    for (const auto &[obs_name, op] : observables) {
      if (obs_name == name) return op;
    }
    throw model_error("unknown observable '" + name + "'");
  }

  dsl::Bindings bindings() const {
    dsl::Bindings b;
    b.config = config;
    for (const auto &[name, vec] : vectors) b.vectors.emplace(name, vec);
    for (const auto &[name, op] : observables) b.operators.emplace(name, op.matrix());
    if (has_composite()) b.composite = composite().dense();
    return b;
  }

  static ModelFile from_json_text(const std::string &text);
  static ModelFile load(const std::string &path);
};

namespace detail {

using Json = nlohmann::ordered_json;

inline Cplx parse_complex(const Json &j, const std::string &where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw model_error(where + ": complex entries must be [re, im] number pairs");
  }
  return Cplx{j[0].get<double>(), j[1].get<double>()};
}

inline HilbertVector parse_vector(const Json &j, std::size_t dim, const std::string &where) {
  if (!j.is_array() || j.size() != dim) {
    throw model_error(where + ": expected an array of " + std::to_string(dim) + " complex entries");
  }
  std::vector<Cplx> coords;
  coords.reserve(dim);
  for (const Json &entry : j) coords.push_back(parse_complex(entry, where));
  return HilbertVector(std::move(coords));
}

inline CMatrix parse_matrix(const Json &j, std::size_t dim, const std::string &where) {
  if (!j.is_array() || j.size() != dim) {
    throw model_error(where + ": expected a " + std::to_string(dim) + "x" + std::to_string(dim) +
                      " matrix");
  }
  CMatrix m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const Json &row = j[r];
    if (!row.is_array() || row.size() != dim) {
      throw model_error(where + ": row " + std::to_string(r) + " must have " +
                        std::to_string(dim) + " entries");
    }
    for (std::size_t c = 0; c < dim; ++c) {
      m.at(r, c) = parse_complex(row[c], where + "[" + std::to_string(r) + "][" +
                                             std::to_string(c) + "]");
    }
  }
  return m;
}

} // namespace detail

inline ModelFile ModelFile::from_json_text(const std::string &text) {
  detail::Json doc;
  try {
    doc = detail::Json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw model_error(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw model_error("config must be a JSON object");

  ModelFile model;
  if (!doc.contains("dim") || !doc["dim"].is_number_unsigned()) {
    throw model_error("config: \"dim\" must be a positive integer");
  }
  if (!doc.contains("factors") || !doc["factors"].is_number_unsigned()) {
    throw model_error("config: \"factors\" must be a positive integer");
  }
  const std::size_t dim = doc["dim"].get<std::size_t>();
  const std::size_t factors = doc["factors"].get<std::size_t>();
  double tol = kDefaultTol;
  if (doc.contains("tol")) {
    if (!doc["tol"].is_number()) throw model_error("config: \"tol\" must be a number");
    tol = doc["tol"].get<double>();
  }
  model.config = ModelConfig(dim, factors, tol);

  std::vector<std::string> seen_names;
  auto claim_name = [&](const std::string &name, const char *what) {
    if (dsl::Bindings::reserved(name)) {
      throw model_error(std::string("config: ") + what + " name '" + name + "' is reserved");
    }
    for (const std::string &existing : seen_names) {
      if (existing == name) {
        throw model_error(std::string("config: duplicate name '") + name + "'");
      }
    }
    seen_names.push_back(name);
  };

  if (doc.contains("observables")) {
    if (!doc["observables"].is_object()) throw model_error("config: \"observables\" must be an object");
    for (const auto &[name, value] : doc["observables"].items()) {
      claim_name(name, "observable");
      CMatrix m = detail::parse_matrix(value, dim, "observable '" + name + "'");
      const double defect = m.hermiticity_defect();
      if (defect > tol) {
        throw model_error("observable '" + name + "' is not Hermitian (max asymmetry " +
                          std::to_string(defect) + ")");
      }
      model.observables.emplace_back(name, FactorObservable(std::move(m), tol));
    }
  }

  if (doc.contains("vectors")) {
    if (!doc["vectors"].is_object()) throw model_error("config: \"vectors\" must be an object");
    for (const auto &[name, value] : doc["vectors"].items()) {
      claim_name(name, "vector");
      model.vectors.emplace_back(name, detail::parse_vector(value, dim, "vector '" + name + "'"));
    }
  }

  if (doc.contains("composite")) {
    if (!doc["composite"].is_array() || doc["composite"].size() != factors) {
      throw model_error("config: \"composite\" must list one observable name per factor");
    }
    for (const auto &entry : doc["composite"]) {
      if (!entry.is_string()) throw model_error("config: \"composite\" entries must be names");
      model.composite_names.push_back(entry.get<std::string>());
    }
    for (const std::string &name : model.composite_names) model.find_observable(name);
  } else if (model.observables.size() == 1) {
    model.composite_names.assign(factors, model.observables.front().first);
  }

  if (doc.contains("suites")) {
    if (!doc["suites"].is_array()) throw model_error("config: \"suites\" must be an array");
    for (const auto &entry : doc["suites"]) {
      if (!entry.is_string()) throw model_error("config: \"suites\" entries must be names");
      model.suites.push_back(entry.get<std::string>());
    }
  }

  if (doc.contains("expressions")) {
    if (!doc["expressions"].is_array()) throw model_error("config: \"expressions\" must be an array");
    for (const auto &entry : doc["expressions"]) {
      ExpressionCheck check;
      if (entry.is_string()) {
        check.expr = entry.get<std::string>();
      } else if (entry.is_object() && entry.contains("expr") && entry["expr"].is_string()) {
        check.expr = entry["expr"].get<std::string>();
        if (entry.contains("expect")) {
          check.expect = detail::parse_complex(entry["expect"], "expression expectation");
        }
      } else {
        throw model_error("config: expression entries must be strings or {expr, expect} objects");
      }
      model.expressions.push_back(std::move(check));
    }
  }

  return model;
}

inline ModelFile ModelFile::load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw model_error("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str());
}

} // namespace braket

#endif
