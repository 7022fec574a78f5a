// Copyright 2026 The Fouriq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FOURIQ_SERIALIZE_HPP
#define FOURIQ_SERIALIZE_HPP

#include <json.hpp>
#include <string>

#include "fouriq/circuit.hpp"
#include "fouriq/extract.hpp"
#include "fouriq/family.hpp"
#include "fouriq/hamiltonian.hpp"
#include "fouriq/observable.hpp"

namespace fouriq {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Circuit documents
//
// { "n": 2, "d": 1, "gates": [ {"type": "fixed", "name": "H", "targets": [0]},
//   {"type": "fixed", "matrix": [[re, im], ...], "targets": [0, 1]},
//   {"type": "encode", "pauli": "ZI", "param": 0} ] }
//
// Pauli strings are written most-significant-qubit-first. Encoding gates in
// a non-default convention carry an extra "scale" field; a "metadata" string
// is kept when present.
// ---------------------------------------------------------------------------

namespace detail {

inline json matrix_to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      rows.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
  return rows;
}

inline Eigen::MatrixXcd matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ParseError(where + ": matrix must be a non-empty array");
  const size_t entries = j.size();
  long dim = 1;
  while (static_cast<size_t>(dim) * dim < entries) ++dim;
  if (static_cast<size_t>(dim) * dim != entries)
    throw ParseError(where + ": matrix entry count is not a square");
  Eigen::MatrixXcd m(dim, dim);
  for (long i = 0; i < dim * dim; ++i) {
    const json& e = j[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw ParseError(where + ": matrix entries must be [re, im] pairs");
    m(i / dim, i % dim) = cplx(e[0].get<double>(), e[1].get<double>());
  }
  return m;
}

inline void require_field(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ParseError(where + ": missing field \"" + key + "\"");
}

}  // namespace detail

inline json circuit_to_json(const ParametrizedCircuit& c) {
  json doc;
  doc["n"] = c.n;
  doc["d"] = c.d;
  json gates = json::array();
  for (const auto& g : c.gates) {
    json jg;
    if (const auto* fixed = std::get_if<FixedGate>(&g)) {
      jg["type"] = "fixed";
      if (!fixed->name.empty()) jg["name"] = fixed->name;
      else jg["matrix"] = detail::matrix_to_json(fixed->unitary);
      jg["targets"] = fixed->targets;
    } else {
      const auto& enc = std::get<EncodeGate>(g);
      jg["type"] = "encode";
      jg["pauli"] = enc.pauli.str();
      jg["param"] = enc.param;
      if (std::abs(enc.scale - kPi) > 1e-15) jg["scale"] = enc.scale;
    }
    gates.push_back(std::move(jg));
  }
  doc["gates"] = std::move(gates);
  if (!c.metadata.empty()) doc["metadata"] = c.metadata;
  return doc;
}

inline std::string serialize(const ParametrizedCircuit& c) {
  require_valid(c);
  return circuit_to_json(c).dump(2) + "\n";
}

namespace detail {

inline GateSpec gate_from_json(const json& jg, const std::string& where) {
  require_field(jg, "type", where);
  const std::string type = jg["type"].get<std::string>();
  if (type == "fixed") {
    require_field(jg, "targets", where);
    std::vector<int> targets = jg["targets"].get<std::vector<int>>();
    if (jg.contains("name") == jg.contains("matrix"))
      throw ParseError(where + ": fixed gate needs exactly one of \"name\" or \"matrix\"");
    if (jg.contains("name")) {
      try {
        return make_named_gate(jg["name"].get<std::string>(), std::move(targets));
      } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.what());
      }
    }
    return FixedGate{matrix_from_json(jg["matrix"], where), std::move(targets), ""};
  }
  if (type == "encode") {
    require_field(jg, "pauli", where);
    require_field(jg, "param", where);
    EncodeGate enc;
    try {
      enc.pauli = PauliString::from_string(jg["pauli"].get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where + ".pauli: " + e.what());
    }
    enc.param = jg["param"].get<int>();
    enc.scale = jg.value("scale", kPi);
    return enc;
  }
  throw ParseError(where + ": unknown gate type \"" + type + "\"");
}

}  // namespace detail

inline ParametrizedCircuit circuit_from_json(const json& doc) {
  detail::require_field(doc, "n", "circuit");
  detail::require_field(doc, "d", "circuit");
  detail::require_field(doc, "gates", "circuit");
  ParametrizedCircuit c;
  c.n = doc["n"].get<int>();
  c.d = doc["d"].get<int>();
  c.metadata = doc.value("metadata", "");
  const json& gates = doc["gates"];
  if (!gates.is_array()) throw ParseError("circuit: \"gates\" must be an array");
  for (size_t i = 0; i < gates.size(); ++i)
    c.gates.push_back(detail::gate_from_json(gates[i], "gates[" + std::to_string(i) + "]"));
  const ValidationReport report = validate(c);
  if (!report.ok()) throw ParseError("circuit: " + report.violations.front());
  return c;
}

inline ParametrizedCircuit parse_circuit(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("circuit: ") + e.what());
  }
  return circuit_from_json(doc);
}

// ---------------------------------------------------------------------------
// Observables
// ---------------------------------------------------------------------------

inline json observable_to_json(const Observable& obs) {
  json j;
  if (const auto* p = std::get_if<PauliObs>(&obs)) {
    j["pauli"] = p->p.str();
  } else if (const auto* c = std::get_if<CombinationObs>(&obs)) {
    json terms = json::array();
    for (const auto& [b, pauli] : c->terms)
      terms.push_back(json{{"beta", b}, {"pauli", pauli.str()}});
    j["terms"] = std::move(terms);
  } else {
    j["zero_projector"] = true;
  }
  return j;
}

inline Observable observable_from_json(const json& j) {
  if (j.contains("pauli")) return PauliObs{PauliString::from_string(j["pauli"].get<std::string>())};
  if (j.contains("terms")) {
    CombinationObs comb;
    for (const auto& t : j["terms"]) {
      detail::require_field(t, "beta", "observable term");
      detail::require_field(t, "pauli", "observable term");
      comb.terms.emplace_back(t["beta"].get<double>(),
                              PauliString::from_string(t["pauli"].get<std::string>()));
    }
    return comb;
  }
  if (j.contains("zero_projector") && j["zero_projector"].get<bool>()) return ZeroProjectorObs{};
  throw ParseError("observable: expected \"pauli\", \"terms\", or \"zero_projector\"");
}

// ---------------------------------------------------------------------------
// Hamiltonian documents
//
// { "n": 3, "tau": 1.0,
//   "fixed_terms": [ {"bit": 0, "pauli": "ZZI"}, {"const": 0.5, "pauli": "IZZ"} ],
//   "alpha_terms": [ {"param": 0, "pauli": "XII"} ] }
// ---------------------------------------------------------------------------

inline json hamiltonian_to_json(const ParamHamiltonian& h) {
  json doc;
  doc["n"] = h.n;
  doc["tau"] = h.tau;
  json fixed = json::array();
  for (const auto& t : h.fixed_terms) {
    json jt;
    if (const auto* ib = std::get_if<InputBit>(&t.coeff)) jt["bit"] = ib->index;
    else jt["const"] = std::get<Constant>(t.coeff).value;
    jt["pauli"] = t.pauli.str();
    fixed.push_back(std::move(jt));
  }
  doc["fixed_terms"] = std::move(fixed);
  json alphas = json::array();
  for (const auto& t : h.alpha_terms)
    alphas.push_back(json{{"param", t.param}, {"pauli", t.pauli.str()}});
  doc["alpha_terms"] = std::move(alphas);
  return doc;
}

inline ParamHamiltonian hamiltonian_from_json(const json& doc) {
  detail::require_field(doc, "n", "hamiltonian");
  detail::require_field(doc, "tau", "hamiltonian");
  ParamHamiltonian h;
  h.n = doc["n"].get<int>();
  h.tau = doc["tau"].get<double>();
  for (const auto& jt : doc.value("fixed_terms", json::array())) {
    detail::require_field(jt, "pauli", "fixed term");
    FixedTerm t;
    if (jt.contains("bit")) t.coeff = InputBit{jt["bit"].get<int>()};
    else if (jt.contains("const")) t.coeff = Constant{jt["const"].get<double>()};
    else throw ParseError("fixed term: needs \"bit\" or \"const\"");
    t.pauli = PauliString::from_string(jt["pauli"].get<std::string>());
    h.fixed_terms.push_back(std::move(t));
  }
  for (const auto& jt : doc.value("alpha_terms", json::array())) {
    detail::require_field(jt, "param", "alpha term");
    detail::require_field(jt, "pauli", "alpha term");
    h.alpha_terms.push_back(
        AlphaTerm{jt["param"].get<int>(), PauliString::from_string(jt["pauli"].get<std::string>())});
  }
  h.check();
  return h;
}

inline ParamHamiltonian parse_hamiltonian(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("hamiltonian: ") + e.what());
  }
  return hamiltonian_from_json(doc);
}

// ---------------------------------------------------------------------------
// Concept-family documents
//
// Template kind: the circuit document plus "input_bits" and per-fixed-gate
// optional "bit" conditions, and an "observable".
// Hamiltonian kind: an embedded hamiltonian document plus "r".
// ---------------------------------------------------------------------------

inline json family_to_json(const ConceptFamily& fam) {
  json doc;
  if (const auto* t = std::get_if<CircuitTemplate>(&fam.source)) {
    doc["kind"] = "template";
    doc["n"] = t->n;
    doc["d"] = t->d;
    doc["input_bits"] = t->input_bits;
    json gates = json::array();
    for (const auto& tg : t->gates) {
      ParametrizedCircuit one;
      one.n = t->n;
      one.d = std::max(1, t->d);
      one.gates.push_back(tg.gate);
      json jg = circuit_to_json(one)["gates"][0];
      if (tg.bit >= 0) jg["bit"] = tg.bit;
      gates.push_back(std::move(jg));
    }
    doc["gates"] = std::move(gates);
  } else {
    const auto& hc = std::get<HamiltonianConcept>(fam.source);
    doc["kind"] = "hamiltonian";
    doc["hamiltonian"] = hamiltonian_to_json(hc.h);
    doc["r"] = hc.r;
  }
  doc["observable"] = observable_to_json(fam.obs);
  return doc;
}

inline ConceptFamily family_from_json(const json& doc) {
  detail::require_field(doc, "kind", "family");
  detail::require_field(doc, "observable", "family");
  ConceptFamily fam;
  fam.obs = observable_from_json(doc["observable"]);
  const std::string kind = doc["kind"].get<std::string>();
  if (kind == "template") {
    detail::require_field(doc, "n", "family");
    detail::require_field(doc, "d", "family");
    detail::require_field(doc, "input_bits", "family");
    CircuitTemplate t;
    t.n = doc["n"].get<int>();
    t.d = doc["d"].get<int>();
    t.input_bits = doc["input_bits"].get<int>();
    const json& gates = doc["gates"];
    for (size_t i = 0; i < gates.size(); ++i) {
      TemplateGate tg;
      tg.gate = detail::gate_from_json(gates[i], "gates[" + std::to_string(i) + "]");
      tg.bit = gates[i].value("bit", -1);
      t.gates.push_back(std::move(tg));
    }
    t.check();
    fam.source = std::move(t);
  } else if (kind == "hamiltonian") {
    detail::require_field(doc, "hamiltonian", "family");
    detail::require_field(doc, "r", "family");
    HamiltonianConcept hc;
    hc.h = hamiltonian_from_json(doc["hamiltonian"]);
    hc.r = doc["r"].get<long>();
    fam.source = std::move(hc);
  } else {
    throw ParseError("family: unknown kind \"" + kind + "\"");
  }
  return fam;
}

inline ConceptFamily parse_family(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("family: ") + e.what());
  }
  return family_from_json(doc);
}

// ---------------------------------------------------------------------------
// Fourier-table export
// ---------------------------------------------------------------------------

inline json table_to_json(const FourierTable& t) {
  json doc;
  doc["lattice"] = json{{"d", t.lattice.d},
                        {"bounds", t.lattice.bounds},
                        {"kind", t.lattice.kind == LatticeKind::State ? "state" : "expectation"}};
  doc["base"] = t.base;
  doc["provenance"] = t.provenance.str();
  json coeffs = json::array();
  for (long i = 0; i < t.lattice.size(); ++i) {
    json row;
    row["l"] = t.lattice.point(i);
    row["re"] = t.coeffs[i].real();
    row["im"] = t.coeffs[i].imag();
    coeffs.push_back(std::move(row));
  }
  doc["coefficients"] = std::move(coeffs);
  return doc;
}

inline std::string table_to_csv(const FourierTable& t, const std::string& header_comment = "") {
  std::string out;
  if (!header_comment.empty()) out += "# " + header_comment + "\n";
  for (int s = 0; s < t.lattice.d; ++s) out += "l_" + std::to_string(s) + ",";
  out += "re,im,provenance\n";
  const std::string prov = t.provenance.str();
  char buf[64];
  for (long i = 0; i < t.lattice.size(); ++i) {
    for (long v : t.lattice.point(i)) out += std::to_string(v) + ",";
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,", t.coeffs[i].real(), t.coeffs[i].imag());
    out += buf;
    out += prov + "\n";
  }
  return out;
}

}  // namespace fouriq

#endif  // FOURIQ_SERIALIZE_HPP
