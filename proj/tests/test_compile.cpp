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

#include <catch2/catch_amalgamated.hpp>

#include "fouriq/compile.hpp"
#include "fouriq/extract.hpp"
#include "test_util.hpp"

using namespace fouriq;

namespace {

ParametrizedCircuit cosine_circuit() {
  ParametrizedCircuit c;
  c.n = 1;
  c.d = 1;
  c.gates.push_back(make_named_gate("H", {0}));
  c.gates.push_back(EncodeGate{PauliString::single(1, 0, Pauli::Z), 0});
  return c;
}

/// Checks the defining property of the state compilation: phase-weighting
/// the frequency register reproduces the original circuit's amplitudes.
void check_state_reconstruction(const ParametrizedCircuit& c, std::span<const double> alpha,
                                double tol = 1e-9) {
  const CompiledFourierCircuit cc = compile_state(c);
  const StateVector compiled = run_compiled(cc);
  const StateVector direct = run(c, alpha);
  for (long k = 0; k < direct.dim(); ++k) {
    cplx acc{0, 0};
    for (long li = 0; li < cc.lattice.size(); ++li) {
      const std::vector<long> l = cc.lattice.point(li);
      double phase = 0;
      for (int s = 0; s < cc.lattice.d; ++s) phase += cc.base * alpha[s] * static_cast<double>(l[s]);
      acc += compiled.amps[cc.layout.index_of(l, k)] * std::polar(1.0, phase);
    }
    REQUIRE(std::abs(acc - direct.amps[k]) < tol);
  }
}

}  // namespace

TEST_CASE("compiling a circuit without encodings adds no frequency qubits") {
  ParametrizedCircuit c;
  c.n = 2;
  c.d = 1;
  c.gates.push_back(make_named_gate("H", {0}));
  c.gates.push_back(make_named_gate("CNOT", {0, 1}));
  const CompiledFourierCircuit cc = compile_state(c);
  REQUIRE(cc.lattice.size() == 1);
  for (const auto& f : cc.layout.freq) REQUIRE(f.qubits == 0);
  // The compiled circuit acts as the original on the circuit register.
  const StateVector st = run_compiled(cc);
  const double alpha[1] = {0.0};
  const StateVector direct = run(c, alpha);
  const double s = 1.0 / std::sqrt(2.0);
  REQUIRE(std::abs(st.amps[cc.layout.index_of({0}, 0)] - cplx{s, 0}) < 1e-12);
  REQUIRE(std::abs(st.amps[cc.layout.index_of({0}, 3)] - direct.amps[3]) < 1e-12);
}

TEST_CASE("state compilation of the cosine circuit splits the windings") {
  const CompiledFourierCircuit cc = compile_state(cosine_circuit());
  const StateVector st = run_compiled(cc);
  const double s = 1.0 / std::sqrt(2.0);
  REQUIRE(std::abs(st.amps[cc.layout.index_of({+1}, 0)] - cplx{s, 0}) < 1e-12);
  REQUIRE(std::abs(st.amps[cc.layout.index_of({-1}, 1)] - cplx{s, 0}) < 1e-12);
  // Everything else is zero.
  double rest = 0;
  for (long i = 0; i < st.dim(); ++i) rest += std::norm(st.amps[i]);
  REQUIRE(rest == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("frequency-register reconstruction matches direct simulation") {
  RngStream rng = make_stream(271828, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const ParametrizedCircuit c = test::random_circuit(rng);
    for (int rep = 0; rep < 3; ++rep) {
      const std::vector<double> alpha = test::random_alpha(rng, c.d);
      check_state_reconstruction(c, alpha);
    }
  }
}

TEST_CASE("two-block circuit compiles to the expected gate skeleton") {
  // One single-qubit Z encoding between two fixed blocks, then a three-qubit
  // parity-network encoding.
  ParametrizedCircuit c;
  c.n = 3;
  c.d = 2;
  c.gates.push_back(make_named_gate("H", {0}));
  c.gates.push_back(EncodeGate{PauliString::single(3, 0, Pauli::Z), 0});
  c.gates.push_back(make_named_gate("CNOT", {0, 1}));
  c.gates.push_back(EncodeGate{PauliString::from_string("ZZZ"), 1});
  const CompiledFourierCircuit cc = compile_state(c);

  // Expected: H, [CNOT shift shift CNOT], CNOT, [3xCNOT shift shift 3xCNOT]
  REQUIRE(cc.gates.size() == 1 + 4 + 1 + 8);
  REQUIRE(std::holds_alternative<DenseCompiledGate>(cc.gates[0].op));
  // Parity fan-in targets the ancilla, controlled on the circuit qubit.
  const auto& fanin = std::get<DenseCompiledGate>(cc.gates[1].op);
  REQUIRE(fanin.targets == std::vector<int>{cc.layout.ancilla});
  REQUIRE(cc.gates[1].controls.size() == 1);
  // Winding shifts: even parity raises, odd parity lowers.
  const auto& up = std::get<ShiftGate>(cc.gates[2].op);
  REQUIRE(up.delta == +1);
  REQUIRE(cc.gates[2].controls.front().value == false);
  const auto& down = std::get<ShiftGate>(cc.gates[3].op);
  REQUIRE(down.delta == -1);
  REQUIRE(cc.gates[3].controls.front().value == true);
  // The wide encoding uses a three-CNOT fan-in on each side of its shifts.
  int cnots = 0;
  for (size_t i = 6; i < cc.gates.size(); ++i)
    if (const auto* d = std::get_if<DenseCompiledGate>(&cc.gates[i].op))
      if (d->targets == std::vector<int>{cc.layout.ancilla}) ++cnots;
  REQUIRE(cnots == 6);
}

TEST_CASE("ancilla returns to zero after every encoding block") {
  RngStream rng = make_stream(271828, 1);
  for (int trial = 0; trial < 6; ++trial) {
    test::RandomCircuitOptions opt;
    opt.max_n = 3;
    const ParametrizedCircuit c = normalize_to_z(test::random_circuit(rng, opt));
    const CompiledFourierCircuit cc = compile_state(c);
    // Reconstruct block boundaries: fixed gates emit one compiled gate,
    // encodings emit 2 support + 2.
    std::vector<size_t> boundaries;
    size_t pos = 0;
    for (const auto& g : c.gates) {
      if (std::holds_alternative<FixedGate>(g)) pos += 1;
      else pos += 2 * std::get<EncodeGate>(g).pauli.support().size() + 2;
      boundaries.push_back(pos);
    }
    for (long basis = 0; basis < checked_pow2(c.n); ++basis) {
      StateVector st(cc.layout.total);
      st.amps[0] = 0;
      st.amps[cc.layout.index_of(std::vector<long>(c.d, 0), basis)] = 1;
      size_t next_boundary = 0;
      for (size_t gi = 0; gi < cc.gates.size(); ++gi) {
        apply_compiled_gate(st, cc.layout, cc.gates[gi]);
        while (next_boundary < boundaries.size() && boundaries[next_boundary] == gi + 1) {
          double p_anc = 0;
          for (long i = 0; i < st.dim(); ++i)
            if (st.bit(i, cc.layout.ancilla)) p_anc += std::norm(st.amps[i]);
          REQUIRE(p_anc < 1e-12);
          ++next_boundary;
        }
      }
    }
  }
}

TEST_CASE("expectation compilation reproduces the cosine spectrum") {
  const ParametrizedCircuit c = cosine_circuit();
  const CompiledFourierCircuit cc = compile_expectation(c, PauliObs{PauliString::from_string("X")});
  const StateVector st = run_compiled(cc);
  REQUIRE(std::abs(st.amps[cc.layout.index_of({+2})] - cplx{0.5, 0}) < 1e-12);
  REQUIRE(std::abs(st.amps[cc.layout.index_of({-2})] - cplx{0.5, 0}) < 1e-12);
  REQUIRE(std::abs(st.amps[cc.layout.index_of({0})]) < 1e-12);
  REQUIRE(std::abs(st.amps[cc.layout.index_of({+1})]) < 1e-12);
}

TEST_CASE("expectation compilation of a commuting observable vanishes") {
  const CompiledFourierCircuit cc =
      compile_expectation(cosine_circuit(), PauliObs{PauliString::from_string("Z")});
  const StateVector st = run_compiled(cc);
  for (long li = 0; li < cc.lattice.size(); ++li)
    REQUIRE(std::abs(st.amps[cc.layout.index_of(cc.lattice.point(li))]) < 1e-12);
}

TEST_CASE("identity observable concentrates at frequency zero") {
  RngStream rng = make_stream(271828, 2);
  const ParametrizedCircuit c = test::random_circuit(rng);
  const CompiledFourierCircuit cc =
      compile_expectation(c, PauliObs{PauliString::identity(c.n)});
  const StateVector st = run_compiled(cc);
  const std::vector<long> zero(c.d, 0);
  REQUIRE(std::abs(st.amps[cc.layout.index_of(zero)] - cplx{1, 0}) < 1e-9);
}

TEST_CASE("success probability") {
  SECTION("constant one") {
    RngStream rng = make_stream(271828, 3);
    const ParametrizedCircuit c = test::random_circuit(rng);
    const CompiledFourierCircuit cc =
        compile_expectation(c, PauliObs{PauliString::identity(c.n)});
    REQUIRE(success_probability(cc) == Catch::Approx(1.0).margin(1e-9));
  }
  SECTION("cosine has half its mass on the zero subspace") {
    const CompiledFourierCircuit cc =
        compile_expectation(cosine_circuit(), PauliObs{PauliString::from_string("X")});
    REQUIRE(success_probability(cc) == Catch::Approx(0.5).margin(1e-9));
  }
  SECTION("vanishing function") {
    const CompiledFourierCircuit cc =
        compile_expectation(cosine_circuit(), PauliObs{PauliString::from_string("Z")});
    REQUIRE(success_probability(cc) == Catch::Approx(0.0).margin(1e-12));
  }
  SECTION("state compilations are rejected") {
    REQUIRE_THROWS_AS(success_probability(compile_state(cosine_circuit())), std::invalid_argument);
  }
}

TEST_CASE("success probability equals the all-zero post-selection probability") {
  RngStream rng = make_stream(271828, 4);
  for (int trial = 0; trial < 5; ++trial) {
    test::RandomCircuitOptions opt;
    opt.max_n = 3;
    const ParametrizedCircuit c = test::random_circuit(rng, opt);
    const PauliString p = test::random_pauli(rng, c.n);
    const CompiledFourierCircuit cc = compile_expectation(c, PauliObs{p});
    const StateVector st = run_compiled(cc);
    std::vector<int> qubits;
    std::vector<bool> want;
    for (int q = cc.layout.ancilla; q < cc.layout.total; ++q) {
      qubits.push_back(q);
      want.push_back(false);
    }
    const PostselectResult ps = postselect(st, qubits, want);
    REQUIRE(success_probability(cc) == Catch::Approx(ps.probability).margin(1e-9));
  }
}

TEST_CASE("linear combinations of strings compile through the select register") {
  const ParametrizedCircuit c = cosine_circuit();
  SECTION("a two-term sum matches the sum of tables") {
    CombinationObs comb;
    comb.terms.emplace_back(0.75, PauliString::from_string("X"));
    comb.terms.emplace_back(-0.5, PauliString::from_string("Z"));
    const FourierTable t = extract_table(c, comb, ExtractMode::Exact());
    const FourierTable tx = extract_table(c, PauliObs{PauliString::from_string("X")}, ExtractMode::Exact());
    const FourierTable tz = extract_table(c, PauliObs{PauliString::from_string("Z")}, ExtractMode::Exact());
    for (long i = 0; i < t.lattice.size(); ++i)
      REQUIRE(std::abs(t.coeffs[i] - (0.75 * tx.coeffs[i] - 0.5 * tz.coeffs[i])) < 1e-9);
  }
  SECTION("single-term combinations scale the Pauli table") {
    CombinationObs comb;
    comb.terms.emplace_back(-2.0, PauliString::from_string("X"));
    const FourierTable t = extract_table(c, comb, ExtractMode::Exact());
    REQUIRE(std::abs(t.at({2}) - cplx{-1.0, 0}) < 1e-9);
  }
  SECTION("all-zero coefficients are rejected") {
    CombinationObs comb;
    comb.terms.emplace_back(0.0, PauliString::from_string("X"));
    REQUIRE_THROWS_AS(compile_expectation(c, comb), std::invalid_argument);
  }
}

TEST_CASE("zero projector compiles the doubled register") {
  // H Z(alpha) H gives <0|U|0> = cos(pi alpha), so the zero-outcome
  // probability is cos^2 with spectrum {0: 1/2, +-2: 1/4}.
  ParametrizedCircuit c;
  c.n = 1;
  c.d = 1;
  c.gates.push_back(make_named_gate("H", {0}));
  c.gates.push_back(EncodeGate{PauliString::single(1, 0, Pauli::Z), 0});
  c.gates.push_back(make_named_gate("H", {0}));
  const CompiledFourierCircuit cc = compile_expectation(c, ZeroProjectorObs{});
  REQUIRE(cc.layout.circuit_qubits == 2);
  const StateVector st = run_compiled(cc);
  REQUIRE(std::abs(st.amps[cc.layout.index_of({0})] - cplx{0.5, 0}) < 1e-12);
  REQUIRE(std::abs(st.amps[cc.layout.index_of({2})] - cplx{0.25, 0}) < 1e-12);
  REQUIRE(std::abs(st.amps[cc.layout.index_of({-2})] - cplx{0.25, 0}) < 1e-12);
}

TEST_CASE("qubit budget is enforced") {
  ParametrizedCircuit c;
  c.n = 2;
  c.d = 1;
  for (int i = 0; i < 40; ++i)
    c.gates.push_back(EncodeGate{PauliString::single(2, 0, Pauli::Z), 0});
  Budget tight;
  tight.max_total_qubits = 8;
  REQUIRE_THROWS_AS(compile_expectation(c, PauliObs{PauliString::from_string("ZI")}, tight),
                    BudgetError);
}

TEST_CASE("expectation tables obey conjugate symmetry and Parseval") {
  RngStream rng = make_stream(271828, 5);
  for (int trial = 0; trial < 4; ++trial) {
    test::RandomCircuitOptions opt;
    opt.max_n = 3;
    const ParametrizedCircuit c = test::random_circuit(rng, opt);
    const PauliString p = test::random_pauli(rng, c.n);
    const FourierTable t = extract_table(c, PauliObs{p}, ExtractMode::Exact());
    for (long i = 0; i < t.lattice.size(); ++i) {
      std::vector<long> l = t.lattice.point(i);
      for (long& v : l) v = -v;
      REQUIRE(std::abs(t.coeffs[i] - std::conj(t.at(l))) < 1e-9);
    }
    const double mean_sq = grid_mean_square(c, PauliObs{p});
    REQUIRE(t.norm_sq() == Catch::Approx(mean_sq).margin(1e-9));
  }
}
