// Copyright 2026 The tcgsim Authors
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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "tcg/circuit.h"
#include "tcg/composer.h"

namespace tcg {
namespace {

constexpr double kPi = std::numbers::pi;

// Closed-form gate counts (n1q, n2q, depth) of the library circuits.
Counts ghz_cz(int m) { return {2 * m - 1, m - 1, 2 * m - 1}; }
Counts ghz_cu(int m) { return {1, m - 1, m}; }
Counts w_cz(int m) { return {5 * m - 6, 3 * m - 5, 6 * m - 9}; }
Counts w_cu(int m) { return {2, 2 * m - 3, 2 * m - 1}; }

TEST(DepthTable, LibraryCircuitsFollowTheClosedForms) {
    for (int m = 3; m <= 10; m++) {
        EXPECT_EQ(depth_and_counts(ghz_circuit(m, 0, "CZ")), ghz_cz(m)) << m;
        EXPECT_EQ(depth_and_counts(ghz_circuit(m, 0, "CU")), ghz_cu(m)) << m;
        EXPECT_EQ(depth_and_counts(w_circuit(m, 1, "CZ")), w_cz(m)) << m;
        EXPECT_EQ(depth_and_counts(w_circuit(m, 1, "CU")), w_cu(m)) << m;
    }
}

TEST(DepthTable, ThreeQubitReductions) {
    const double ghz = 1 - 3.0 / 5, w = 1 - 5.0 / 9;
    EXPECT_NEAR(1 - double(depth_and_counts(ghz_circuit(3, 0, "CU")).depth) /
                        depth_and_counts(ghz_circuit(3, 0, "CZ")).depth,
                ghz, 1e-15);
    EXPECT_NEAR(1 - double(depth_and_counts(w_circuit(3, 1, "CU")).depth) /
                        depth_and_counts(w_circuit(3, 1, "CZ")).depth,
                w, 1e-15);
    EXPECT_NEAR(ghz, 0.40, 1e-12);
    EXPECT_NEAR(w, 0.444, 1e-3);
}

TEST(Comparator, CountsAndDepthReduction) {
    const Counts cl = depth_and_counts(clifford_comparator_circuit());
    const Counts tc = depth_and_counts(comparator_circuit());
    EXPECT_EQ(cl, (Counts{22, 12, 25}));
    EXPECT_EQ(tc, (Counts{8, 6, 7}));
    EXPECT_NEAR(1 - double(tc.depth) / cl.depth, 0.72, 1e-12);
}

// Independent statement of the comparator truth table.
std::vector<int> compare_bits(int a, int b, int gt, int lt) {
    return {a, b, gt ^ static_cast<int>(a > b), lt ^ static_cast<int>(a < b)};
}

TEST(Comparator, ReferenceMatchesTheComparisonTable) {
    for (int in = 0; in < 16; in++) {
        const std::vector<int> bits = {in >> 3 & 1, in >> 2 & 1, in >> 1 & 1, in & 1};
        EXPECT_EQ(comparator_reference(bits), compare_bits(bits[0], bits[1], bits[2], bits[3]));
    }
}

TEST(Comparator, BothCircuitsRealizeTheTableExactly) {
    for (const Circuit &c : {comparator_circuit(), clifford_comparator_circuit()}) {
        const Mat u = restrict_computational(circuit_unitary(c)).matrix();
        EXPECT_TRUE(is_unitary(u));
        const Eigen::MatrixXd t = truth_table(c).matrix;
        Eigen::MatrixXd want = Eigen::MatrixXd::Zero(16, 16);
        for (int in = 0; in < 16; in++) {
            const auto o = compare_bits(in >> 3 & 1, in >> 2 & 1, in >> 1 & 1, in & 1);
            want(o[0] << 3 | o[1] << 2 | o[2] << 1 | o[3], in) = 1;
        }
        EXPECT_LT((t - want).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Comparator, TcgCircuitRespectsRingTopology) {
    Circuit c = comparator_circuit();
    EXPECT_TRUE(c.enforce_topology);
    EXPECT_NO_THROW(c.validate());
    c.add("cz", {0, 3});
    c.add("cz", {0, 2});
    EXPECT_ANY_THROW(c.validate());
}

TEST(Preparation, AllSchemesReachTheTargetState) {
    for (const char *s : {"CZ", "CU", "SPCU"}) {
        for (int m = 3; m <= 6; m++) {
            for (double tau : {0.0, kPi / 3, kPi, 2 * kPi}) {
                const Circuit c = ghz_circuit(m, tau, s);
                const StateVector out = simulate(c, StateVector::basis(c.space(), std::vector<int>(m, 0)));
                EXPECT_NEAR(state_fidelity(DensityMatrix::pure(out), ghz_state(m, tau)), 1, 1e-12) << s << m;
            }
            const double lambdas[] = {0.0, 0.5, 1.0, std::sqrt(2.0)};
            for (double l : lambdas) {
                const Circuit c = w_circuit(m, l, s);
                const StateVector out = simulate(c, StateVector::basis(c.space(), std::vector<int>(m, 0)));
                EXPECT_NEAR(state_fidelity(DensityMatrix::pure(out), w_state(m, l)), 1, 1e-12) << s << m;
            }
        }
    }
}

TEST(Preparation, TargetStatesHaveTheExpectedAmplitudes) {
    const StateVector g = ghz_state(3, kPi / 2);
    EXPECT_NEAR(std::abs(g.amps()(0)), std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(std::arg(g.amps()(g.space().index_of({1, 1, 1}))), kPi / 2, 1e-15);
    const StateVector w = w_state(3, 0.5);
    EXPECT_NEAR(std::abs(w.amps()(w.space().index_of({0, 1, 0}))), 0.5 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(std::abs(w.amps()(w.space().index_of({1, 0, 0}))), std::sqrt(1.75 / 3), 1e-15);
    EXPECT_THROW(w_circuit(3, 2.0, "CU"), std::invalid_argument);
    EXPECT_THROW(ghz_circuit(3, 0, "iSWAP"), std::invalid_argument);
}

TEST(ExpandComposites, PulsesReproduceTheCompositeUnitary) {
    std::vector<Circuit> cs = {ghz_circuit(3, 0.4, "CU"), ghz_circuit(3, 0.4, "SPCU"), w_circuit(3, 0.7, "CU"),
                               comparator_circuit()};
    Circuit fam = Circuit::chain(2);
    fam.add("cu_prime", {0, 1}, {{"theta", 0.8}, {"phi1", 0.2}, {"phi2", 1.1}})
        .add("swap", {0, 1}, {{"theta", 1.3}, {"phi1", 0.3}})
        .add("cu", {1, 0}, {{"theta", 2.0}, {"phi", 0.5}});
    cs.push_back(fam);
    for (const Circuit &c : cs) {
        const Circuit e = expand_composites(c);
        for (const auto &g : e.ops) {
            EXPECT_FALSE(gate_info(g.gate).composite) << g.gate;
        }
        EXPECT_LT(max_abs(circuit_unitary(e).matrix() - circuit_unitary(c).matrix()), 1e-12);
    }
}

// Populations |<out|CU|in>|^2 of the unitary-convention block.
Eigen::MatrixXd cu_table(double th) {
    const double c2 = std::pow(std::cos(th / 2), 2), s2 = 1 - c2;
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(4, 4);
    t(0, 0) = t(1, 1) = 1;
    t(2, 2) = t(3, 3) = c2;
    t(2, 3) = t(3, 2) = s2;
    return t;
}

TEST(TruthTable, CphaseChAndCnotExact) {
    for (double th : {0.0, kPi / 2, kPi}) {
        Circuit c = Circuit::chain(2, "CU");
        c.add("cu", {0, 1}, {{"theta", th}, {"phi", kPi}});
        EXPECT_LT((truth_table(c).matrix - cu_table(th)).cwiseAbs().maxCoeff(), 1e-14) << th;
    }
}

TEST(TruthTable, SampledWithinThreeSigma) {
    const int shots = 5000;
    for (double th : {0.0, kPi / 2, kPi}) {
        Circuit c = Circuit::chain(2, "CU");
        c.add("cu", {0, 1}, {{"theta", th}, {"phi", kPi}});
        const Eigen::MatrixXd got = truth_table(c, shots, 11).matrix;
        const Eigen::MatrixXd p = cu_table(th);
        for (int i = 0; i < 4; i++) {
            for (int j = 0; j < 4; j++) {
                const double sigma = std::sqrt(p(i, j) * (1 - p(i, j)) / shots);
                EXPECT_LE(std::abs(got(i, j) - p(i, j)), 3 * sigma + 1e-12) << th << " " << i << j;
            }
            EXPECT_NEAR(got.col(i).sum(), 1, 1e-12);
        }
    }
}

TEST(TruthTable, SeedDeterminesSamples) {
    const Circuit c = comparator_circuit();
    EXPECT_EQ(truth_table(c, 1000, 5).matrix, truth_table(c, 1000, 5).matrix);
    Circuit h = Circuit::chain(2);
    h.add("h", {0});
    EXPECT_NE(truth_table(h, 1000, 5).matrix, truth_table(h, 1000, 6).matrix);
}

TEST(Scans, RotationPhaseAndEcho) {
    std::vector<double> xs;
    for (int k = 0; k <= 64; k++) {
        xs.push_back(k * 2 * kPi / 64);
    }
    for (const auto &r : rotation_scan(xs, 0.3)) {
        EXPECT_NEAR(r.populations[2], std::pow(std::sin(r.x / 2), 2), 1e-12);
        EXPECT_NEAR(r.populations[3], std::pow(std::cos(r.x / 2), 2), 1e-12);
    }
    for (double phi0 : {0.0, 0.4, -1.2}) {
        const auto ph = phase_scan(xs, phi0);
        const auto ec = echo_phase_scan(xs, phi0);
        for (std::size_t i = 0; i < xs.size(); i++) {
            EXPECT_NEAR(ph[i].populations[2], std::pow(std::cos(xs[i] + phi0), 2), 1e-12);
            EXPECT_NEAR(ec[i].populations[2], std::pow(std::cos(2 * (xs[i] + phi0)), 2), 1e-12);
        }
        // Periods pi and pi/2.
        EXPECT_NEAR(phase_scan({0.2 + kPi}, phi0)[0].populations[2], phase_scan({0.2}, phi0)[0].populations[2], 1e-12);
        EXPECT_NEAR(echo_phase_scan({0.2 + kPi / 2}, phi0)[0].populations[2],
                    echo_phase_scan({0.2}, phi0)[0].populations[2], 1e-12);
    }
}

TEST(Schedule, LayeredPolicySeparatesSingleAndMultiQuditMoments) {
    Circuit c = Circuit::chain(3);
    c.add("h", {0}).add("cz", {1, 2});
    EXPECT_EQ(depth_and_counts(c, false, DepthPolicy::kLayered).depth, 2);
    EXPECT_EQ(depth_and_counts(c, false, DepthPolicy::kAsap).depth, 1);
}

TEST(Schedule, MomentDurationIsTheLongestGate) {
    Circuit c = Circuit::chain(4);
    c.add("cz", {0, 1}).add("cu", {2, 3}, {{"theta", 1}, {"phi", 0}}).add("x01", {0}, {{"theta", 1}});
    const Schedule s = schedule(c);
    ASSERT_EQ(s.moments.size(), 2u);
    EXPECT_EQ(s.moments[0].duration_ns, 90);
    EXPECT_EQ(s.moments[1].duration_ns, 30);
    EXPECT_TRUE(s.moments[0].multi);
}

TEST(Durations, PrimitiveAndCompositeGates) {
    const Durations d;
    EXPECT_EQ(gate_duration({"cx", {}, {0, 1}}, d), 100);
    EXPECT_EQ(gate_duration({"cu", {}, {0, 1}}, d), 90);
    EXPECT_EQ(gate_duration({"sqrt_cz", {}, {0, 1}}, d), 30);
    EXPECT_EQ(gate_duration({"z", {}, {0}}, d), 0);
    EXPECT_EQ(gate_duration({"spcu", {}, {0, 1}}, d), 60);
}

TEST(Validation, RejectsMalformedCircuits) {
    Circuit c = Circuit::chain(2);
    EXPECT_THROW(Circuit(c).add("nope", {0}).validate(), std::invalid_argument);
    EXPECT_THROW(Circuit(c).add("x01", {0}, {{"angle", 1}}).validate(), std::invalid_argument);
    EXPECT_THROW(Circuit(c).add("cz", {0}).validate(), std::invalid_argument);
    EXPECT_THROW(Circuit(c).add("cz", {0, 0}).validate(), std::invalid_argument);
    EXPECT_THROW(Circuit(c).add("h", {5}).validate(), std::out_of_range);
    EXPECT_THROW(gate_info("nope"), std::invalid_argument);
}

TEST(Json, RoundTripPreservesTheCircuit) {
    for (const Circuit &c : {comparator_circuit(), w_circuit(4, 1, "CZ"), ghz_circuit(3, 0.25, "SPCU")}) {
        const std::string text = to_json(c);
        EXPECT_EQ(circuit_from_json(text), c);
        EXPECT_EQ(to_json(circuit_from_json(text)), text);
    }
    EXPECT_ANY_THROW(circuit_from_json("{"));
    EXPECT_ANY_THROW(circuit_from_json(R"({"qudits": [], "ops": [{"gate": "nope", "sites": [0]}]})"));
}

TEST(Simulate, DensityMatrixWithoutNoiseMatchesStateVector) {
    const Circuit c = w_circuit(3, 0.9, "CU");
    const StateVector z = StateVector::basis(c.space(), {0, 0, 0});
    const StateVector psi = simulate(c, z);
    const DensityMatrix rho = simulate(c, DensityMatrix::pure(z));
    EXPECT_LT(max_abs(rho.matrix() - psi.amps() * psi.amps().adjoint()), 1e-13);
}

}  // namespace
}  // namespace tcg
