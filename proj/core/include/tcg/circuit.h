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

#ifndef TCG_CIRCUIT_H
#define TCG_CIRCUIT_H

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tcg/gates.h"
#include "tcg/qudit.h"

namespace tcg {

class NoiseModel;

/// One gate bound to sites. For every two-site TCG gate (sqrt_cz, cp, cu, spcu,
/// ...) sites[0] is the control, which also hosts the level-2 excursion.
struct GateInstance {
    std::string gate;
    std::map<std::string, double> params;
    std::vector<int> sites;

    double param(const std::string &key, double fallback = 0) const;
    bool operator==(const GateInstance &other) const = default;
};

struct QuditSpec {
    std::string name;
    int dim = 3;
    bool operator==(const QuditSpec &other) const = default;
};

struct Circuit {
    std::vector<QuditSpec> qudits;
    std::vector<std::pair<int, int>> topology;
    std::vector<GateInstance> ops;
    std::string scheme;
    bool enforce_topology = false;

    static Circuit chain(int n, std::string scheme = "", int dim = 3);
    HilbertSpace space() const;
    Circuit &add(std::string gate, std::vector<int> sites, std::map<std::string, double> params = {});
    /// Throws on unknown gates, bad sites, and (when enforced) non-adjacent pairs.
    void validate() const;
    bool operator==(const Circuit &other) const = default;
};

struct GateInfo {
    int arity = 0;
    GateClass cls = GateClass::kSingleQudit;
    /// True for gates that expand into primitive pulses.
    bool composite = false;
};
/// Throws std::invalid_argument on unknown names.
GateInfo gate_info(const std::string &name);
double gate_duration(const GateInstance &g, const Durations &d = {});

/// Operator of `g` on the local space of its own sites, in site order.
Operator gate_operator(const GateInstance &g, const std::vector<int> &local_dims);
/// Operator of `g` embedded in the circuit's full space.
Operator gate_operator(const GateInstance &g, const Circuit &c);

/// Replaces composite gates by their primitive pulses.
Circuit expand_composites(const Circuit &c);

enum class DepthPolicy {
    /// A moment holds only single-qudit gates or only multi-qudit gates; each gate
    /// goes to the earliest moment after its sites' previous gates whose kind
    /// matches or that is still empty.
    kLayered,
    /// Plain as-soon-as-possible packing.
    kAsap,
};

struct Moment {
    std::vector<std::size_t> ops;
    double duration_ns = 0;
    bool multi = false;
};

struct Schedule {
    std::vector<Moment> moments;
};

Schedule schedule(const Circuit &c, DepthPolicy policy = DepthPolicy::kLayered, const Durations &d = {});

struct Counts {
    int n1q = 0;
    int n2q = 0;
    int depth = 0;
    bool operator==(const Counts &other) const = default;
};
Counts depth_and_counts(const Circuit &c, bool expand = false, DepthPolicy policy = DepthPolicy::kLayered);

// Library circuits. Scheme names: "CZ", "CU", "SPCU".
Circuit ghz_circuit(int m, double tau, const std::string &scheme);
/// m = 3 prepares (|001> + l|010> + sqrt(2 - l^2)|100>)/sqrt(3); other m give the
/// standard W state and ignore `lambda`.
Circuit w_circuit(int m, double lambda, const std::string &scheme);
StateVector ghz_state(int m, double tau);
StateVector w_state(int m, double lambda);

/// Sites: 0 = a, 1 = b, 2 = (a > b) flag, 3 = (a < b) flag, on a 2x2 ring.
Circuit comparator_circuit();
/// The same comparator from two X-conjugated Toffolis in the 6-CNOT form.
Circuit clifford_comparator_circuit();
/// (a, b, c, d) -> (a, b, c ^ (a & !b), d ^ (!a & b)).
std::vector<int> comparator_reference(const std::vector<int> &bits);

Operator circuit_unitary(const Circuit &c);
StateVector simulate(const Circuit &c, const StateVector &initial);
DensityMatrix simulate(const Circuit &c, const DensityMatrix &initial, const NoiseModel *noise = nullptr,
                       const Durations &d = {});

struct TruthTable {
    /// rows: outputs, cols: inputs, both over computational basis states |0..0> .. |1..1>.
    Eigen::MatrixXd matrix;
};
/// Exact populations, or multinomial samples when `shots` is set.
TruthTable truth_table(const Circuit &c, std::optional<int> shots = std::nullopt, std::uint64_t seed = 0,
                       const NoiseModel *noise = nullptr);

struct ScanRow {
    double x = 0;
    std::vector<double> populations;  // P00, P01, P10, P11 of the two sites
};
/// CU(theta, phi_cu) applied to |11> (control site 0).
std::vector<ScanRow> rotation_scan(const std::vector<double> &thetas, double phi_cu = 0);
/// X01(pi/2) on the target, CU(pi, phi), X01(pi/2) projection; P10 = cos^2(phi + phi0).
std::vector<ScanRow> phase_scan(const std::vector<double> &phis, double phi0);
/// Same with an echo: CU(pi, phi) . X01(pi) . CU(pi, phi); P10 = cos^2(2(phi + phi0)).
std::vector<ScanRow> echo_phase_scan(const std::vector<double> &phis, double phi0);

std::string to_json(const Circuit &c);
Circuit circuit_from_json(const std::string &text);

}  // namespace tcg

#endif
