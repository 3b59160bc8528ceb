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

#ifndef TCG_NOISE_H
#define TCG_NOISE_H

#include <string>
#include <vector>

#include "tcg/circuit.h"
#include "tcg/qudit.h"

namespace tcg {

/// One row of the device parameter table. Times in microseconds, frequencies in GHz.
/// The `_work` values apply while the qubit takes part in a two-qubit gate.
struct DeviceQubit {
    std::string name;
    double f01_ghz = 0;
    double f12_ghz = 0;
    double f_work_ghz = 0;
    double t1_us = 0;
    double t1_work_us = 0;
    double t2s_us = 0;
    double t2s_work_us = 0;
};

struct DeviceConfig {
    std::vector<DeviceQubit> qubits;

    /// Four-qubit device used in the reference experiment. Where the table lists
    /// two working points (Q1, Q2) the first one is used.
    static DeviceConfig reference();
    static DeviceConfig from_json(const std::string &text);
    std::string to_json() const;
};

/// Pure-dephasing time from T1 and T2*: 1/Tphi = 1/T2* - 1/(2 T1).
/// Throws std::invalid_argument when the pair gives Tphi <= 0.
double dephasing_time_us(double t1_us, double t2s_us);

struct QuditNoise {
    double t1_us = 10;     // |1> -> |0>
    double kappa = 1.4142135623730951;  // T1 of |2> is t1_us / kappa
    double tphi_us = 10;
    double t1_work_us = 0;    // 0: same as idle
    double tphi_work_us = 0;  // 0: same as idle
    /// Peak leakage probability of an X12 pulse at theta = pi; scales as sin^2(theta/2).
    /// Moves |2> -> |3> (when the site has a level 3) and |1> -> |0>.
    double leak_rate = 0;
};

class NoiseModel {
  public:
    std::vector<QuditNoise> qudits;
    bool amplitude_damping = true;
    bool dephasing = true;
    bool leakage = true;
    bool working_point_aware = false;

    /// Same parameters on every site.
    static NoiseModel uniform(const QuditNoise &q);
    static NoiseModel from_device(const DeviceConfig &dev, double kappa = 1.4142135623730951, double leak_rate = 0);

    /// Sites past the end reuse the last entry.
    const QuditNoise &site(int index) const;
    void validate() const;
};

/// Kraus set for one site idling (or working) for dt_ns. Cascade damping
/// |2> -> |1> at rate kappa/T1 and |1> -> |0> at 1/T1 (|3> -> |2> at kappa^2/T1
/// when present), plus pure dephasing that decays the |0>-|1> coherence as
/// e^{-dt/Tphi} and coherences touching higher levels at twice that rate. Both
/// come from one Lindblad generator, so consecutive moments compose exactly.
std::vector<Mat> kraus_for_moment(const NoiseModel &model, int site, int dim, double dt_ns, bool working = false);

/// Leakage Kraus set for an X12 pulse of angle theta on a site of dimension dim.
std::vector<Mat> leakage_kraus(const QuditNoise &q, int dim, double theta);

DensityMatrix apply_channel(const DensityMatrix &rho, const std::vector<Mat> &kraus, int site);

/// Runs a scheduled circuit with noise after each moment, using the moment
/// durations stored in the schedule.
DensityMatrix apply_noise(const DensityMatrix &rho, const Circuit &c, const Schedule &s, const NoiseModel &model);

struct DecoherenceRow {
    std::string sweep;  // "T1" or "Tphi"
    double value_us = 0;
    double cz = 0;
    double cu = 0;
    double cnot = 0;
};
/// Identity-composing sequences (CZ.CZ, CU(pi).CU(pi), CNOT.CNOT with CNOT = H CZ H).
/// The T1 sweep starts from |11> with dephasing off; the Tphi sweep starts from
/// |1+> with damping off. Each entry is the population recovered in the initial state.
std::vector<DecoherenceRow> decoherence_comparison(const std::vector<double> &t1_grid_us,
                                                   const std::vector<double> &tphi_grid_us, double kappa = 1.4142135623730951,
                                                   const Durations &d = {});

/// The same two tests at device parameters (first two qubits of `dev`, working
/// point during two-qubit moments): sweep "T1" keeps only damping and starts from
/// |11>, sweep "Tphi" keeps only dephasing and starts from |1+>. value_us is 0.
std::vector<DecoherenceRow> decoherence_at_device(const DeviceConfig &dev, double kappa = 1.4142135623730951,
                                                  const Durations &d = {});

}  // namespace tcg

#endif
