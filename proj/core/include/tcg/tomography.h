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

#ifndef TCG_TOMOGRAPHY_H
#define TCG_TOMOGRAPHY_H

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "tcg/circuit.h"
#include "tcg/composer.h"
#include "tcg/qudit.h"

namespace tcg {

class NoiseModel;

/// Multinomial draw by sequential binomials; deterministic per seed.
std::vector<std::uint64_t> sample_counts(const std::vector<double> &probabilities, std::uint64_t shots,
                                         std::uint64_t seed);

/// Independent stream for sub-run `index` of a run seeded with `root`.
std::uint64_t stream_seed(std::uint64_t root, std::uint64_t index);

/// Per-qubit readout basis. The pre-measurement rotation maps the basis onto Z.
enum class Basis { kZ, kX, kY };

struct MeasurementSetting {
    std::vector<Basis> bases;
};
/// All 3^n settings, site 0 most significant, Z < X < Y.
std::vector<MeasurementSetting> qst_settings(int n);

/// Outcome distribution of one setting: 2^n computational bins then one leak bin
/// (any measured site at level >= 2).
std::vector<double> setting_probabilities(const DensityMatrix &rho, const MeasurementSetting &s);

struct QstOptions {
    std::uint64_t shots = 0;  // 0: exact probabilities
    std::uint64_t seed = 0;
};

/// Linear inversion over Pauli expectations followed by the nearest PSD unit-trace
/// matrix (eigenvalue clipping). The result lives on n qubits.
DensityMatrix qst(const DensityMatrix &rho, const QstOptions &opt = {});
DensityMatrix qst(const Circuit &prepare, const QstOptions &opt = {}, const NoiseModel *noise = nullptr);
/// Raw linear-inversion estimate before PSD projection (Hermitian, unit trace).
Mat qst_linear(const std::vector<std::vector<double>> &setting_probs, int n);
Mat project_psd(const Mat &m);

/// chi in the Pauli basis II, IX, IY, IZ, XI, ..., ZZ; E(rho) = sum chi_mn P_m rho P_n^dag.
struct ChiMatrix {
    Mat chi;
};

struct QptOptions {
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    const NoiseModel *noise = nullptr;
};

/// Two-qubit QPT on sites 0 and 1 of `process` (a two-site circuit): 16 input
/// states from {|0>, |1>, |+>, |+i>} per qubit, QST of every output, linear inversion.
ChiMatrix qpt(const Circuit &process, const QptOptions &opt = {});
/// Exact chi of a two-qubit unitary (4x4).
ChiMatrix chi_of_unitary(const Mat &u);
/// Exact chi of a two-qubit superoperator acting on column-stacked vec(rho).
ChiMatrix chi_of_superoperator(const Mat &s);
/// Tr(chi_a chi_b), real part.
double process_fidelity(const ChiMatrix &a, const ChiMatrix &b);
ChiMatrix project_cp(const ChiMatrix &c);

/// (Tr(Me^dag Me) + |Tr(M0^dag Me)|^2) / (d (d + 1)).
double truth_table_fidelity(const Eigen::MatrixXd &me, const Eigen::MatrixXd &m0);

struct FeedbackOptions {
    int max_iter = 5;
    double threshold = 0.999;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    const NoiseModel *noise = nullptr;
    /// Also fit a local Z phase on each qubit (absorbed, not fed back).
    bool fit_local_z = false;
};

struct FeedbackState {
    double theta_applied = 0;
    double phi_applied = 0;
    double theta_hat = 0;
    double phi_hat = 0;
    int iterations = 0;
    bool converged = false;
    /// Measured Tr(chi_exp chi_0) per round, on the CP-projected estimate.
    std::vector<double> fidelity_history;
    /// Exact process fidelity of the gate at the final applied parameters
    /// (same noise model, no sampling).
    double calibrated_fidelity = 0;
};

/// Closed-loop calibration of CU(theta, phi) on a device whose X12 pulses carry
/// an unknown offset (dtheta, dphi). Each round runs QPT, fits (theta, phi) of the
/// CU template by least squares, and subtracts the estimated error.
FeedbackState feedback_calibrate(double theta, double phi, double dtheta, double dphi, const FeedbackOptions &opt = {});

struct CuFit {
    double theta = 0;
    double phi = 0;
    double z0 = 0;
    double z1 = 0;
    double residual = 0;
};
/// Least-squares fit of the CU template (control site 0) to a chi matrix.
CuFit fit_cu(const ChiMatrix &chi, bool fit_local_z = false);

}  // namespace tcg

#endif
