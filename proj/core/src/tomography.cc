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

#include "tcg/tomography.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include "tcg/gates.h"
#include "tcg/noise.h"

namespace tcg {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Matrix2cd pauli(int k) {
    Eigen::Matrix2cd p;
    switch (k) {
        case 0: p << 1, 0, 0, 1; break;
        case 1: p << 0, 1, 1, 0; break;
        case 2: p << 0, cplx(0, -1), cplx(0, 1), 0; break;
        default: p << 1, 0, 0, -1; break;
    }
    return p;
}

/// Pauli string with one letter per qubit, qubit 0 the most significant digit.
Mat pauli_string(std::size_t index, int n) {
    Mat m = Mat::Ones(1, 1);
    for (int q = 0; q < n; q++) {
        const int letter = static_cast<int>((index >> (2 * (n - 1 - q))) & 3);
        m = Eigen::kroneckerProduct(m, Mat(pauli(letter))).eval();
    }
    return m;
}

/// Rotation applied before Z readout so that the readout measures `b`.
Operator readout_rotation(Basis b, int dim) {
    switch (b) {
        case Basis::kX: return x01(kPi / 2, -kPi / 2, Convention::kUnitary, dim);  // Y(-pi/2)
        case Basis::kY: return x01(kPi / 2, 0, Convention::kUnitary, dim);         // X(pi/2)
        default: return Operator::identity(HilbertSpace({dim}));
    }
}

int basis_letter(Basis b) { return b == Basis::kX ? 1 : b == Basis::kY ? 2 : 3; }

/// Per qubit: 0 -> |0>, 1 -> |1>, 2 -> |+>, 3 -> |+i>; qubit 0 is the high digit of `which`.
StateVector qubit_input(int which, const HilbertSpace &space) {
    Vec amps = Vec::Ones(1);
    for (int q = 0; q < space.num_sites(); q++) {
        const int k = (which >> (2 * (space.num_sites() - 1 - q))) & 3;
        Vec local = Vec::Zero(space.dim(q));
        const double r = 1 / std::sqrt(2.0);
        if (k == 0) {
            local(0) = 1;
        } else if (k == 1) {
            local(1) = 1;
        } else if (k == 2) {
            local(0) = r;
            local(1) = r;
        } else {
            local(0) = r;
            local(1) = cplx(0, r);
        }
        amps = Eigen::kroneckerProduct(amps, local).eval();
    }
    return StateVector(space, amps);
}

Mat restricted_density(const StateVector &psi) {
    Vec v(computational_indices(psi.space()).size());
    std::size_t r = 0;
    for (std::size_t i : computational_indices(psi.space())) {
        v(r++) = psi.amps()(i);
    }
    return v * v.adjoint();
}

Mat vec_of(const Mat &m) { return Eigen::Map<const Mat>(m.data(), m.size(), 1); }

Mat cu_template(double theta, double phi, double z0, double z1) {
    Mat u = cu(theta, phi).restricted.matrix();
    Eigen::Vector4cd z(1, std::polar(1.0, z1), std::polar(1.0, z0), std::polar(1.0, z0 + z1));
    return z.asDiagonal() * u;
}

struct CuResidual {
    using Scalar = double;
    using InputType = Eigen::VectorXd;
    using ValueType = Eigen::VectorXd;
    using JacobianType = Eigen::MatrixXd;
    enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

    const Mat *target;
    int n_params;

    int inputs() const { return n_params; }
    int values() const { return 2 * static_cast<int>(target->size()); }

    int operator()(const Eigen::VectorXd &x, Eigen::VectorXd &f) const {
        const double z0 = n_params > 2 ? x(2) : 0, z1 = n_params > 2 ? x(3) : 0;
        const Mat diff = chi_of_unitary(cu_template(x(0), x(1), z0, z1)).chi - *target;
        for (Eigen::Index i = 0; i < diff.size(); i++) {
            f(2 * i) = diff(i).real();
            f(2 * i + 1) = diff(i).imag();
        }
        return 0;
    }
};

double wrap(double a) { return std::remainder(a, 2 * kPi); }

}  // namespace

std::uint64_t stream_seed(std::uint64_t root, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(root), static_cast<std::uint32_t>(root >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

std::vector<std::uint64_t> sample_counts(const std::vector<double> &probabilities, std::uint64_t shots,
                                         std::uint64_t seed) {
    double total = 0;
    for (double p : probabilities) {
        if (p < -1e-12) {
            throw std::invalid_argument("sample_counts: negative probability");
        }
        total += std::max(p, 0.0);
    }
    if (probabilities.empty() || std::abs(total - 1) > 1e-9) {
        throw std::invalid_argument("sample_counts: probabilities do not sum to 1");
    }
    std::vector<std::uint64_t> counts(probabilities.size(), 0);
    std::mt19937_64 rng(seed);
    std::uint64_t left = shots;
    double mass = total;
    for (std::size_t i = 0; i + 1 < probabilities.size() && left > 0; i++) {
        const double p = std::max(probabilities[i], 0.0);
        const double cond = mass > 0 ? std::clamp(p / mass, 0.0, 1.0) : 0.0;
        std::binomial_distribution<std::uint64_t> draw(left, cond);
        counts[i] = draw(rng);
        left -= counts[i];
        mass -= p;
    }
    counts.back() += left;
    return counts;
}

std::vector<MeasurementSetting> qst_settings(int n) {
    std::vector<MeasurementSetting> out;
    std::size_t total = 1;
    for (int i = 0; i < n; i++) {
        total *= 3;
    }
    for (std::size_t k = 0; k < total; k++) {
        MeasurementSetting s{std::vector<Basis>(n)};
        std::size_t rem = k;
        for (int q = n - 1; q >= 0; q--) {
            s.bases[q] = static_cast<Basis>(rem % 3);
            rem /= 3;
        }
        out.push_back(s);
    }
    return out;
}

std::vector<double> setting_probabilities(const DensityMatrix &rho, const MeasurementSetting &s) {
    const HilbertSpace &space = rho.space();
    if (static_cast<int>(s.bases.size()) != space.num_sites()) {
        throw std::invalid_argument("measurement setting does not match the number of sites");
    }
    Mat m = rho.matrix();
    for (int q = 0; q < space.num_sites(); q++) {
        if (s.bases[q] != Basis::kZ) {
            m = conjugate_on_sites(m, readout_rotation(s.bases[q], space.dim(q)).matrix(), {q}, space);
        }
    }
    std::vector<double> out;
    double inside = 0;
    for (std::size_t i : computational_indices(space)) {
        out.push_back(std::max(m(i, i).real(), 0.0));
        inside += out.back();
    }
    out.push_back(std::max(0.0, m.trace().real() - inside));
    return out;
}

Mat qst_linear(const std::vector<std::vector<double>> &setting_probs, int n) {
    const auto settings = qst_settings(n);
    if (setting_probs.size() != settings.size()) {
        throw std::invalid_argument("qst_linear: expected one distribution per setting");
    }
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t strings = dim * dim;
    Mat rho = Mat::Zero(dim, dim);
    for (std::size_t p = 0; p < strings; p++) {
        double sum = 0;
        int used = 0;
        for (std::size_t k = 0; k < settings.size(); k++) {
            bool compatible = true;
            for (int q = 0; q < n && compatible; q++) {
                const int letter = static_cast<int>((p >> (2 * (n - 1 - q))) & 3);
                compatible = letter == 0 || letter == basis_letter(settings[k].bases[q]);
            }
            const auto &probs = setting_probs[k];
            double norm = 0;
            for (std::size_t o = 0; o < dim; o++) {
                norm += probs[o];
            }
            if (!compatible || norm <= 0) {
                continue;
            }
            double e = 0;
            for (std::size_t o = 0; o < dim; o++) {
                int sign = 1;
                for (int q = 0; q < n; q++) {
                    const int letter = static_cast<int>((p >> (2 * (n - 1 - q))) & 3);
                    const int bit = static_cast<int>((o >> (n - 1 - q)) & 1);
                    if (letter != 0 && bit) {
                        sign = -sign;
                    }
                }
                e += sign * probs[o] / norm;
            }
            sum += e;
            used++;
        }
        if (used == 0) {
            continue;
        }
        rho += (sum / used) * pauli_string(p, n) / static_cast<double>(dim);
    }
    return 0.5 * (rho + rho.adjoint());
}

Mat project_psd(const Mat &m) {
    // Nearest unit-trace PSD matrix in Frobenius norm: keep the eigenvectors and
    // project the eigenvalues onto the probability simplex (clip after a common shift).
    Eigen::SelfAdjointEigenSolver<Mat> eig(0.5 * (m + m.adjoint()));
    const Eigen::VectorXd mu = eig.eigenvalues();
    std::vector<double> sorted(mu.data(), mu.data() + mu.size());
    std::sort(sorted.rbegin(), sorted.rend());
    double shift = 0, running = 0;
    for (std::size_t k = 0; k < sorted.size(); k++) {
        running += sorted[k];
        const double candidate = (running - 1) / static_cast<double>(k + 1);
        if (sorted[k] - candidate > 0) {
            shift = candidate;
        }
    }
    const Eigen::VectorXd w = (mu.array() - shift).cwiseMax(0.0);
    Mat out = eig.eigenvectors() * w.cast<cplx>().asDiagonal() * eig.eigenvectors().adjoint();
    return 0.5 * (out + out.adjoint());
}

namespace {

std::vector<std::vector<double>> setting_table(const DensityMatrix &rho, const QstOptions &opt) {
    const int n = rho.space().num_sites();
    if (n < 1 || n > 4) {
        throw std::invalid_argument("tomography supports 1 to 4 qubits");
    }
    const auto settings = qst_settings(n);
    std::vector<std::vector<double>> table;
    for (std::size_t k = 0; k < settings.size(); k++) {
        std::vector<double> probs = setting_probabilities(rho, settings[k]);
        if (opt.shots > 0) {
            double total = 0;
            for (double p : probs) {
                total += p;
            }
            for (double &p : probs) {
                p /= total;
            }
            const auto counts = sample_counts(probs, opt.shots, stream_seed(opt.seed, k));
            for (std::size_t i = 0; i < probs.size(); i++) {
                probs[i] = static_cast<double>(counts[i]) / static_cast<double>(opt.shots);
            }
        }
        table.push_back(std::move(probs));
    }
    return table;
}

}  // namespace

DensityMatrix qst(const DensityMatrix &rho, const QstOptions &opt) {
    const int n = rho.space().num_sites();
    return DensityMatrix(HilbertSpace(std::vector<int>(n, 2)), project_psd(qst_linear(setting_table(rho, opt), n)));
}

DensityMatrix qst(const Circuit &prepare, const QstOptions &opt, const NoiseModel *noise) {
    const HilbertSpace space = prepare.space();
    const StateVector zero = StateVector::basis(space, std::vector<int>(space.num_sites(), 0));
    DensityMatrix rho = noise ? simulate(prepare, DensityMatrix::pure(zero), noise)
                              : DensityMatrix::pure(simulate(prepare, zero));
    return qst(rho, opt);
}

ChiMatrix chi_of_superoperator(const Mat &s) {
    if (s.rows() != 16 || s.cols() != 16) {
        throw std::invalid_argument("chi: expected a two-qubit superoperator");
    }
    Mat chi(16, 16);
    std::vector<Mat> p;
    for (std::size_t k = 0; k < 16; k++) {
        p.push_back(pauli_string(k, 2));
    }
    for (int m = 0; m < 16; m++) {
        for (int n = 0; n < 16; n++) {
            // E = sum chi_mn P_m . P_n^dag has superoperator conj(P_n) (x) P_m.
            Mat basis = Eigen::kroneckerProduct(p[n].conjugate(), p[m]).eval();
            chi(m, n) = (basis.adjoint() * s).trace() / 16.0;
        }
    }
    return ChiMatrix{chi};
}

ChiMatrix chi_of_unitary(const Mat &u) {
    if (u.rows() != 4 || u.cols() != 4) {
        throw std::invalid_argument("chi: expected a two-qubit unitary");
    }
    Eigen::VectorXcd c(16);
    for (int m = 0; m < 16; m++) {
        c(m) = (pauli_string(m, 2).adjoint() * u).trace() / 4.0;
    }
    return ChiMatrix{c * c.adjoint()};
}

ChiMatrix qpt(const Circuit &process, const QptOptions &opt) {
    if (process.qudits.size() != 2) {
        throw std::invalid_argument("qpt: the process must act on exactly two sites");
    }
    const HilbertSpace space = process.space();
    Mat inputs(16, 16), outputs(16, 16);
    for (int j = 0; j < 16; j++) {
        const StateVector psi = qubit_input(j, space);
        DensityMatrix out = opt.noise ? simulate(process, DensityMatrix::pure(psi), opt.noise)
                                      : DensityMatrix::pure(simulate(process, psi));
        // Unprojected estimates keep the inversion linear (and unbiased under sampling).
        const Mat est = qst_linear(setting_table(out, QstOptions{opt.shots, stream_seed(opt.seed, static_cast<std::uint64_t>(j))}), 2);
        inputs.col(j) = vec_of(restricted_density(psi));
        outputs.col(j) = vec_of(est);
    }
    // The 16 inputs span all 4x4 matrices, so the superoperator is determined.
    const Mat s = inputs.transpose().partialPivLu().solve(outputs.transpose()).transpose();
    ChiMatrix c = chi_of_superoperator(s);
    c.chi = 0.5 * (c.chi + c.chi.adjoint());
    return c;
}

double process_fidelity(const ChiMatrix &a, const ChiMatrix &b) { return (a.chi * b.chi).trace().real(); }

ChiMatrix project_cp(const ChiMatrix &c) { return ChiMatrix{project_psd(c.chi)}; }

double truth_table_fidelity(const Eigen::MatrixXd &me, const Eigen::MatrixXd &m0) {
    if (me.rows() != me.cols() || m0.rows() != m0.cols() || me.rows() != m0.rows()) {
        throw std::invalid_argument("truth_table_fidelity: matrices must be square and of equal size");
    }
    const double d = static_cast<double>(me.rows());
    const double overlap = (m0.transpose() * me).trace();
    return ((me.transpose() * me).trace() + overlap * overlap) / (d * (d + 1));
}

CuFit fit_cu(const ChiMatrix &chi, bool fit_local_z) {
    // Start from the dominant Kraus term, which is the unitary itself when the
    // process is close to one.
    Eigen::SelfAdjointEigenSolver<Mat> eig(chi.chi);
    const Eigen::VectorXcd v = eig.eigenvectors().col(15);
    Mat u = Mat::Zero(4, 4);
    for (int m = 0; m < 16; m++) {
        u += v(m) * pauli_string(m, 2);
    }
    const cplx ref = std::abs(u(0, 0)) > 1e-9 ? u(0, 0) / std::abs(u(0, 0)) : cplx(1);
    u /= ref;
    const int np = fit_local_z ? 4 : 2;
    Eigen::VectorXd x(np);
    x(0) = 2 * std::atan2(std::abs(u(3, 2)), std::abs(u(2, 2)));
    x(1) = std::abs(u(3, 2)) > 1e-9 ? std::arg(-u(3, 2)) : 0;
    if (fit_local_z) {
        x(2) = 0;
        x(3) = std::arg(u(1, 1));
    }
    CuResidual f{&chi.chi, np};
    Eigen::NumericalDiff<CuResidual> nd(f);
    Eigen::LevenbergMarquardt<Eigen::NumericalDiff<CuResidual>, double> lm(nd);
    lm.parameters.xtol = 1e-14;
    lm.parameters.ftol = 1e-14;
    lm.minimize(x);
    Eigen::VectorXd r(f.values());
    f(x, r);
    CuFit out;
    out.theta = x(0);
    out.phi = wrap(x(1));
    if (fit_local_z) {
        out.z0 = wrap(x(2));
        out.z1 = wrap(x(3));
    }
    out.residual = r.norm();
    return out;
}

FeedbackState feedback_calibrate(double theta, double phi, double dtheta, double dphi, const FeedbackOptions &opt) {
    if (opt.max_iter < 1) {
        throw std::invalid_argument("feedback_calibrate: max_iter must be at least 1");
    }
    const ChiMatrix target = chi_of_unitary(cu_template(theta, phi, 0, 0));
    FeedbackState st;
    st.theta_applied = theta;
    st.phi_applied = phi;
    auto device_gate = [&]() {
        Circuit c = Circuit::chain(2, "CU");
        c.add("cu", {0, 1}, {{"theta", st.theta_applied + dtheta}, {"phi", st.phi_applied + dphi}});
        return c;
    };
    for (int it = 0; it < opt.max_iter; it++) {
        const Circuit c = device_gate();
        // Scored on the CP projection so sampled fidelities stay physical.
        const ChiMatrix measured = project_cp(
            qpt(c, QptOptions{opt.shots, stream_seed(opt.seed, static_cast<std::uint64_t>(it)), opt.noise}));
        st.iterations = it + 1;
        st.fidelity_history.push_back(process_fidelity(measured, target));
        const CuFit fit = fit_cu(measured, opt.fit_local_z);
        st.theta_hat = fit.theta;
        st.phi_hat = fit.phi;
        if (st.fidelity_history.back() >= opt.threshold) {
            st.converged = true;
            break;
        }
        st.theta_applied -= fit.theta - theta;
        st.phi_applied = wrap(st.phi_applied - wrap(fit.phi - phi));
    }
    st.calibrated_fidelity = process_fidelity(qpt(device_gate(), QptOptions{0, 0, opt.noise}), target);
    return st;
}

}  // namespace tcg
