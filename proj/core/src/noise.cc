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

#include "tcg/noise.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "tcg/gates.h"

namespace tcg {

namespace {

constexpr double kPi = std::numbers::pi;

/// Superoperator of rho -> A rho B on column-stacked vec(rho).
Mat sandwich(const Mat &a, const Mat &b) { return Eigen::kroneckerProduct(b.transpose(), a).eval(); }

Mat dissipator(const Mat &l) {
    const Mat id = Mat::Identity(l.rows(), l.cols());
    const Mat ll = l.adjoint() * l;
    return sandwich(l, l.adjoint()) - 0.5 * sandwich(ll, id) - 0.5 * sandwich(id, ll);
}

/// Kraus operators of a channel given by its superoperator, via the Choi matrix.
std::vector<Mat> kraus_from_superoperator(const Mat &s, int d) {
    Mat choi = Mat::Zero(d * d, d * d);
    for (int i = 0; i < d; i++) {
        for (int j = 0; j < d; j++) {
            const auto col = s.col(j * d + i);  // image of |i><j|
            for (int a = 0; a < d; a++) {
                for (int b = 0; b < d; b++) {
                    choi(i * d + a, j * d + b) = col(b * d + a);
                }
            }
        }
    }
    Eigen::SelfAdjointEigenSolver<Mat> eig(0.5 * (choi + choi.adjoint()));
    std::vector<Mat> out;
    for (int k = d * d - 1; k >= 0; k--) {
        const double lambda = eig.eigenvalues()(k);
        if (lambda <= 1e-15) {
            continue;
        }
        Mat kraus(d, d);
        for (int i = 0; i < d; i++) {
            for (int a = 0; a < d; a++) {
                kraus(a, i) = std::sqrt(lambda) * eig.eigenvectors()(i * d + a, k);
            }
        }
        out.push_back(kraus);
    }
    return out;
}

nlohmann::json qubit_json(const DeviceQubit &q) {
    return {{"name", q.name},         {"f01_ghz", q.f01_ghz},       {"f12_ghz", q.f12_ghz},
            {"f_work_ghz", q.f_work_ghz}, {"t1_us", q.t1_us},       {"t1_work_us", q.t1_work_us},
            {"t2s_us", q.t2s_us},     {"t2s_work_us", q.t2s_work_us}};
}

}  // namespace

DeviceConfig DeviceConfig::reference() {
    return DeviceConfig{{
        {"Q1", 4.659, 4.421, 4.498, 11.019, 8.604, 6.051, 1.403},
        {"Q2", 4.280, 4.030, 4.324, 10.677, 11.777, 2.264, 2.533},
        {"Q3", 4.098, 3.852, 4.093, 11.259, 11.259, 3.134, 3.134},
        {"Q4", 3.954, 3.710, 3.865, 13.512, 13.512, 2.256, 2.256},
    }};
}

DeviceConfig DeviceConfig::from_json(const std::string &text) {
    DeviceConfig dev;
    try {
        const auto j = nlohmann::json::parse(text);
        for (const auto &q : j.at("qubits")) {
            DeviceQubit d;
            d.name = q.at("name").get<std::string>();
            d.f01_ghz = q.value("f01_ghz", 0.0);
            d.f12_ghz = q.value("f12_ghz", 0.0);
            d.f_work_ghz = q.value("f_work_ghz", 0.0);
            d.t1_us = q.at("t1_us").get<double>();
            d.t1_work_us = q.value("t1_work_us", d.t1_us);
            d.t2s_us = q.at("t2s_us").get<double>();
            d.t2s_work_us = q.value("t2s_work_us", d.t2s_us);
            if (d.t1_us <= 0 || d.t1_work_us <= 0 || d.t2s_us <= 0 || d.t2s_work_us <= 0) {
                throw std::invalid_argument("device config: qubit " + d.name + " has a non-positive time");
            }
            dev.qubits.push_back(d);
        }
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("device config: ") + e.what());
    }
    if (dev.qubits.empty()) {
        throw std::invalid_argument("device config: no qubits");
    }
    return dev;
}

std::string DeviceConfig::to_json() const {
    nlohmann::json j;
    j["qubits"] = nlohmann::json::array();
    for (const auto &q : qubits) {
        j["qubits"].push_back(qubit_json(q));
    }
    return j.dump(2);
}

double dephasing_time_us(double t1_us, double t2s_us) {
    const double rate = 1 / t2s_us - 1 / (2 * t1_us);
    if (!(t1_us > 0) || !(t2s_us > 0) || rate <= 0) {
        throw std::invalid_argument("inconsistent T1/T2* pair (T1 = " + std::to_string(t1_us) + " us, T2* = " +
                                    std::to_string(t2s_us) + " us): T2* must be below 2 T1");
    }
    return 1 / rate;
}

NoiseModel NoiseModel::uniform(const QuditNoise &q) {
    NoiseModel m;
    m.qudits = {q};
    return m;
}

NoiseModel NoiseModel::from_device(const DeviceConfig &dev, double kappa, double leak_rate) {
    NoiseModel m;
    for (const auto &q : dev.qubits) {
        QuditNoise n;
        n.t1_us = q.t1_us;
        n.kappa = kappa;
        n.tphi_us = dephasing_time_us(q.t1_us, q.t2s_us);
        n.t1_work_us = q.t1_work_us;
        n.tphi_work_us = dephasing_time_us(q.t1_work_us, q.t2s_work_us);
        n.leak_rate = leak_rate;
        m.qudits.push_back(n);
    }
    m.working_point_aware = true;
    m.validate();
    return m;
}

const QuditNoise &NoiseModel::site(int index) const {
    if (qudits.empty()) {
        throw std::invalid_argument("noise model has no qudit parameters");
    }
    return qudits[std::min<std::size_t>(index, qudits.size() - 1)];
}

void NoiseModel::validate() const {
    if (qudits.empty()) {
        throw std::invalid_argument("noise model has no qudit parameters");
    }
    for (const auto &q : qudits) {
        if (!(q.t1_us > 0) || !(q.tphi_us > 0) || q.t1_work_us < 0 || q.tphi_work_us < 0) {
            throw std::invalid_argument("noise model: times must be positive");
        }
        if (!(q.kappa >= 1)) {
            throw std::invalid_argument("noise model: kappa must be at least 1");
        }
        if (q.leak_rate < 0 || q.leak_rate > 0.01) {
            throw std::invalid_argument("noise model: leak_rate must lie in [0, 0.01]");
        }
    }
}

std::vector<Mat> kraus_for_moment(const NoiseModel &model, int site, int dim, double dt_ns, bool working) {
    if (dt_ns < 0) {
        throw std::invalid_argument("kraus_for_moment: negative duration");
    }
    const QuditNoise &q = model.site(site);
    const double t1 = working && q.t1_work_us > 0 ? q.t1_work_us : q.t1_us;
    const double tphi = working && q.tphi_work_us > 0 ? q.tphi_work_us : q.tphi_us;
    const bool damp = model.amplitude_damping && std::isfinite(t1);
    const bool deph = model.dephasing && std::isfinite(tphi);
    if (dt_ns == 0 || (!damp && !deph)) {
        return {Mat::Identity(dim, dim)};
    }
    Mat gen = Mat::Zero(dim * dim, dim * dim);
    if (damp) {
        double rate = 1 / t1;
        for (int k = 1; k < dim; k++) {
            Mat lower = Mat::Zero(dim, dim);
            lower(k - 1, k) = std::sqrt(rate);
            gen += dissipator(lower);
            rate *= q.kappa;
        }
    }
    if (deph) {
        for (int a = 0; a < dim; a++) {
            for (int b = 0; b < dim; b++) {
                if (a != b) {
                    const double r = (std::max(a, b) >= 2 ? 2.0 : 1.0) / tphi;
                    gen(b * dim + a, b * dim + a) -= r;
                }
            }
        }
    }
    const Mat s = (gen * (dt_ns * 1e-3)).exp();
    return kraus_from_superoperator(s, dim);
}

std::vector<Mat> leakage_kraus(const QuditNoise &q, int dim, double theta) {
    const double sn = std::sin(theta / 2);
    const double p = q.leak_rate * sn * sn;
    if (p == 0 || dim < 3) {
        return {Mat::Identity(dim, dim)};
    }
    Mat stay = Mat::Identity(dim, dim);
    Mat jump = Mat::Zero(dim, dim);
    stay(1, 1) = std::sqrt(1 - p);
    jump(0, 1) = std::sqrt(p);
    if (dim >= 4) {
        stay(2, 2) = std::sqrt(1 - p);
        jump(3, 2) = std::sqrt(p);
    }
    return {stay, jump};
}

DensityMatrix apply_channel(const DensityMatrix &rho, const std::vector<Mat> &kraus, int site) {
    const HilbertSpace &space = rho.space();
    Mat out = Mat::Zero(rho.matrix().rows(), rho.matrix().cols());
    for (const auto &k : kraus) {
        out += conjugate_on_sites(rho.matrix(), k, {site}, space);
    }
    return DensityMatrix(space, out);
}

DensityMatrix apply_noise(const DensityMatrix &rho, const Circuit &c, const Schedule &s, const NoiseModel &model) {
    model.validate();
    const HilbertSpace space = c.space();
    if (!(rho.space() == space)) {
        throw std::invalid_argument("apply_noise: state does not live on the circuit's space");
    }
    Mat m = rho.matrix();
    for (const auto &moment : s.moments) {
        std::vector<bool> busy(space.num_sites(), false);
        for (std::size_t k : moment.ops) {
            const GateInstance &g = c.ops.at(k);
            std::vector<int> dims;
            for (int site : g.sites) {
                dims.push_back(space.dim(site));
            }
            m = conjugate_on_sites(m, gate_operator(g, dims).matrix(), g.sites, space);
            if (g.sites.size() > 1) {
                for (int site : g.sites) {
                    busy[site] = true;
                }
            }
            if (model.leakage && g.gate == "x12") {
                const int site = g.sites[0];
                const auto kraus = leakage_kraus(model.site(site), space.dim(site), g.param("theta"));
                if (kraus.size() > 1) {
                    m = apply_channel(DensityMatrix(space, m), kraus, site).matrix();
                }
            }
        }
        if (moment.duration_ns <= 0) {
            continue;
        }
        for (int site = 0; site < space.num_sites(); site++) {
            const bool working = model.working_point_aware && busy[site];
            const auto kraus = kraus_for_moment(model, site, space.dim(site), moment.duration_ns, working);
            if (kraus.size() > 1 || max_abs(kraus[0] - Mat::Identity(space.dim(site), space.dim(site))) > 0) {
                m = apply_channel(DensityMatrix(space, m), kraus, site).matrix();
            }
        }
    }
    return DensityMatrix(space, 0.5 * (m + m.adjoint()));
}

namespace {

struct IdentitySequences {
    Circuit czcz = Circuit::chain(2, "CZ");
    Circuit cucu = Circuit::chain(2, "CU");
    Circuit cnot2 = Circuit::chain(2, "CZ");
    StateVector s11 = StateVector::basis(HilbertSpace::qutrits(2), {1, 1});
    StateVector s1p = s11;

    IdentitySequences() {
        czcz.add("cz", {0, 1}).add("cz", {0, 1});
        cucu.add("cu", {0, 1}, {{"theta", kPi}, {"phi", kPi}}).add("cu", {0, 1}, {{"theta", kPi}, {"phi", kPi}});
        for (int i = 0; i < 2; i++) {
            cnot2.add("h", {1}).add("cz", {0, 1}).add("h", {1});
        }
        const HilbertSpace space = HilbertSpace::qutrits(2);
        Vec plus = Vec::Zero(space.total_dim());
        plus(space.index_of({1, 0})) = 1 / std::sqrt(2.0);
        plus(space.index_of({1, 1})) = 1 / std::sqrt(2.0);
        s1p = StateVector(space, plus);
    }

    /// Recovered population of the initial state after each sequence.
    DecoherenceRow run(const NoiseModel &model, const StateVector &init, const Durations &d) const {
        DecoherenceRow r;
        r.cz = state_fidelity(simulate(czcz, DensityMatrix::pure(init), &model, d), init);
        r.cu = state_fidelity(simulate(cucu, DensityMatrix::pure(init), &model, d), init);
        r.cnot = state_fidelity(simulate(cnot2, DensityMatrix::pure(init), &model, d), init);
        return r;
    }
};

DecoherenceRow t1_row(const IdentitySequences &seq, NoiseModel m, const Durations &d) {
    m.dephasing = false;
    m.leakage = false;
    DecoherenceRow r = seq.run(m, seq.s11, d);
    r.sweep = "T1";
    return r;
}

DecoherenceRow tphi_row(const IdentitySequences &seq, NoiseModel m, const Durations &d) {
    m.amplitude_damping = false;
    m.leakage = false;
    DecoherenceRow r = seq.run(m, seq.s1p, d);
    r.sweep = "Tphi";
    return r;
}

}  // namespace

std::vector<DecoherenceRow> decoherence_comparison(const std::vector<double> &t1_grid_us,
                                                   const std::vector<double> &tphi_grid_us, double kappa,
                                                   const Durations &d) {
    const IdentitySequences seq;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<DecoherenceRow> rows;
    for (double t1 : t1_grid_us) {
        rows.push_back(t1_row(seq, NoiseModel::uniform(QuditNoise{t1, kappa, inf, 0, 0, 0}), d));
        rows.back().value_us = t1;
    }
    for (double tphi : tphi_grid_us) {
        rows.push_back(tphi_row(seq, NoiseModel::uniform(QuditNoise{inf, kappa, tphi, 0, 0, 0}), d));
        rows.back().value_us = tphi;
    }
    return rows;
}

std::vector<DecoherenceRow> decoherence_at_device(const DeviceConfig &dev, double kappa, const Durations &d) {
    const IdentitySequences seq;
    const NoiseModel m = NoiseModel::from_device(dev, kappa);
    return {t1_row(seq, m, d), tphi_row(seq, m, d)};
}

}  // namespace tcg
