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
#include <limits>
#include <numbers>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "tcg/noise.h"

namespace tcg {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

Mat superoperator(const std::vector<Mat> &kraus) {
    const Eigen::Index d = kraus.front().rows();
    Mat s = Mat::Zero(d * d, d * d);
    for (const Mat &k : kraus) {
        s += Eigen::kroneckerProduct(k.conjugate(), k).eval();
    }
    return s;
}

Mat apply_kraus(const std::vector<Mat> &kraus, const Mat &rho) {
    Mat out = Mat::Zero(rho.rows(), rho.cols());
    for (const Mat &k : kraus) {
        out += k * rho * k.adjoint();
    }
    return out;
}

Mat projector(int d, int level) {
    Mat p = Mat::Zero(d, d);
    p(level, level) = 1;
    return p;
}

NoiseModel model(double t1, double kappa, double tphi) { return NoiseModel::uniform(QuditNoise{t1, kappa, tphi, 0, 0, 0}); }

TEST(Kraus, CompleteForAllDimensionsAndDurations) {
    const NoiseModel m = model(10, std::sqrt(2.0), 7);
    for (int d : {2, 3, 4}) {
        for (double dt : {0.0, 30.0, 90.0, 5000.0}) {
            const auto k = kraus_for_moment(m, 0, d, dt);
            Mat sum = Mat::Zero(d, d);
            for (const Mat &x : k) {
                sum += x.adjoint() * x;
            }
            EXPECT_LT(max_abs(sum - Mat::Identity(d, d)), 1e-12) << d << " " << dt;
        }
    }
}

TEST(Kraus, ComposeAsASemigroup) {
    const NoiseModel m = model(12, 1.7, 9);
    const Mat a = superoperator(kraus_for_moment(m, 0, 3, 40));
    const Mat b = superoperator(kraus_for_moment(m, 0, 3, 70));
    const Mat ab = superoperator(kraus_for_moment(m, 0, 3, 110));
    EXPECT_LT(max_abs(a * b - ab), 1e-12);
}

TEST(Kraus, EnergyRelaxationFollowsTheCascadeSolution) {
    const double t1 = 10, kappa = std::sqrt(2.0), dt = 800;  // ns
    const NoiseModel m = model(t1, kappa, kInf);
    const auto k = kraus_for_moment(m, 0, 3, dt);
    const double t = dt * 1e-3, g1 = 1 / t1, g2 = kappa / t1;
    const Mat from1 = apply_kraus(k, projector(3, 1));
    EXPECT_NEAR(from1(1, 1).real(), std::exp(-g1 * t), 1e-12);
    const Mat from2 = apply_kraus(k, projector(3, 2));
    EXPECT_NEAR(from2(2, 2).real(), std::exp(-g2 * t), 1e-12);
    // Population passing through |1> on its way down.
    EXPECT_NEAR(from2(1, 1).real(), g2 / (g2 - g1) * (std::exp(-g1 * t) - std::exp(-g2 * t)), 1e-12);
}

TEST(Kraus, KappaOneGivesEqualLevelRates) {
    const auto k = kraus_for_moment(model(10, 1, kInf), 0, 3, 500);
    const double stay1 = apply_kraus(k, projector(3, 1))(1, 1).real();
    const double stay2 = apply_kraus(k, projector(3, 2))(2, 2).real();
    EXPECT_NEAR(stay1, stay2, 1e-12);
}

TEST(Kraus, DephasingDecaysCoherencesAtTheModelRates) {
    const double t1 = 15, tphi = 6, dt = 400;
    const double t = dt * 1e-3;
    Mat plus01 = Mat::Zero(3, 3);
    plus01(0, 0) = plus01(0, 1) = plus01(1, 0) = plus01(1, 1) = 0.5;
    const Mat out = apply_kraus(kraus_for_moment(model(t1, std::sqrt(2.0), tphi), 0, 3, dt), plus01);
    EXPECT_NEAR(std::abs(out(0, 1)), 0.5 * std::exp(-t / (2 * t1)) * std::exp(-t / tphi), 1e-12);

    // Superpositions involving |2> dephase twice as fast.
    Mat plus02 = Mat::Zero(3, 3);
    plus02(0, 0) = plus02(0, 2) = plus02(2, 0) = plus02(2, 2) = 0.5;
    const Mat out2 = apply_kraus(kraus_for_moment(model(kInf, std::sqrt(2.0), tphi), 0, 3, dt), plus02);
    EXPECT_NEAR(std::abs(out2(0, 2)), 0.5 * std::exp(-2 * t / tphi), 1e-12);
}

TEST(Kraus, WorkingPointParametersApplyOnlyWhenRequested) {
    NoiseModel m = model(10, std::sqrt(2.0), kInf);
    m.qudits[0].t1_work_us = 2;
    const double idle = apply_kraus(kraus_for_moment(m, 0, 3, 100), projector(3, 1))(1, 1).real();
    const double busy = apply_kraus(kraus_for_moment(m, 0, 3, 100, true), projector(3, 1))(1, 1).real();
    EXPECT_NEAR(idle, std::exp(-0.1 / 10), 1e-12);
    EXPECT_NEAR(busy, std::exp(-0.1 / 2), 1e-12);
}

TEST(Kraus, DisabledChannelsGiveTheIdentity) {
    NoiseModel m = model(10, std::sqrt(2.0), 5);
    m.amplitude_damping = false;
    m.dephasing = false;
    const auto k = kraus_for_moment(m, 0, 3, 100);
    ASSERT_EQ(k.size(), 1u);
    EXPECT_LT(max_abs(k[0] - Mat::Identity(3, 3)), 1e-15);
    EXPECT_THROW(kraus_for_moment(m, 0, 3, -1), std::invalid_argument);
}

TEST(Leakage, ScalesWithTheRotationAngle) {
    QuditNoise q;
    q.leak_rate = 0.01;
    for (double th : {0.0, kPi / 3, kPi}) {
        const auto k = leakage_kraus(q, 4, th);
        Mat sum = Mat::Zero(4, 4);
        for (const Mat &x : k) {
            sum += x.adjoint() * x;
        }
        EXPECT_LT(max_abs(sum - Mat::Identity(4, 4)), 1e-15);
        const double p = 0.01 * std::pow(std::sin(th / 2), 2);
        EXPECT_NEAR(apply_kraus(k, projector(4, 1))(0, 0).real(), p, 1e-15);
        EXPECT_NEAR(apply_kraus(k, projector(4, 2))(3, 3).real(), p, 1e-15);
    }
}

TEST(Channel, NoisyEvolutionStaysPhysical) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n;
    Mat a(9, 9);
    for (int i = 0; i < 9; i++) {
        for (int j = 0; j < 9; j++) {
            a(i, j) = cplx(n(rng), n(rng));
        }
    }
    Mat rho = a * a.adjoint();
    rho /= rho.trace();
    const NoiseModel m = NoiseModel::from_device(DeviceConfig::reference(), std::sqrt(2.0), 0.005);
    Circuit c = Circuit::chain(2);
    c.add("cu", {0, 1}, {{"theta", 2.0}, {"phi", 0.4}}).add("h", {1});
    const DensityMatrix out = simulate(c, DensityMatrix(c.space(), rho), &m);
    EXPECT_NEAR(out.matrix().trace().real(), 1, 1e-12);
    EXPECT_GT(out.min_eigenvalue(), -1e-12);
    EXPECT_LT(max_abs(out.matrix() - out.matrix().adjoint()), 1e-14);
}

TEST(Device, ReferenceParametersAndJsonRoundTrip) {
    const DeviceConfig d = DeviceConfig::reference();
    ASSERT_EQ(d.qubits.size(), 4u);
    EXPECT_NEAR(d.qubits[0].t1_us, 11.019, 1e-12);
    const DeviceConfig back = DeviceConfig::from_json(d.to_json());
    ASSERT_EQ(back.qubits.size(), 4u);
    for (std::size_t i = 0; i < 4; i++) {
        EXPECT_EQ(back.qubits[i].name, d.qubits[i].name);
        EXPECT_EQ(back.qubits[i].t1_us, d.qubits[i].t1_us);
        EXPECT_EQ(back.qubits[i].t2s_work_us, d.qubits[i].t2s_work_us);
    }
    EXPECT_ANY_THROW(DeviceConfig::from_json("[1, 2"));
}

TEST(Device, PureDephasingTimeFromT1AndT2Star) {
    EXPECT_NEAR(dephasing_time_us(10, 8), 1 / (1 / 8.0 - 1 / 20.0), 1e-12);
    EXPECT_THROW(dephasing_time_us(10, 25), std::invalid_argument);
    const NoiseModel m = NoiseModel::from_device(DeviceConfig::reference());
    EXPECT_TRUE(m.working_point_aware);
    EXPECT_EQ(&m.site(10), &m.site(static_cast<int>(m.qudits.size()) - 1));
}

TEST(Device, ValidationRejectsOutOfRangeParameters) {
    EXPECT_THROW(model(10, 0.9, 5).validate(), std::invalid_argument);
    NoiseModel m = model(10, std::sqrt(2.0), 5);
    m.qudits[0].leak_rate = 0.02;
    EXPECT_THROW(m.validate(), std::invalid_argument);
    EXPECT_THROW(model(-1, std::sqrt(2.0), 5).validate(), std::invalid_argument);
    EXPECT_THROW(NoiseModel{}.validate(), std::invalid_argument);
}

TEST(Decoherence, T1SweepOrdersCzThenCuThenCnot) {
    const auto rows = decoherence_comparison({1, 5, 20, 100}, {});
    double prev = 0;
    for (const auto &r : rows) {
        EXPECT_GE(r.cz, r.cu) << r.value_us;
        EXPECT_GE(r.cu, r.cnot) << r.value_us;
        EXPECT_GT(r.cu, prev);
        prev = r.cu;
    }
}

TEST(Decoherence, DeviceRowsCarryBothTests) {
    const auto rows = decoherence_at_device(DeviceConfig::reference());
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].sweep, "T1");
    EXPECT_EQ(rows[1].sweep, "Tphi");
    EXPECT_GE(rows[0].cz, rows[0].cu);
    EXPECT_GE(rows[0].cu, rows[0].cnot);
    for (const auto &r : rows) {
        EXPECT_EQ(r.value_us, 0);
        EXPECT_GT(r.cnot, 0.9);
    }
}

}  // namespace
}  // namespace tcg
