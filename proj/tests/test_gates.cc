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

#include <numbers>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "tcg/gates.h"

namespace tcg {
namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0, 1);

// exp(-i theta/2 (e^{-i phi}|lo><lo+1| + h.c.)): the textbook two-level drive.
Mat drive(int lo, double theta, double phi, int dim) {
    Mat h = Mat::Zero(dim, dim);
    h(lo, lo + 1) = std::exp(-kI * phi);
    h(lo + 1, lo) = std::exp(kI * phi);
    return (-kI * (theta / 2) * h).exp();
}

std::vector<double> angles() {
    std::vector<double> g;
    for (int k = 0; k <= 8; k++) {
        g.push_back(k * kPi / 4);
    }
    return g;
}

TEST(Rotations, UnitaryConventionIsTheExponentiatedDrive) {
    for (double th : angles()) {
        for (double ph : angles()) {
            EXPECT_LT(max_abs(x01(th, ph).matrix() - drive(0, th, ph, 3)), 1e-13);
            EXPECT_LT(max_abs(x12(th, ph).matrix() - drive(1, th, ph, 3)), 1e-13);
            EXPECT_LT(max_abs(x12(th, ph, Convention::kUnitary, 4).matrix() - drive(1, th, ph, 4)), 1e-13);
        }
    }
}

TEST(Rotations, BareConventionDropsTheFactorMinusI) {
    const double th = 1.1, ph = 0.4;
    const Mat b = x12(th, ph, Convention::kBare).matrix();
    EXPECT_NEAR(std::abs(b(1, 2) - std::exp(-kI * ph) * std::sin(th / 2)), 0, 1e-15);
    EXPECT_NEAR(std::abs(b(2, 1) - std::exp(kI * ph) * std::sin(th / 2)), 0, 1e-15);
    EXPECT_FALSE(is_unitary(b));
    EXPECT_TRUE(is_unitary(x12(kPi, ph, Convention::kBare).matrix()));
}

TEST(Rotations, LeaveOtherLevelsAlone) {
    const Mat m = x01(0.7, 0.2).matrix();
    EXPECT_EQ(m(2, 2), cplx(1));
    EXPECT_EQ(m(0, 2), cplx(0));
    EXPECT_THROW(x12(1, 0, Convention::kUnitary, 2), std::invalid_argument);
}

TEST(SqrtCz, ExchangesElevenWithTheExcursionState) {
    const HilbertSpace s = HilbertSpace::qutrits(2);
    for (auto [exc, e] : {std::pair{Excursion::kFirst, std::vector<int>{2, 0}},
                          std::pair{Excursion::kSecond, std::vector<int>{0, 2}}}) {
        const Mat m = sqrt_cz(exc).matrix();
        const std::size_t k = s.index_of({1, 1}), x = s.index_of(e);
        EXPECT_NEAR(std::abs(m(x, k)), 1, 1e-15);
        EXPECT_NEAR(std::abs(m(k, x)), 1, 1e-15);
        for (std::size_t i = 0; i < 9; i++) {
            if (i != k && i != x) {
                EXPECT_EQ(m(i, i), cplx(1));
            }
        }
    }
}

TEST(SqrtCz, SquaresToCzOnTheComputationalSubspace) {
    for (double phq : {0.0, 0.3, 2.0}) {
        const Mat sq = sqrt_cz(Excursion::kFirst, phq).matrix();
        const Mat r = restrict_computational(sq * sq, HilbertSpace::qutrits(2));
        EXPECT_LT(max_abs(r - restrict_computational(cz().matrix(), HilbertSpace::qutrits(2))), 1e-14);
    }
}

TEST(Cp, IsExponentiatedExchange) {
    const HilbertSpace s = HilbertSpace::qutrits(2);
    const std::size_t k = s.index_of({1, 1}), e = s.index_of({0, 2});
    for (double th : angles()) {
        for (double phq : {0.0, 0.9}) {
            Mat h = Mat::Zero(9, 9);
            h(e, k) = std::exp(-kI * phq);
            h(k, e) = std::exp(kI * phq);
            const Mat want = (-kI * (th / 2) * h).exp();
            EXPECT_LT(max_abs(cp(th, phq).matrix() - want), 1e-13);
        }
    }
}

TEST(Clifford, CxIsHadamardConjugatedCz) {
    const Mat h = Eigen::kroneckerProduct(Mat::Identity(3, 3), hadamard().matrix()).eval();
    const Mat want = h * cz().matrix() * h;
    EXPECT_LT(max_abs(restrict_computational(cx().matrix() - want, HilbertSpace::qutrits(2))), 1e-14);
}

TEST(Clifford, TAndHadamardAlgebra) {
    const Mat t = t_gate().matrix();
    Mat p = Mat::Identity(3, 3);
    for (int i = 0; i < 8; i++) {
        p = p * t;
    }
    EXPECT_LT(max_abs(p - Mat::Identity(3, 3)), 1e-14);
    EXPECT_LT(max_abs(t * t_gate(true).matrix() - Mat::Identity(3, 3)), 1e-15);
    EXPECT_LT(max_abs(hadamard().matrix() * hadamard().matrix() - Mat::Identity(3, 3)), 1e-15);
}

TEST(U3, ParamsRoundTripUpToGlobalPhase) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (int i = 0; i < 50; i++) {
        const Mat a = u3(std::abs(u(rng)), u(rng), u(rng), 2).matrix() * std::exp(kI * u(rng));
        const auto p = u3_params(a);
        EXPECT_LT(distance_up_to_global_phase(u3(p[0], p[1], p[2], 2).matrix(), a).distance, 1e-12);
    }
    for (const Mat &a : {x01(kPi, 0.3, Convention::kUnitary, 2).matrix(), t_gate(false, 2).matrix()}) {
        const auto p = u3_params(a);
        EXPECT_LT(distance_up_to_global_phase(u3(p[0], p[1], p[2], 2).matrix(), a).distance, 1e-12);
    }
}

TEST(Ccp, CouplesOneOneOneToTheMixedExcursion) {
    const cplx a = std::sqrt(0.3), b = std::sqrt(0.7);
    const Operator g = ccp(kPi, a, b);
    EXPECT_TRUE(g.unitary());
    const HilbertSpace s({3, 4, 3});
    const std::size_t k = s.index_of({1, 1, 1});
    EXPECT_NEAR(std::abs(g.matrix()(s.index_of({0, 2, 1}), k) + kI * a), 0, 1e-15);
    EXPECT_NEAR(std::abs(g.matrix()(s.index_of({0, 3, 0}), k) + kI * b), 0, 1e-15);
    EXPECT_THROW(ccp(1, 1, 1), std::invalid_argument);
    EXPECT_THROW(ccp(1, a, b, {3, 3, 3}), std::invalid_argument);
}

TEST(Durations, DefaultsMatchTheDeviceTiming) {
    const Durations d;
    EXPECT_EQ(d.single_ns, 30);
    EXPECT_EQ(d.cz_ns, 40);
    EXPECT_EQ(d.sqrt_cz_ns, 30);
    EXPECT_EQ(d.cu_ns, 90);
}

}  // namespace
}  // namespace tcg
