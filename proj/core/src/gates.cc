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

#include "tcg/gates.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tcg {

namespace {

const cplx I1(0, 1);

cplx off_factor(Convention conv) { return conv == Convention::kUnitary ? -I1 : cplx(1); }

Operator level_rotation(int lo, double theta, double phi, Convention conv, int dim) {
    if (dim < lo + 2) {
        throw std::invalid_argument("rotation needs a higher local dimension");
    }
    Mat m = Mat::Identity(dim, dim);
    double c = std::cos(theta / 2), s = std::sin(theta / 2);
    cplx f = off_factor(conv);
    m(lo, lo) = c;
    m(lo + 1, lo + 1) = c;
    m(lo, lo + 1) = f * std::polar(1.0, -phi) * s;
    m(lo + 1, lo) = f * std::polar(1.0, phi) * s;
    return Operator(HilbertSpace({dim}), m);
}

Operator qubit_block(const Eigen::Matrix2cd &u, int dim) {
    Mat m = Mat::Identity(dim, dim);
    m.topLeftCorner(2, 2) = u;
    return Operator(HilbertSpace({dim}), m);
}

}  // namespace

Operator x01(double theta, double phi, Convention conv, int dim) { return level_rotation(0, theta, phi, conv, dim); }

Operator x12(double theta, double phi, Convention conv, int dim) { return level_rotation(1, theta, phi, conv, dim); }

Operator z_phases(const std::vector<double> &phases) {
    int d = static_cast<int>(phases.size());
    Mat m = Mat::Zero(d, d);
    for (int i = 0; i < d; i++) {
        m(i, i) = std::polar(1.0, phases[i]);
    }
    return Operator(HilbertSpace({d}), m);
}

Operator u3(double theta, double phi, double lambda, int dim) {
    double c = std::cos(theta / 2), s = std::sin(theta / 2);
    Eigen::Matrix2cd u;
    u << c, -std::polar(1.0, lambda) * s, std::polar(1.0, phi) * s, std::polar(1.0, phi + lambda) * c;
    return qubit_block(u, dim);
}

Operator hadamard(int dim) {
    Eigen::Matrix2cd u;
    u << 1, 1, 1, -1;
    return qubit_block(u / std::sqrt(2.0), dim);
}

Operator t_gate(bool dagger, int dim) {
    Eigen::Matrix2cd u;
    u << 1, 0, 0, std::polar(1.0, (dagger ? -1 : 1) * std::numbers::pi / 4);
    return qubit_block(u, dim);
}

Operator cp(double theta, double phi_q, Excursion exc, int dim_a, int dim_b) {
    HilbertSpace space({dim_a, dim_b});
    std::size_t e = exc == Excursion::kSecond ? space.index_of({0, 2}) : space.index_of({2, 0});
    std::size_t k = space.index_of({1, 1});
    Mat m = Mat::Identity(space.total_dim(), space.total_dim());
    double c = std::cos(theta / 2), s = std::sin(theta / 2);
    m(e, e) = c;
    m(k, k) = c;
    m(e, k) = -I1 * std::polar(1.0, -phi_q) * s;
    m(k, e) = -I1 * std::polar(1.0, phi_q) * s;
    return Operator(space, m);
}

Operator sqrt_cz(Excursion exc, double phi_q, int dim_a, int dim_b) {
    return cp(std::numbers::pi, phi_q, exc, dim_a, dim_b);
}

Operator cz(int dim_a, int dim_b) {
    HilbertSpace space({dim_a, dim_b});
    Mat m = Mat::Identity(space.total_dim(), space.total_dim());
    m(space.index_of({1, 1}), space.index_of({1, 1})) = -1;
    return Operator(space, m);
}

Operator cx(int dim_a, int dim_b) {
    HilbertSpace space({dim_a, dim_b});
    Mat m = Mat::Identity(space.total_dim(), space.total_dim());
    std::size_t a = space.index_of({1, 0}), b = space.index_of({1, 1});
    m(a, a) = 0;
    m(b, b) = 0;
    m(a, b) = 1;
    m(b, a) = 1;
    return Operator(space, m);
}

Operator ccp(double theta, cplx a, cplx b, const std::vector<int> &dims) {
    if (std::abs(std::norm(a) + std::norm(b) - 1) > kStructTol) {
        throw std::invalid_argument("ccp: mixing amplitudes are not normalized");
    }
    if (dims.size() != 3) {
        throw std::invalid_argument("ccp: needs three sites");
    }
    if (std::abs(b) > 0 && dims[1] < 4) {
        throw std::invalid_argument("ccp: |030> needs local dimension 4 on the middle site");
    }
    HilbertSpace space(dims);
    const std::size_t n = space.total_dim();
    Vec k = Vec::Zero(n), psi = Vec::Zero(n);
    k(space.index_of({1, 1, 1})) = 1;
    psi(space.index_of({0, 2, 1})) = a;
    if (dims[1] >= 4) {
        psi(space.index_of({0, 3, 0})) = b;
    }
    double c = std::cos(theta / 2), s = std::sin(theta / 2);
    Mat m = Mat::Identity(n, n);
    m += (c - 1) * (k * k.adjoint() + psi * psi.adjoint());
    m += -I1 * s * (psi * k.adjoint() + k * psi.adjoint());
    return Operator(space, m);
}

std::vector<double> u3_params(const Eigen::Matrix2cd &u) {
    double a00 = std::abs(u(0, 0)), a10 = std::abs(u(1, 0));
    double theta = 2 * std::atan2(a10, a00);
    double g, phi, lambda;
    if (a00 > 1e-12 && a10 > 1e-12) {
        g = std::arg(u(0, 0));
        phi = std::arg(u(1, 0)) - g;
        lambda = std::arg(-u(0, 1)) - g;
    } else if (a10 <= 1e-12) {
        g = std::arg(u(0, 0));
        phi = 0;
        lambda = std::arg(u(1, 1)) - g;
    } else {
        g = 0;
        phi = std::arg(u(1, 0));
        lambda = std::arg(-u(0, 1));
    }
    return {theta, phi, lambda};
}

}  // namespace tcg
