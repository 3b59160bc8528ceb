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

#ifndef TCG_GATES_H
#define TCG_GATES_H

#include <vector>

#include "tcg/qudit.h"

namespace tcg {

/// Off-diagonal form of the two-level rotations.
///   kUnitary: -i e^{-+i phi} sin(theta/2)  (rotation about an equatorial axis)
///   kBare:    e^{-+i phi} sin(theta/2)     (printed appendix form; unitary only for theta in pi*Z)
enum class Convention { kUnitary, kBare };

/// Which site of a coupled pair visits level 2 during the |11> exchange.
/// kSecond couples |11> with |02>, kFirst couples |11> with |20>.
enum class Excursion { kFirst, kSecond };

enum class GateClass { kSingleQudit, kTwoQudit, kThreeQudit, kComposite };

/// Rotation on levels {0,1}; identity on higher levels.
Operator x01(double theta, double phi, Convention conv = Convention::kUnitary, int dim = 3);
/// Rotation on levels {1,2}; identity on the others.
Operator x12(double theta, double phi, Convention conv = Convention::kUnitary, int dim = 3);
/// diag(e^{i p0}, e^{i p1}, ...).
Operator z_phases(const std::vector<double> &phases);

/// Qubit-block single-qudit gates (identity above level 1).
Operator u3(double theta, double phi, double lambda, int dim = 3);
Operator hadamard(int dim = 3);
Operator t_gate(bool dagger = false, int dim = 3);

/// Exchange rotation between |11> and the excursion state of a pair:
/// [[cos, -i e^{-i phi_q} sin], [-i e^{i phi_q} sin, cos]] in the order (excursion state, |11>).
Operator cp(double theta, double phi_q = 0, Excursion exc = Excursion::kSecond, int dim_a = 3, int dim_b = 3);
Operator sqrt_cz(Excursion exc = Excursion::kSecond, double phi_q = 0, int dim_a = 3, int dim_b = 3);
/// -1 on |11>, identity elsewhere.
Operator cz(int dim_a = 3, int dim_b = 3);
/// NOT on target levels {0,1} when control is |1>.
Operator cx(int dim_a = 3, int dim_b = 3);

/// Three-site exchange between |111> and a|021> + b|030>. Needs level 3 on the
/// middle site whenever b != 0.
Operator ccp(double theta, cplx a, cplx b, const std::vector<int> &dims = {3, 4, 3});

/// Gate timing used for scheduling and noise. Defaults follow the device in
/// the reference experiment: 30 ns single-qudit and sqrt(CZ), 40 ns CZ, 90 ns CU.
struct Durations {
    double single_ns = 30;
    double cz_ns = 40;
    double sqrt_cz_ns = 30;
    double cu_ns = 90;
};

/// ZYZ parameters (theta, phi, lambda) with u ~ u3(theta, phi, lambda) up to global phase.
std::vector<double> u3_params(const Eigen::Matrix2cd &u);

}  // namespace tcg

#endif
