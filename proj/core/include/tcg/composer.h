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

#ifndef TCG_COMPOSER_H
#define TCG_COMPOSER_H

#include <stdexcept>
#include <string>
#include <vector>

#include "tcg/gates.h"
#include "tcg/qudit.h"

namespace tcg {

enum class StepKind { kTransition, kInternal };

/// One factor of a pathway. `op` is already embedded in the path's space.
struct PathStep {
    StepKind kind;
    Operator op;
    std::string label;
};

/// Steps are listed in written (matrix-product) order: the leftmost step acts last.
struct PathSpec {
    HilbertSpace space;
    std::vector<PathStep> steps;
};

struct ComposedGate {
    Operator full;
    Operator restricted;
    bool symmetric = false;
    PathSpec provenance;
};

/// Thrown when a declared step does not behave like its kind.
class PathError : public std::invalid_argument {
  public:
    PathError(std::size_t step, const std::string &what)
        : std::invalid_argument(what), step_index(step) {}
    std::size_t step_index;
};

/// True when `op` moves amplitude between computational and non-computational states.
bool mixes_subspaces(const Operator &op);

/// Rejects internal steps that are not block diagonal with respect to
/// computational / non-computational states. Transition steps are not checked:
/// a zero-angle rotation is a legitimate (trivial) transition.
void validate_path(const PathSpec &path);

/// Builds the palindromic pathway from its first half: the last listed step is
/// the pivot and appears once, everything before it is mirrored after it.
/// [T1, I1, ..., T_N] becomes T1 I1 ... T_N ... I1 T1 (2N-1 transitions).
ComposedGate compose_symmetric(const PathSpec &half);

/// Plain product of the listed steps with no mirror.
ComposedGate compose_short_path(const PathSpec &path);

/// Plain product of the listed steps, flagged symmetric when the step kinds read
/// the same forwards and backwards. Used by named constructors whose mirror
/// halves carry different parameters.
ComposedGate compose_path(const PathSpec &path);

struct CuOptions {
    double phi_c1 = 0;
    double phi_c2 = 0;
    /// Site hosting the level-2 excursion and the X12 rotation. With 0 the
    /// coupled block sits on {|10>, |11>}; with 1 on {|01>, |11>}.
    int control_site = 0;
    Convention convention = Convention::kUnitary;
    double phi_q = 0;
};

/// sqrt(CZ) . Z(phi_c2) (x) Z(phi_c1) X12(theta, phi) . sqrt(CZ) on two qutrits.
ComposedGate cu(double theta, double phi, const CuOptions &opt = {});

struct SpcuOptions {
    int control_site = 0;
    Convention convention = Convention::kUnitary;
    /// false: X12 . sqrt(CZ) (sqrt(CZ) acts first, maps |11> out and back to |10>).
    /// true:  sqrt(CZ) . X12 (X12 acts first, maps |10> into |11>), the form
    /// used for state preparation.
    bool prep = false;
};
ComposedGate spcu(double theta, double phi, const SpcuOptions &opt = {});

struct FamilyOptions {
    Convention convention = Convention::kBare;
    /// Site carrying the single-qudit rotations and the level-2 excursion.
    int site = 1;
};

/// sqrt(CZ) . X01(pi, phi1) . CP(theta) . X01(pi, phi2) . sqrt(CZ).
ComposedGate cu_prime(double theta, double phi1, double phi2, const FamilyOptions &opt = {});
/// sqrt(CZ) . X12(pi, phi1) . CP(theta, phi_q) . X12(pi, phi2) . sqrt(CZ).
ComposedGate cu_qutrit(double theta, double phi1, double phi2, double phi_q, const FamilyOptions &opt = {});

struct SwapPhases {
    double phi_x = 0;
    double phi_y = 0;
};
/// X12(pi, phi1) . X01(pi, phi2) . CP(theta, phi_q) . X01(pi, phi3) . X12(pi, phi4).
ComposedGate swap_family(double theta, double phi1, double phi2, double phi3, double phi4, double phi_q = 0,
                         const FamilyOptions &opt = {});
/// Closed-form S_uc diagonal phases of the swap family.
SwapPhases swap_phases(double phi1, double phi2, double phi3, double phi4);

/// sqrt(CCZ) . X01(pi, phi1) . CCP(theta) . X01(pi, phi2) . sqrt(CCZ) on dims (3, 4, 3).
/// X01 acts on the middle site; the S_c action exchanges |101> and |111>.
ComposedGate ccu(double theta, double phi1, double phi2, cplx mix_a, cplx mix_b,
                 Convention conv = Convention::kUnitary);

struct PathIndependence {
    double residual = 0;         // corrected comparison, up to global phase
    double uncorrected = 0;      // CNOT_zeta vs CNOT_0, up to global phase
    double one_sided = 0;        // CNOT_zeta vs Z_zeta . CNOT_0, up to global phase
};
/// CU(pi, 0) with sqrt(CZ) phase zeta in both exchanges, compared against the
/// zeta = 0 gate with the target-site phase diag(1, e^{i zeta}, 1) moved through it:
/// CNOT_zeta = Z_zeta . CNOT_0 . Z_zeta^dag.
PathIndependence path_independence_check(double zeta, int control_site = 1);

}  // namespace tcg

#endif
