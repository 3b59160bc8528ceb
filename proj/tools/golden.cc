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

#include "golden.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tcg/composer.h"

namespace tcg::tools {
namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0, 1);

cplx cis(double x) { return std::exp(kI * x); }

std::vector<double> grid() {
    std::vector<double> g;
    for (int k = 0; k <= 8; k++) {
        g.push_back(k * 2 * kPi / 8);
    }
    return g;
}

// Printed S_c block of CU: identity on the control-0 states, X12-like block on
// {|10>, |11>}.
Mat cu_block(double th, double ph) {
    const double c = std::cos(th / 2), s = std::sin(th / 2);
    Mat m = Mat::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 1) = 1;
    m(2, 2) = c;
    m(2, 3) = -kI * cis(-ph) * s;
    m(3, 2) = -kI * cis(ph) * s;
    m(3, 3) = -c;
    return m;
}

// Phase-extended CU as printed (block on {|01>, |11>}).
Mat cu_phase_extended(double th, double ph, double pc1, double pc2) {
    const double c = std::cos(th / 2), s = std::sin(th / 2);
    Mat m = Mat::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 1) = c;
    m(1, 3) = -kI * cis(-ph) * s;
    m(2, 2) = cis(pc2);
    m(3, 1) = -kI * cis(ph) * s;
    m(3, 3) = -cis(pc1) * c;
    return m;
}

Mat cu_com(double th, double ph) {
    const double c = std::cos(th / 2), s = std::sin(th / 2);
    Mat m = Mat::Zero(9, 9);
    m(0, 0) = 1;
    m(1, 1) = c;
    m(1, 4) = -kI * cis(-ph) * s;
    m(2, 2) = -c;
    m(2, 5) = -kI * cis(-ph) * s;
    m(3, 3) = 1;
    m(4, 1) = -kI * cis(ph) * s;
    m(4, 4) = -c;
    m(5, 2) = -kI * cis(ph) * s;
    m(5, 5) = c;
    m(6, 6) = 1;
    m(7, 7) = c;
    m(7, 8) = cis(-ph) * s;
    m(8, 7) = cis(ph) * s;
    m(8, 8) = c;
    return m;
}

Mat cu_prime_matrix(double th, double p1, double p2) {
    const double c = std::cos(th / 2), s = std::sin(th / 2);
    const cplx d = cis(p1 - p2);
    Mat m = Mat::Zero(9, 9);
    m(0, 0) = 1;
    m(1, 1) = d * d;
    m(2, 2) = -d * d;
    m(3, 3) = c;
    m(3, 4) = -cis(-p2) * s;
    m(4, 3) = -cis(p1) * s;
    m(4, 4) = -d * c;
    m(5, 5) = d;
    m(6, 6) = 1;
    m(7, 7) = d * d;
    m(8, 8) = d;
    return m;
}

Mat cu_qutrit_matrix(double th, double p1, double p2) {
    const double c = std::cos(th / 2), s = std::sin(th / 2);
    const cplx e = cis(-p1 + p2);
    Mat m = Mat::Zero(9, 9);
    m(0, 0) = 1;
    m(1, 1) = e * c;
    m(1, 5) = -kI * cis(-(p1 + p2)) * s;
    m(2, 2) = -e;
    m(3, 3) = 1;
    m(4, 4) = -1. / e;
    m(5, 1) = -kI * cis(p1 + p2) * s;
    m(5, 5) = c / e;
    m(6, 6) = 1;
    m(7, 7) = e;
    m(8, 8) = 1. / e;
    return m;
}

Mat swap_com(double th, double p1, double p2, double p3, double p4) {
    const double c = std::cos(th / 2), s = std::sin(th / 2);
    const double px = -p1 + p2 - p3 + p4;
    const double py = p1 + 2 * p2 - 2 * p3 - p4;
    Mat m = Mat::Zero(9, 9);
    m(0, 0) = 1;
    m(1, 1) = cis(px) * c;
    m(1, 3) = -kI * cis(-p1 + p2) * s;
    m(2, 2) = cis(py);
    m(3, 1) = -kI * cis(-p3 + p4) * s;
    m(3, 3) = c;
    m(4, 4) = cis(px);
    m(5, 5) = cis(py);
    m(6, 6) = 1;
    m(7, 7) = cis(px);
    m(8, 8) = cis(py);
    return m;
}

Mat swap_block(double th, double p1, double p2, double p3, double p4) {
    const double c = std::cos(th / 2), s = std::sin(th / 2);
    const double px = -p1 + p2 - p3 + p4;
    Mat m = Mat::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 1) = cis(px) * c;
    m(1, 2) = -kI * cis(-p1 + p2) * s;
    m(2, 1) = -kI * cis(-p3 + p4) * s;
    m(2, 2) = c;
    m(3, 3) = cis(px);
    return m;
}

struct Acc {
    GoldenResult r;
    void add(const Mat &got, const Mat &want) {
        const double d = r.comparison == Comparison::kExact ? max_abs(got - want)
                                                            : distance_up_to_global_phase(got, want).distance;
        r.max_residual = std::max(r.max_residual, d);
        r.cases++;
    }
};

}  // namespace

const char *to_string(Comparison c) { return c == Comparison::kExact ? "exact" : "global-phase"; }

std::vector<GoldenResult> run_golden_suite(Convention conv) {
    const std::vector<double> g = grid();
    // Secondary phases for the multi-phase families.
    const std::vector<double> extra = {0, 0.4, 1.1, 2.5, -0.7};

    Acc cu_r{{"cu", "CU restricted to the computational subspace", Comparison::kExact}};
    Acc spcu_r{{"spcu", "SPCU restricted to the computational subspace", Comparison::kExact}};
    Acc com_r{{"cu_com", "CU full 9x9 matrix, excursion on site 1", Comparison::kExact}};
    Acc ext_r{{"cu_phase_extended", "CU with extra controlled phase phi_c2 (phi_c1 = 0)", Comparison::kExact}};
    Acc ext1_r{{"cu_phase_extended_phi_c1", "CU with conditional phase phi_c1 on |11> (phi_c1 != 0)",
                Comparison::kExact}};
    ext1_r.r.known_mismatch = true;
    Acc prime_r{{"cu_prime", "CU' full 9x9 matrix", Comparison::kGlobalPhase}};
    Acc qutrit_r{{"cu_qutrit", "CU_qutrit full 9x9 matrix (phi_q = 0)", Comparison::kExact}};
    Acc swapc_r{{"swap_com", "SWAP family full 9x9 matrix", Comparison::kGlobalPhase}};
    Acc swap_r{{"swap", "SWAP family restricted to the computational subspace", Comparison::kGlobalPhase}};
    Acc pi_r{{"cnot_path_independence", "CNOT with sqrt(CZ) phase zeta vs Z-corrected zeta = 0 CNOT (16 zeta)",
              Comparison::kGlobalPhase}};

    for (double th : g) {
        for (double ph : g) {
            cu_r.add(cu(th, ph, {.convention = conv}).restricted.matrix(), cu_block(th, ph));
            Mat sp = cu_block(th, ph);
            sp.row(3).setZero();
            spcu_r.add(spcu(th, ph, {.convention = conv}).restricted.matrix(), sp);
            com_r.add(cu(th, ph, {.control_site = 1, .convention = conv}).full.matrix(), cu_com(th, ph));
            for (double e : extra) {
                ext_r.add(cu(th, ph, {.phi_c2 = e, .control_site = 1, .convention = conv}).restricted.matrix(),
                          cu_phase_extended(th, ph, 0, e));
                if (e != 0) {
                    ext1_r.add(cu(th, ph, {.phi_c1 = e, .control_site = 1, .convention = conv}).restricted.matrix(),
                               cu_phase_extended(th, ph, e, 0));
                }
                const FamilyOptions fo{.convention = conv};
                prime_r.add(cu_prime(th, ph, e, fo).full.matrix(), cu_prime_matrix(th, ph, e));
                qutrit_r.add(cu_qutrit(th, ph, e, 0, fo).full.matrix(), cu_qutrit_matrix(th, ph, e));
            }
        }
        for (double p1 : extra) {
            for (double p2 : extra) {
                for (double p3 : extra) {
                    for (double p4 : {0.0, 0.9}) {
                        const ComposedGate s = swap_family(th, p1, p2, p3, p4, 0, {.convention = conv});
                        swapc_r.add(s.full.matrix(), swap_com(th, p1, p2, p3, p4));
                        swap_r.add(s.restricted.matrix(), swap_block(th, p1, p2, p3, p4));
                    }
                }
            }
        }
    }
    for (int k = 0; k < 16; k++) {
        const PathIndependence p = path_independence_check(k * 2 * kPi / 16);
        pi_r.r.max_residual = std::max(pi_r.r.max_residual, p.residual);
        pi_r.r.cases++;
    }
    return {cu_r.r, spcu_r.r, com_r.r, ext_r.r, ext1_r.r, prime_r.r, qutrit_r.r, swapc_r.r, swap_r.r, pi_r.r};
}

}  // namespace tcg::tools
