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

#include "tcg/composer.h"

#include <cmath>
#include <numbers>

namespace tcg {

namespace {

constexpr double kPi = std::numbers::pi;

Mat computational_projector(const HilbertSpace &space) {
    const std::size_t n = space.total_dim();
    Mat p = Mat::Zero(n, n);
    for (std::size_t i = 0; i < n; i++) {
        if (space.is_computational(i)) {
            p(i, i) = 1;
        }
    }
    return p;
}

Mat product(const std::vector<PathStep> &steps, const HilbertSpace &space) {
    Mat m = Mat::Identity(space.total_dim(), space.total_dim());
    for (const auto &s : steps) {
        m = m * s.op.matrix();
    }
    return m;
}

bool kinds_palindromic(const std::vector<PathStep> &steps) {
    for (std::size_t i = 0, j = steps.size(); i < j--; i++) {
        if (steps[i].kind != steps[j].kind) {
            return false;
        }
    }
    return true;
}

ComposedGate finish(const PathSpec &path, bool symmetric) {
    validate_path(path);
    Operator full(path.space, product(path.steps, path.space));
    return ComposedGate{full, restrict_computational(full), symmetric, path};
}

Excursion excursion_for(int site) {
    if (site != 0 && site != 1) {
        throw std::invalid_argument("control site must be 0 or 1 on a two-site gate");
    }
    return site == 0 ? Excursion::kFirst : Excursion::kSecond;
}

PathStep step(StepKind kind, Operator op, std::string label) { return PathStep{kind, std::move(op), std::move(label)}; }

}  // namespace

bool mixes_subspaces(const Operator &op) {
    Mat p = computational_projector(op.space());
    Mat q = Mat::Identity(p.rows(), p.cols()) - p;
    return std::max(max_abs(q * op.matrix() * p), max_abs(p * op.matrix() * q)) > kStructTol;
}

void validate_path(const PathSpec &path) {
    if (path.steps.empty()) {
        throw std::invalid_argument("path has no steps");
    }
    Mat p = computational_projector(path.space);
    Mat q = Mat::Identity(p.rows(), p.cols()) - p;
    for (std::size_t i = 0; i < path.steps.size(); i++) {
        const auto &s = path.steps[i];
        if (!(s.op.space() == path.space)) {
            throw PathError(i, "step " + std::to_string(i) + " (" + s.label + ") acts on a different space");
        }
        double leak = std::max(max_abs(q * s.op.matrix() * p), max_abs(p * s.op.matrix() * q));
        if (s.kind == StepKind::kInternal && leak > kStructTol) {
            throw PathError(i, "step " + std::to_string(i) + " (" + s.label +
                                   ") is declared internal but moves population out of the computational subspace");
        }
    }
}

ComposedGate compose_symmetric(const PathSpec &half) {
    if (half.steps.empty()) {
        throw std::invalid_argument("path has no steps");
    }
    PathSpec full = half;
    for (std::size_t i = half.steps.size() - 1; i-- > 0;) {
        full.steps.push_back(half.steps[i]);
    }
    return finish(full, true);
}

ComposedGate compose_short_path(const PathSpec &path) { return finish(path, false); }

ComposedGate compose_path(const PathSpec &path) { return finish(path, kinds_palindromic(path.steps)); }

ComposedGate cu(double theta, double phi, const CuOptions &opt) {
    const HilbertSpace space = HilbertSpace::qutrits(2);
    const int c = opt.control_site;
    const Excursion exc = excursion_for(c);
    Operator s = sqrt_cz(exc, opt.phi_q);
    Operator mid = embed(z_phases({0, 0, opt.phi_c1}) * x12(theta, phi, opt.convention), {c}, space);
    if (opt.phi_c2 != 0) {
        mid = embed(z_phases({0, opt.phi_c2, 0}), {1 - c}, space) * mid;
    }
    return compose_symmetric(PathSpec{space, {step(StepKind::kTransition, s, "sqrt_cz"),
                                              step(StepKind::kTransition, mid, "x12")}});
}

ComposedGate spcu(double theta, double phi, const SpcuOptions &opt) {
    const HilbertSpace space = HilbertSpace::qutrits(2);
    const int c = opt.control_site;
    Operator s = sqrt_cz(excursion_for(c), 0);
    Operator r = embed(x12(theta, phi, opt.convention), {c}, space);
    PathSpec path{space, {}};
    if (opt.prep) {
        path.steps = {step(StepKind::kTransition, s, "sqrt_cz"), step(StepKind::kTransition, r, "x12")};
    } else {
        path.steps = {step(StepKind::kTransition, r, "x12"), step(StepKind::kTransition, s, "sqrt_cz")};
    }
    return compose_short_path(path);
}

ComposedGate cu_prime(double theta, double phi1, double phi2, const FamilyOptions &opt) {
    const HilbertSpace space = HilbertSpace::qutrits(2);
    const Excursion exc = excursion_for(opt.site);
    Operator s = sqrt_cz(exc);
    return compose_path(PathSpec{
        space,
        {step(StepKind::kTransition, s, "sqrt_cz"),
         step(StepKind::kInternal, embed(x01(kPi, phi1, opt.convention), {opt.site}, space), "x01"),
         step(StepKind::kTransition, cp(theta, 0, exc), "cp"),
         step(StepKind::kInternal, embed(x01(kPi, phi2, opt.convention), {opt.site}, space), "x01"),
         step(StepKind::kTransition, s, "sqrt_cz")}});
}

ComposedGate cu_qutrit(double theta, double phi1, double phi2, double phi_q, const FamilyOptions &opt) {
    const HilbertSpace space = HilbertSpace::qutrits(2);
    const Excursion exc = excursion_for(opt.site);
    Operator s = sqrt_cz(exc);
    return compose_path(PathSpec{
        space,
        {step(StepKind::kTransition, s, "sqrt_cz"),
         step(StepKind::kTransition, embed(x12(kPi, phi1, opt.convention), {opt.site}, space), "x12"),
         step(StepKind::kTransition, cp(theta, phi_q, exc), "cp"),
         step(StepKind::kTransition, embed(x12(kPi, phi2, opt.convention), {opt.site}, space), "x12"),
         step(StepKind::kTransition, s, "sqrt_cz")}});
}

ComposedGate swap_family(double theta, double phi1, double phi2, double phi3, double phi4, double phi_q,
                         const FamilyOptions &opt) {
    const HilbertSpace space = HilbertSpace::qutrits(2);
    const Excursion exc = excursion_for(opt.site);
    auto on_site = [&](const Operator &op) { return embed(op, {opt.site}, space); };
    return compose_path(PathSpec{
        space,
        {step(StepKind::kTransition, on_site(x12(kPi, phi1, opt.convention)), "x12"),
         step(StepKind::kInternal, on_site(x01(kPi, phi2, opt.convention)), "x01"),
         step(StepKind::kTransition, cp(theta, phi_q, exc), "cp"),
         step(StepKind::kInternal, on_site(x01(kPi, phi3, opt.convention)), "x01"),
         step(StepKind::kTransition, on_site(x12(kPi, phi4, opt.convention)), "x12")}});
}

SwapPhases swap_phases(double phi1, double phi2, double phi3, double phi4) {
    return {-phi1 + phi2 - phi3 + phi4, phi1 + 2 * phi2 - 2 * phi3 - phi4};
}

ComposedGate ccu(double theta, double phi1, double phi2, cplx mix_a, cplx mix_b, Convention conv) {
    const HilbertSpace space({3, 4, 3});
    Operator s = ccp(kPi, mix_a, mix_b, space.dims());
    return compose_path(PathSpec{
        space,
        {step(StepKind::kTransition, s, "sqrt_ccz"),
         step(StepKind::kInternal, embed(x01(kPi, phi1, conv, 4), {1}, space), "x01"),
         step(StepKind::kTransition, ccp(theta, mix_a, mix_b, space.dims()), "ccp"),
         step(StepKind::kInternal, embed(x01(kPi, phi2, conv, 4), {1}, space), "x01"),
         step(StepKind::kTransition, s, "sqrt_ccz")}});
}

PathIndependence path_independence_check(double zeta, int control_site) {
    const HilbertSpace space = HilbertSpace::qutrits(2);
    CuOptions with{.control_site = control_site, .phi_q = zeta};
    CuOptions without{.control_site = control_site};
    Mat u_zeta = cu(kPi, 0, with).full.matrix();
    Mat u_zero = cu(kPi, 0, without).full.matrix();
    Mat z = embed(z_phases({0, zeta, 0}), {1 - control_site}, space).matrix();
    PathIndependence out;
    out.residual = distance_up_to_global_phase(u_zeta, z * u_zero * z.adjoint()).distance;
    out.uncorrected = distance_up_to_global_phase(u_zeta, u_zero).distance;
    out.one_sided = distance_up_to_global_phase(u_zeta, z * u_zero).distance;
    return out;
}

}  // namespace tcg
