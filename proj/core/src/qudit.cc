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

#include "tcg/qudit.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace tcg {

HilbertSpace::HilbertSpace(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) {
        throw std::invalid_argument("HilbertSpace needs at least one site");
    }
    for (int d : dims_) {
        if (d < 2) {
            throw std::invalid_argument("local dimension must be >= 2, got " + std::to_string(d));
        }
        total_ *= static_cast<std::size_t>(d);
    }
}

HilbertSpace HilbertSpace::qutrits(int sites) { return HilbertSpace(std::vector<int>(sites, 3)); }

std::size_t HilbertSpace::index_of(const std::vector<int> &labels) const {
    if (labels.size() != dims_.size()) {
        throw std::invalid_argument("label count does not match site count");
    }
    std::size_t idx = 0;
    for (std::size_t i = 0; i < dims_.size(); i++) {
        if (labels[i] < 0 || labels[i] >= dims_[i]) {
            throw std::out_of_range("label out of range at site " + std::to_string(i));
        }
        idx = idx * dims_[i] + labels[i];
    }
    return idx;
}

std::vector<int> HilbertSpace::labels_of(std::size_t index) const {
    std::vector<int> out(dims_.size());
    for (std::size_t i = dims_.size(); i-- > 0;) {
        out[i] = static_cast<int>(index % dims_[i]);
        index /= dims_[i];
    }
    return out;
}

bool HilbertSpace::is_computational(std::size_t index) const {
    for (std::size_t i = dims_.size(); i-- > 0;) {
        if (index % dims_[i] > 1) {
            return false;
        }
        index /= dims_[i];
    }
    return true;
}

HilbertSpace HilbertSpace::subspace(const std::vector<int> &sites) const {
    std::vector<int> d;
    for (int s : sites) {
        d.push_back(dims_.at(s));
    }
    return HilbertSpace(d);
}

StateVector::StateVector(HilbertSpace space, Vec amps) : space_(std::move(space)), amps_(std::move(amps)) {
    if (static_cast<std::size_t>(amps_.size()) != space_.total_dim()) {
        throw std::invalid_argument("amplitude count does not match space");
    }
    double n = amps_.norm();
    if (std::abs(n - 1) > kStructTol) {
        throw std::invalid_argument("state is not normalized (norm " + std::to_string(n) + ")");
    }
}

StateVector StateVector::basis(const HilbertSpace &space, const std::vector<int> &labels) {
    Vec v = Vec::Zero(space.total_dim());
    v(space.index_of(labels)) = 1;
    return StateVector(space, v);
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amps_.size());
    for (Eigen::Index i = 0; i < amps_.size(); i++) {
        p[i] = std::norm(amps_(i));
    }
    return p;
}

DensityMatrix::DensityMatrix(HilbertSpace space, Mat matrix) : space_(std::move(space)), matrix_(std::move(matrix)) {
    auto n = static_cast<Eigen::Index>(space_.total_dim());
    if (matrix_.rows() != n || matrix_.cols() != n) {
        throw std::invalid_argument("density matrix shape does not match space");
    }
    if (max_abs(matrix_ - matrix_.adjoint()) > kStructTol) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
    if (std::abs(matrix_.trace() - cplx(1)) > kStructTol) {
        throw std::invalid_argument("density matrix trace is not 1");
    }
}

DensityMatrix DensityMatrix::pure(const StateVector &psi) {
    return DensityMatrix(psi.space(), psi.amps() * psi.amps().adjoint());
}

std::vector<double> DensityMatrix::populations() const {
    std::vector<double> p(matrix_.rows());
    for (Eigen::Index i = 0; i < matrix_.rows(); i++) {
        p[i] = matrix_(i, i).real();
    }
    return p;
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Mat> es(matrix_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

Operator::Operator(HilbertSpace space, Mat matrix) : space_(std::move(space)), matrix_(std::move(matrix)) {
    auto n = static_cast<Eigen::Index>(space_.total_dim());
    if (matrix_.rows() != n || matrix_.cols() != n) {
        throw std::invalid_argument("operator shape does not match space");
    }
    unitary_ = is_unitary(matrix_);
}

Operator Operator::identity(const HilbertSpace &space) {
    auto n = static_cast<Eigen::Index>(space.total_dim());
    return Operator(space, Mat::Identity(n, n));
}

Operator Operator::operator*(const Operator &rhs) const {
    if (!(space_ == rhs.space_)) {
        throw std::invalid_argument("operator product across different spaces");
    }
    return Operator(space_, matrix_ * rhs.matrix_);
}

Operator Operator::adjoint() const { return Operator(space_, matrix_.adjoint()); }

StateVector Operator::apply(const StateVector &psi) const {
    if (!(space_ == psi.space())) {
        throw std::invalid_argument("operator and state live in different spaces");
    }
    return StateVector(space_, matrix_ * psi.amps());
}

DensityMatrix Operator::apply(const DensityMatrix &rho) const {
    if (!(space_ == rho.space())) {
        throw std::invalid_argument("operator and state live in different spaces");
    }
    return DensityMatrix(space_, matrix_ * rho.matrix() * matrix_.adjoint());
}

static std::vector<int> concat(const std::vector<int> &a, const std::vector<int> &b) {
    std::vector<int> out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

Operator tensor(const Operator &a, const Operator &b) {
    return Operator(HilbertSpace(concat(a.space().dims(), b.space().dims())), Mat(Eigen::kroneckerProduct(a.matrix(), b.matrix())));
}

StateVector tensor(const StateVector &a, const StateVector &b) {
    return StateVector(HilbertSpace(concat(a.space().dims(), b.space().dims())), Vec(Eigen::kroneckerProduct(a.amps(), b.amps())));
}

void apply_on_sites(Mat &m, const Mat &op, const std::vector<int> &sites, const HilbertSpace &space) {
    const std::size_t n = space.total_dim();
    if (static_cast<std::size_t>(m.rows()) != n) {
        throw std::invalid_argument("apply_on_sites: row count does not match the space");
    }
    std::vector<std::size_t> stride(space.num_sites());
    std::size_t acc = 1;
    for (int s = space.num_sites(); s-- > 0;) {
        stride[s] = acc;
        acc *= space.dim(s);
    }
    for (int s : sites) {
        if (s < 0 || s >= space.num_sites()) {
            throw std::out_of_range("apply_on_sites: site index out of range");
        }
    }
    const std::size_t k = static_cast<std::size_t>(op.rows());
    // Offsets of the op's local basis states relative to a base index whose labels
    // on `sites` are all zero.
    std::vector<std::size_t> offset(k, 0);
    for (std::size_t r = 0; r < k; r++) {
        std::size_t rem = r;
        for (std::size_t t = sites.size(); t-- > 0;) {
            int d = space.dim(sites[t]);
            offset[r] += (rem % d) * stride[sites[t]];
            rem /= d;
        }
    }
    Mat block(k, m.cols());
    for (std::size_t base = 0; base < n; base++) {
        bool is_base = true;
        for (int s : sites) {
            if ((base / stride[s]) % space.dim(s) != 0) {
                is_base = false;
                break;
            }
        }
        if (!is_base) {
            continue;
        }
        for (std::size_t r = 0; r < k; r++) {
            block.row(r) = m.row(base + offset[r]);
        }
        block = op * block;
        for (std::size_t r = 0; r < k; r++) {
            m.row(base + offset[r]) = block.row(r);
        }
    }
}

Mat conjugate_on_sites(const Mat &rho, const Mat &op, const std::vector<int> &sites, const HilbertSpace &space) {
    Mat a = rho;
    apply_on_sites(a, op, sites, space);
    Mat b = a.adjoint();
    apply_on_sites(b, op, sites, space);
    return b.adjoint();
}

Operator embed(const Operator &op, const std::vector<int> &sites, const HilbertSpace &space) {
    for (std::size_t i = 0; i < sites.size(); i++) {
        if (sites[i] < 0 || sites[i] >= space.num_sites()) {
            throw std::out_of_range("embed: site index out of range");
        }
        for (std::size_t j = 0; j < i; j++) {
            if (sites[i] == sites[j]) {
                throw std::invalid_argument("embed: duplicate site " + std::to_string(sites[i]));
            }
        }
    }
    if (!(op.space() == space.subspace(sites))) {
        throw std::invalid_argument("embed: operator dims do not match the selected sites");
    }
    const std::size_t n = space.total_dim();
    const std::size_t k = op.space().total_dim();
    const Mat &m = op.matrix();
    Mat out = Mat::Zero(n, n);
    // Column j of the result: split labels into the op part and the rest, then
    // scatter op's column into rows that share the rest.
    for (std::size_t j = 0; j < n; j++) {
        std::vector<int> labels = space.labels_of(j);
        std::size_t sub = 0;
        for (int s : sites) {
            sub = sub * space.dim(s) + labels[s];
        }
        for (std::size_t r = 0; r < k; r++) {
            cplx v = m(r, sub);
            if (v == cplx(0)) {
                continue;
            }
            std::size_t rem = r;
            for (std::size_t t = sites.size(); t-- > 0;) {
                int d = space.dim(sites[t]);
                labels[sites[t]] = static_cast<int>(rem % d);
                rem /= d;
            }
            out(space.index_of(labels), j) = v;
        }
    }
    return Operator(space, out);
}

std::vector<std::size_t> computational_indices(const HilbertSpace &space) {
    std::vector<std::size_t> idx;
    const int m = space.num_sites();
    for (std::size_t b = 0; b < (std::size_t{1} << m); b++) {
        std::vector<int> labels(m);
        for (int s = 0; s < m; s++) {
            labels[s] = static_cast<int>((b >> (m - 1 - s)) & 1);
        }
        idx.push_back(space.index_of(labels));
    }
    return idx;
}

Mat restrict_computational(const Mat &m, const HilbertSpace &space) {
    auto idx = computational_indices(space);
    Mat out(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); i++) {
        for (std::size_t j = 0; j < idx.size(); j++) {
            out(i, j) = m(idx[i], idx[j]);
        }
    }
    return out;
}

Operator restrict_computational(const Operator &op) {
    return Operator(HilbertSpace(std::vector<int>(op.space().num_sites(), 2)),
                    restrict_computational(op.matrix(), op.space()));
}

StateVector restrict_computational(const StateVector &psi) {
    const std::vector<std::size_t> idx = computational_indices(psi.space());
    Vec amps(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); k++) {
        amps(static_cast<Eigen::Index>(k)) = psi.amps()(static_cast<Eigen::Index>(idx[k]));
    }
    return StateVector(HilbertSpace(std::vector<int>(psi.space().num_sites(), 2)), amps);
}

DensityMatrix partial_trace(const DensityMatrix &rho, const std::vector<int> &keep) {
    const HilbertSpace &space = rho.space();
    if (keep.empty()) {
        throw std::invalid_argument("partial_trace: keep is empty");
    }
    std::vector<bool> kept(space.num_sites(), false);
    for (int s : keep) {
        if (s < 0 || s >= space.num_sites()) {
            throw std::out_of_range("partial_trace: bad site index");
        }
        if (kept[s]) {
            throw std::invalid_argument("partial_trace: duplicate site");
        }
        kept[s] = true;
    }
    HilbertSpace out_space = space.subspace(keep);
    const std::size_t n = space.total_dim();
    Mat out = Mat::Zero(out_space.total_dim(), out_space.total_dim());
    std::vector<std::size_t> kept_idx(n), rest_idx(n);
    for (std::size_t i = 0; i < n; i++) {
        auto labels = space.labels_of(i);
        std::size_t k = 0, r = 0;
        for (int s : keep) {
            k = k * space.dim(s) + labels[s];
        }
        for (int s = 0; s < space.num_sites(); s++) {
            if (!kept[s]) {
                r = r * space.dim(s) + labels[s];
            }
        }
        kept_idx[i] = k;
        rest_idx[i] = r;
    }
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t j = 0; j < n; j++) {
            if (rest_idx[i] == rest_idx[j]) {
                out(kept_idx[i], kept_idx[j]) += rho.matrix()(i, j);
            }
        }
    }
    return DensityMatrix(out_space, out);
}

double state_fidelity(const DensityMatrix &rho, const StateVector &psi) {
    if (!(rho.space() == psi.space())) {
        throw std::invalid_argument("state_fidelity: space mismatch");
    }
    double f = (psi.amps().adjoint() * rho.matrix() * psi.amps())(0, 0).real();
    if (f < 0 && f > -1e-9) {
        f = 0;
    } else if (f > 1 && f < 1 + 1e-9) {
        f = 1;
    }
    return f;
}

PhaseDistance distance_up_to_global_phase(const Mat &u, const Mat &v) {
    if (u.rows() != v.rows() || u.cols() != v.cols()) {
        throw std::invalid_argument("distance_up_to_global_phase: shape mismatch");
    }
    PhaseDistance out;
    cplx overlap = (v.adjoint() * u).trace();
    if (std::abs(overlap) < 1e-12) {
        out.comparable = false;
        out.distance = max_abs(u - v);
        return out;
    }
    out.phase = std::arg(overlap);
    out.distance = max_abs(u - std::polar(1.0, out.phase) * v);
    return out;
}

PhaseDistance distance_up_to_global_phase(const Operator &u, const Operator &v) {
    if (!(u.space() == v.space())) {
        throw std::invalid_argument("distance_up_to_global_phase: space mismatch");
    }
    return distance_up_to_global_phase(u.matrix(), v.matrix());
}

double max_abs(const Mat &m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool is_unitary(const Mat &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return max_abs(m.adjoint() * m - Mat::Identity(m.rows(), m.cols())) <= tol;
}

}  // namespace tcg
