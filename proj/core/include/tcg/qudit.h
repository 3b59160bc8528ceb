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

#ifndef TCG_QUDIT_H
#define TCG_QUDIT_H

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace tcg {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr double kStructTol = 1e-10;
inline constexpr double kGoldenTol = 1e-12;

/// Per-site local dimensions. Site 0 is the most significant digit of a basis
/// index, so |k0 k1 ...> has index sum_i k_i * prod_{j>i} d_j.
class HilbertSpace {
  public:
    HilbertSpace() = default;
    explicit HilbertSpace(std::vector<int> dims);
    static HilbertSpace qutrits(int sites);

    int num_sites() const { return static_cast<int>(dims_.size()); }
    int dim(int site) const { return dims_.at(site); }
    const std::vector<int> &dims() const { return dims_; }
    std::size_t total_dim() const { return total_; }

    std::size_t index_of(const std::vector<int> &labels) const;
    std::vector<int> labels_of(std::size_t index) const;
    /// True when every site label is 0 or 1.
    bool is_computational(std::size_t index) const;
    HilbertSpace subspace(const std::vector<int> &sites) const;

    bool operator==(const HilbertSpace &other) const { return dims_ == other.dims_; }

  private:
    std::vector<int> dims_;
    std::size_t total_ = 1;
};

class StateVector {
  public:
    StateVector(HilbertSpace space, Vec amps);
    static StateVector basis(const HilbertSpace &space, const std::vector<int> &labels);

    const HilbertSpace &space() const { return space_; }
    const Vec &amps() const { return amps_; }
    std::vector<double> probabilities() const;

  private:
    HilbertSpace space_;
    Vec amps_;
};

class DensityMatrix {
  public:
    DensityMatrix(HilbertSpace space, Mat matrix);
    static DensityMatrix pure(const StateVector &psi);

    const HilbertSpace &space() const { return space_; }
    const Mat &matrix() const { return matrix_; }
    std::vector<double> populations() const;
    double min_eigenvalue() const;

  private:
    HilbertSpace space_;
    Mat matrix_;
};

class Operator {
  public:
    Operator(HilbertSpace space, Mat matrix);
    static Operator identity(const HilbertSpace &space);

    const HilbertSpace &space() const { return space_; }
    const Mat &matrix() const { return matrix_; }
    bool unitary() const { return unitary_; }

    Operator operator*(const Operator &rhs) const;
    Operator adjoint() const;
    StateVector apply(const StateVector &psi) const;
    DensityMatrix apply(const DensityMatrix &rho) const;

  private:
    HilbertSpace space_;
    Mat matrix_;
    bool unitary_ = false;
};

Operator tensor(const Operator &a, const Operator &b);
StateVector tensor(const StateVector &a, const StateVector &b);

/// Places `op` on `sites` (in the given order) of `space`, identity elsewhere.
Operator embed(const Operator &op, const std::vector<int> &sites, const HilbertSpace &space);

/// Left-multiplies every column of `m` by `op` acting on `sites` without forming
/// the full-space operator.
void apply_on_sites(Mat &m, const Mat &op, const std::vector<int> &sites, const HilbertSpace &space);
/// op rho op^dag with op acting on `sites`.
Mat conjugate_on_sites(const Mat &rho, const Mat &op, const std::vector<int> &sites, const HilbertSpace &space);

/// Submatrix over basis states whose labels are all 0 or 1, ordered |0..0> .. |1..1>.
/// The result lives on a space of qubits.
Operator restrict_computational(const Operator &op);
Mat restrict_computational(const Mat &m, const HilbertSpace &space);
std::vector<std::size_t> computational_indices(const HilbertSpace &space);
/// The same state on a qubit register; throws if it has weight outside the
/// computational subspace.
StateVector restrict_computational(const StateVector &psi);

DensityMatrix partial_trace(const DensityMatrix &rho, const std::vector<int> &keep);

double state_fidelity(const DensityMatrix &rho, const StateVector &psi);

struct PhaseDistance {
    double distance = 0;
    double phase = 0;  // gamma such that u ~ e^{i gamma} v
    bool comparable = true;
};
/// min over gamma of max|u - e^{i gamma} v|, with gamma = arg Tr(v^dag u).
PhaseDistance distance_up_to_global_phase(const Operator &u, const Operator &v);
PhaseDistance distance_up_to_global_phase(const Mat &u, const Mat &v);

double max_abs(const Mat &m);
bool is_unitary(const Mat &m, double tol = kStructTol);

}  // namespace tcg

#endif
