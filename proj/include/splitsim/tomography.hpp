// Copyright 2026 The splitsim developers
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

#ifndef SPLITSIM_TOMOGRAPHY_HPP
#define SPLITSIM_TOMOGRAPHY_HPP

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace splitsim {

using Matrix4cd = Eigen::Matrix4cd;
using Matrix8cd = Eigen::Matrix<std::complex<double>, 8, 8>;
using Ptm = Eigen::Matrix<double, 16, 4>;  // rows: two-qubit Paulis, cols: {I,X,Y,Z}

/// Counts for one measurement-basis pair of the two logical qubits.
struct BasisCell {
    uint64_t n = 0;        // retained shots
    uint64_t minus1 = 0;   // code-1 observable gave -1
    uint64_t minus2 = 0;
    uint64_t minus12 = 0;  // product gave -1

    double mean1() const;
    double mean2() const;
    double mean12() const;
};

/// Per-(basis pair) logical observable counts for one input state and one
/// analysis mode.
struct LogicalDataset {
    std::map<std::pair<char, char>, BasisCell> cells;  // keys 'X','Y','Z'
    double retention = 1.0;

    const BasisCell &cell(char b1, char b2) const;
    bool complete() const;  // all nine basis pairs present
};

/// Two-qubit Pauli expectation table over {I,X,Y,Z} x {I,X,Y,Z}.
/// Identity-component entries are averaged over all compatible bases.
struct ExpectationTable {
    double v[4][4] = {};
    double se[4][4] = {};

    double &at(int a, int b) { return v[a][b]; }
    double at(int a, int b) const { return v[a][b]; }
};

ExpectationTable expectations_from(const LogicalDataset &data);

/// Index helpers: 0=I, 1=X, 2=Y, 3=Z.
Eigen::Matrix2cd pauli_1q(int a);
Matrix4cd pauli_2q(int a, int b);

/// rho = (1/4) sum_PQ <PQ> P (x) Q, followed by the physical projection.
Matrix4cd reconstruct_state(const LogicalDataset &data);
Matrix4cd state_from_expectations(const ExpectationTable &table);

/// Nearest (Frobenius) unit-trace positive semidefinite matrix by
/// eigenvalue truncation with uniform redistribution of the deficit.
Eigen::MatrixXcd project_physical(const Eigen::MatrixXcd &rho_raw);

double state_fidelity(const Matrix4cd &rho, const Eigen::Vector4cd &target_pure);
/// 1/4 (1 + <XX> - <YY> + <ZZ>).
double bell_fidelity(const ExpectationTable &table);
double bell_fidelity(const LogicalDataset &data);
/// (1 + <X> sx + <Y> sy + <Z> sz) / 2 against the Bloch direction of
/// (theta, phi), clipped to at most one.
double single_logical_fidelity(double x, double y, double z, double theta, double phi);
/// Norm-based fidelity Tr[a b] / max(Tr a^2, Tr b^2).
double overlap_fidelity(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b);

struct ProcessMap {
    Ptm ptm;       // after the constrained refit
    Ptm ptm_lsq;   // plain least-squares solution
    Matrix8cd choi;  // unit-trace normalized, PSD
    int iterations = 0;
    double final_residual = 0;
    std::vector<double> residual_history;
};

/// Bloch vector of a cardinal input label ("+X", "-Z", ...).
Eigen::Vector3d bloch_of_label(const std::string &label);

/// Least-squares PTM from six cardinal-input datasets, then a constrained
/// refit alternating between the data-consistency affine set (including
/// trace preservation) and the PSD cone, stopping at relative change below
/// 1e-8 or 1e4 iterations. Throws on a rank-deficient input set.
ProcessMap reconstruct_process(const std::map<std::string, ExpectationTable> &inputs);

/// Expected output expectations of a PTM for an input Bloch vector.
ExpectationTable ptm_apply(const Ptm &ptm, const Eigen::Vector3d &bloch);

/// The ideal split channel: the Hadamard-transformed fanout isometry
/// a|+> + b|-> -> a|++> + b|-->.
Eigen::Matrix<std::complex<double>, 4, 2> ideal_fanout_isometry();
Ptm ideal_fanout_ptm();
Matrix8cd ideal_fanout_choi();  // unit-trace normalized

/// Overlap of unit-trace Choi matrices, Tr[C C_ideal].
double process_fidelity(const ProcessMap &map, const Matrix8cd &ideal_choi_normalized);

/// Virtual Z rotation on one logical qubit (1 or 2), applied analytically to
/// the expectation table: X -> X cos(phi) - Y sin(phi),
/// Y -> Y cos(phi) + X sin(phi) on that qubit's index.
ExpectationTable apply_virtual_z(const ExpectationTable &table, double phi, int which_qubit);

struct PhaseEstimate {
    double angle = 0;
    double fidelity_before = 0;
    double fidelity_after = 0;
    bool flat_objective = false;
};

/// Angle maximizing the objective under a virtual Z on logical qubit 1,
/// located by a coarse scan plus golden-section refinement to 1e-3 rad.
/// The default objective is the Bell fidelity.
PhaseEstimate estimate_phase_rotation(const ExpectationTable &table,
                                      const std::function<double(const ExpectationTable &)> &objective = {});

struct DecayFit {
    double eps = 0;        // per-cycle error probability
    double e0 = 0;         // extrapolated cycle-zero error
    double eps_err = 0;
    double e0_err = 0;
    Eigen::Matrix2d covariance;
    bool identifiable = true;
};

/// Least-squares fit of E(m) = 1/2 + (E0 - 1/2)(1 - 2 eps)^m.
/// Saturated data (all E at 1/2) is reported unidentifiable with infinite
/// uncertainty.
DecayFit fit_exponential_decay(const std::vector<double> &cycles,
                               const std::vector<double> &errors);

/// Bootstrap standard error over shots: binomial resampling of every basis
/// cell (200 resamples by default).
double bootstrap_se(const LogicalDataset &data,
                    const std::function<double(const LogicalDataset &)> &statistic,
                    int resamples = 200, uint64_t seed = 0x626f6f74ULL);

}  // namespace splitsim

#endif
