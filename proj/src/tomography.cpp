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

#include "splitsim/tomography.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "splitsim/rng.hpp"

namespace splitsim {

namespace {

constexpr double kPi = 3.14159265358979323846;
const char kBasisChars[4] = {'I', 'X', 'Y', 'Z'};

double binomial_se(uint64_t minus, uint64_t n) {
    if (n == 0) {
        return 0;
    }
    double p = static_cast<double>(minus) / static_cast<double>(n);
    return 2.0 * std::sqrt(std::max(p * (1 - p), 0.25 / static_cast<double>(n)) /
                           static_cast<double>(n));
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// Partial trace over the first (input, 2-dim) factor of an 8x8 matrix.
Matrix4cd trace_out_input(const Matrix8cd &c) {
    Matrix4cd out = Matrix4cd::Zero();
    for (int i = 0; i < 2; i++) {
        out += c.block<4, 4>(4 * i, 4 * i);
    }
    return out;
}

/// E(rho) = Tr_in[C_phys (rho^T (x) I4)].
Matrix4cd channel_apply(const Matrix8cd &choi_phys, const Eigen::Matrix2cd &rho) {
    Matrix4cd out = Matrix4cd::Zero();
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            // (rho^T)(j,i) = rho(i,j)
            out += rho(i, j) * choi_phys.block<4, 4>(4 * i, 4 * j);
        }
    }
    return out;
}

}  // namespace

double BasisCell::mean1() const {
    return n ? 1.0 - 2.0 * static_cast<double>(minus1) / static_cast<double>(n) : 0.0;
}
double BasisCell::mean2() const {
    return n ? 1.0 - 2.0 * static_cast<double>(minus2) / static_cast<double>(n) : 0.0;
}
double BasisCell::mean12() const {
    return n ? 1.0 - 2.0 * static_cast<double>(minus12) / static_cast<double>(n) : 0.0;
}

const BasisCell &LogicalDataset::cell(char b1, char b2) const {
    auto it = cells.find({b1, b2});
    if (it == cells.end()) {
        throw std::invalid_argument(std::string("missing basis pair ") + b1 + b2);
    }
    return it->second;
}

bool LogicalDataset::complete() const {
    for (char a : {'X', 'Y', 'Z'}) {
        for (char b : {'X', 'Y', 'Z'}) {
            if (!cells.count({a, b})) {
                return false;
            }
        }
    }
    return true;
}

ExpectationTable expectations_from(const LogicalDataset &data) {
    if (!data.complete()) {
        throw std::invalid_argument("state tomography requires all nine basis pairs");
    }
    ExpectationTable t;
    t.v[0][0] = 1.0;
    t.se[0][0] = 0.0;
    for (int a = 1; a < 4; a++) {
        for (int b = 1; b < 4; b++) {
            const auto &cell = data.cell(kBasisChars[a], kBasisChars[b]);
            t.v[a][b] = cell.mean12();
            t.se[a][b] = binomial_se(cell.minus12, cell.n);
        }
    }
    // Identity components: pool the marginal over every compatible basis.
    for (int a = 1; a < 4; a++) {
        uint64_t minus = 0, n = 0;
        for (int b = 1; b < 4; b++) {
            const auto &cell = data.cell(kBasisChars[a], kBasisChars[b]);
            minus += cell.minus1;
            n += cell.n;
        }
        t.v[a][0] = n ? 1.0 - 2.0 * static_cast<double>(minus) / static_cast<double>(n) : 0.0;
        t.se[a][0] = binomial_se(minus, n);
    }
    for (int b = 1; b < 4; b++) {
        uint64_t minus = 0, n = 0;
        for (int a = 1; a < 4; a++) {
            const auto &cell = data.cell(kBasisChars[a], kBasisChars[b]);
            minus += cell.minus2;
            n += cell.n;
        }
        t.v[0][b] = n ? 1.0 - 2.0 * static_cast<double>(minus) / static_cast<double>(n) : 0.0;
        t.se[0][b] = binomial_se(minus, n);
    }
    return t;
}

Eigen::Matrix2cd pauli_1q(int a) {
    const std::complex<double> i{0, 1};
    Eigen::Matrix2cd m;
    switch (a) {
        case 0:
            m << 1, 0, 0, 1;
            break;
        case 1:
            m << 0, 1, 1, 0;
            break;
        case 2:
            m << 0, -i, i, 0;
            break;
        default:
            m << 1, 0, 0, -1;
            break;
    }
    return m;
}

Matrix4cd pauli_2q(int a, int b) {
    return kron(pauli_1q(a), pauli_1q(b));
}

Matrix4cd state_from_expectations(const ExpectationTable &table) {
    Matrix4cd rho = Matrix4cd::Zero();
    for (int a = 0; a < 4; a++) {
        for (int b = 0; b < 4; b++) {
            rho += table.v[a][b] * pauli_2q(a, b);
        }
    }
    return rho / 4.0;
}

Matrix4cd reconstruct_state(const LogicalDataset &data) {
    Matrix4cd raw = state_from_expectations(expectations_from(data));
    return project_physical(raw);
}

Eigen::MatrixXcd project_physical(const Eigen::MatrixXcd &rho_raw) {
    Eigen::MatrixXcd herm = (rho_raw + rho_raw.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(herm);
    Eigen::VectorXd lam = eig.eigenvalues();
    double trace = lam.sum();
    if (trace <= 0) {
        throw std::invalid_argument("project_physical: non-positive trace");
    }
    lam /= trace;
    // Truncate negative eigenvalues, redistributing the deficit uniformly
    // over the remaining positive ones until none go negative.
    for (int round = 0; round < lam.size() + 1; round++) {
        double deficit = 0;
        int positive = 0;
        for (int k = 0; k < lam.size(); k++) {
            if (lam[k] < 0) {
                deficit += lam[k];
                lam[k] = 0;
            } else if (lam[k] > 0) {
                positive++;
            }
        }
        if (deficit == 0 || positive == 0) {
            break;
        }
        double share = deficit / positive;
        for (int k = 0; k < lam.size(); k++) {
            if (lam[k] > 0) {
                lam[k] += share;
            }
        }
    }
    for (int k = 0; k < lam.size(); k++) {
        lam[k] = std::max(lam[k], 0.0);
    }
    lam /= lam.sum();
    return eig.eigenvectors() * lam.asDiagonal() * eig.eigenvectors().adjoint();
}

double state_fidelity(const Matrix4cd &rho, const Eigen::Vector4cd &target_pure) {
    Eigen::Vector4cd psi = target_pure.normalized();
    return std::real((psi.adjoint() * rho * psi)(0, 0));
}

double bell_fidelity(const ExpectationTable &t) {
    return 0.25 * (1.0 + t.v[1][1] - t.v[2][2] + t.v[3][3]);
}

double bell_fidelity(const LogicalDataset &data) {
    return bell_fidelity(expectations_from(data));
}

double single_logical_fidelity(double x, double y, double z, double theta, double phi) {
    double sx = std::sin(theta) * std::cos(phi);
    double sy = std::sin(theta) * std::sin(phi);
    double sz = std::cos(theta);
    double f = 0.5 * (1.0 + x * sx + y * sy + z * sz);
    return std::min(f, 1.0);  // clipped to keep the density matrix positive
}

double overlap_fidelity(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    double num = std::real((a * b).trace());
    double pa = std::real((a * a).trace());
    double pb = std::real((b * b).trace());
    return num / std::max(pa, pb);
}

Eigen::Vector3d bloch_of_label(const std::string &label) {
    if (label.size() != 2 || (label[0] != '+' && label[0] != '-')) {
        throw std::invalid_argument("bad cardinal label " + label);
    }
    double s = label[0] == '+' ? 1.0 : -1.0;
    switch (label[1]) {
        case 'X':
            return {s, 0, 0};
        case 'Y':
            return {0, s, 0};
        case 'Z':
            return {0, 0, s};
    }
    throw std::invalid_argument("bad cardinal label " + label);
}

namespace {

Matrix8cd choi_from_ptm(const Ptm &ptm) {
    // C_phys = 1/2 sum_A sigma_A^T (x) B_A with B_A = sum_PQ R[PQ][A] PQ.
    Matrix8cd c = Matrix8cd::Zero();
    for (int a = 0; a < 4; a++) {
        Matrix4cd b_a = Matrix4cd::Zero();
        for (int p = 0; p < 4; p++) {
            for (int q = 0; q < 4; q++) {
                b_a += ptm(4 * p + q, a) * pauli_2q(p, q);
            }
        }
        Eigen::Matrix2cd sa_t = pauli_1q(a).transpose();
        c += 0.5 * kron(sa_t, b_a);
    }
    return c / 2.0;  // unit trace
}

Ptm ptm_from_choi(const Matrix8cd &choi_normalized) {
    Matrix8cd choi_phys = 2.0 * choi_normalized;
    Ptm ptm;
    for (int a = 0; a < 4; a++) {
        Matrix4cd image = channel_apply(choi_phys, pauli_1q(a));
        for (int p = 0; p < 4; p++) {
            for (int q = 0; q < 4; q++) {
                ptm(4 * p + q, a) = 0.25 * std::real((pauli_2q(p, q) * image).trace());
            }
        }
    }
    return ptm;
}

/// Orthonormal Hermitian basis element j (0..63) of 8x8 matrices.
Matrix8cd herm_basis(int j) {
    int a = j / 16, b = (j / 4) % 4, c = j % 4;
    Eigen::MatrixXcd m = kron(pauli_1q(a), kron(pauli_1q(b), pauli_1q(c)));
    return m / (2.0 * std::sqrt(2.0));
}

Eigen::VectorXd vec_herm(const Matrix8cd &c) {
    Eigen::VectorXd x(64);
    for (int j = 0; j < 64; j++) {
        x[j] = std::real((herm_basis(j) * c).trace());
    }
    return x;
}

Matrix8cd unvec_herm(const Eigen::VectorXd &x) {
    Matrix8cd c = Matrix8cd::Zero();
    for (int j = 0; j < 64; j++) {
        c += x[j] * herm_basis(j);
    }
    return c;
}

Matrix8cd clip_psd(const Matrix8cd &c) {
    Eigen::SelfAdjointEigenSolver<Matrix8cd> eig((c + c.adjoint()) / 2.0);
    Eigen::VectorXd lam = eig.eigenvalues().cwiseMax(0.0);
    return eig.eigenvectors() * lam.asDiagonal() * eig.eigenvectors().adjoint();
}

}  // namespace

ExpectationTable ptm_apply(const Ptm &ptm, const Eigen::Vector3d &bloch) {
    ExpectationTable t;
    for (int p = 0; p < 4; p++) {
        for (int q = 0; q < 4; q++) {
            double v = 2.0 * ptm(4 * p + q, 0);
            for (int a = 0; a < 3; a++) {
                v += 2.0 * bloch[a] * ptm(4 * p + q, a + 1);
            }
            t.v[p][q] = v;
        }
    }
    return t;
}

ProcessMap reconstruct_process(const std::map<std::string, ExpectationTable> &inputs) {
    if (inputs.size() < 4) {
        throw std::invalid_argument("process tomography needs at least four input states");
    }
    size_t n_in = inputs.size();
    Eigen::MatrixXd design(n_in, 4);
    std::vector<const ExpectationTable *> tables;
    size_t row = 0;
    for (const auto &[label, table] : inputs) {
        Eigen::Vector3d n = bloch_of_label(label);
        design(row, 0) = 2.0;
        design(row, 1) = 2.0 * n[0];
        design(row, 2) = 2.0 * n[1];
        design(row, 3) = 2.0 * n[2];
        tables.push_back(&table);
        row++;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < 4) {
        throw std::invalid_argument("rank-deficient input state set");
    }

    ProcessMap out;
    for (int p = 0; p < 4; p++) {
        for (int q = 0; q < 4; q++) {
            Eigen::VectorXd rhs(n_in);
            for (size_t i = 0; i < n_in; i++) {
                rhs[i] = tables[i]->v[p][q];
            }
            out.ptm_lsq.row(4 * p + q) = qr.solve(rhs).transpose();
        }
    }

    // Constrained refit: alternate between the PSD cone and the affine set
    // of Chois reproducing the measured expectations (plus trace
    // preservation and unit trace).
    size_t n_data = n_in * 15;
    Eigen::MatrixXd a_mat(n_data + 4, 64);
    Eigen::VectorXd y(n_data + 4);
    size_t r = 0;
    size_t i = 0;
    for (const auto &[label, table] : inputs) {
        Eigen::Vector3d n = bloch_of_label(label);
        Eigen::Matrix2cd rho = 0.5 * (pauli_1q(0) + n[0] * pauli_1q(1) + n[1] * pauli_1q(2) +
                                      n[2] * pauli_1q(3));
        Eigen::Matrix2cd rho_t = rho.transpose();
        for (int p = 0; p < 4; p++) {
            for (int q = 0; q < 4; q++) {
                if (p == 0 && q == 0) {
                    continue;
                }
                Matrix8cd h = 2.0 * kron(rho_t, pauli_2q(p, q));
                for (int j = 0; j < 64; j++) {
                    a_mat(r, j) = std::real((h * herm_basis(j)).trace());
                }
                y[r] = table.v[p][q];
                r++;
            }
        }
        i++;
    }
    // Trace preservation: Tr_out C proportional to the identity.
    for (int a = 1; a < 4; a++) {
        Matrix8cd h = kron(pauli_1q(a).transpose(), Matrix4cd::Identity());
        for (int j = 0; j < 64; j++) {
            a_mat(r, j) = std::real((h * herm_basis(j)).trace());
        }
        y[r] = 0;
        r++;
    }
    {
        Matrix8cd h = Matrix8cd::Identity();
        for (int j = 0; j < 64; j++) {
            a_mat(r, j) = std::real((h * herm_basis(j)).trace());
        }
        y[r] = 1.0;
        r++;
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a_mat);

    Eigen::VectorXd x = vec_herm(choi_from_ptm(out.ptm_lsq));
    x = x - cod.solve(a_mat * x - y);  // onto the (feasible part of the) affine set
    Matrix8cd psd = clip_psd(unvec_herm(x));
    const int max_iters = 10000;
    int iters = 0;
    for (; iters < max_iters; iters++) {
        Eigen::VectorXd q_vec = vec_herm(psd);
        Eigen::VectorXd x_next = q_vec - cod.solve(a_mat * q_vec - y);
        double residual = (x_next - q_vec).norm();
        out.residual_history.push_back(residual);
        double rel = (x_next - x).norm() / std::max(1.0, x_next.norm());
        x = x_next;
        psd = clip_psd(unvec_herm(x));
        if (rel < 1e-8) {
            break;
        }
    }
    out.iterations = iters;
    out.final_residual = out.residual_history.empty() ? 0 : out.residual_history.back();
    double tr = std::real(psd.trace());
    if (tr > 0) {
        psd /= tr;
    }
    out.choi = psd;
    out.ptm = ptm_from_choi(psd);
    return out;
}

Eigen::Matrix<std::complex<double>, 4, 2> ideal_fanout_isometry() {
    Eigen::Vector4cd pp, mm;
    pp << 0.5, 0.5, 0.5, 0.5;    // |++>
    mm << 0.5, -0.5, -0.5, 0.5;  // |-->
    Eigen::Vector2cd plus, minus;
    plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    minus << 1 / std::sqrt(2.0), -1 / std::sqrt(2.0);
    return pp * plus.adjoint() + mm * minus.adjoint();
}

Ptm ideal_fanout_ptm() {
    auto v = ideal_fanout_isometry();
    Ptm ptm;
    for (int a = 0; a < 4; a++) {
        Matrix4cd image = v * pauli_1q(a) * v.adjoint();
        for (int p = 0; p < 4; p++) {
            for (int q = 0; q < 4; q++) {
                ptm(4 * p + q, a) = 0.25 * std::real((pauli_2q(p, q) * image).trace());
            }
        }
    }
    return ptm;
}

Matrix8cd ideal_fanout_choi() {
    auto v = ideal_fanout_isometry();
    Eigen::Matrix<std::complex<double>, 8, 1> vec;
    for (int i = 0; i < 2; i++) {
        vec.segment<4>(4 * i) = v.col(i);
    }
    Matrix8cd c = vec * vec.adjoint();
    return c / std::real(c.trace());
}

double process_fidelity(const ProcessMap &map, const Matrix8cd &ideal_choi_normalized) {
    return std::real((map.choi * ideal_choi_normalized).trace());
}

ExpectationTable apply_virtual_z(const ExpectationTable &table, double phi, int which_qubit) {
    double c = std::cos(phi), s = std::sin(phi);
    ExpectationTable out = table;
    if (which_qubit == 1) {
        for (int b = 0; b < 4; b++) {
            out.v[1][b] = c * table.v[1][b] - s * table.v[2][b];
            out.v[2][b] = c * table.v[2][b] + s * table.v[1][b];
            out.se[1][b] = std::hypot(c * table.se[1][b], s * table.se[2][b]);
            out.se[2][b] = std::hypot(c * table.se[2][b], s * table.se[1][b]);
        }
    } else if (which_qubit == 2) {
        for (int a = 0; a < 4; a++) {
            out.v[a][1] = c * table.v[a][1] - s * table.v[a][2];
            out.v[a][2] = c * table.v[a][2] + s * table.v[a][1];
            out.se[a][1] = std::hypot(c * table.se[a][1], s * table.se[a][2]);
            out.se[a][2] = std::hypot(c * table.se[a][2], s * table.se[a][1]);
        }
    } else {
        throw std::invalid_argument("which_qubit must be 1 or 2");
    }
    return out;
}

PhaseEstimate estimate_phase_rotation(const ExpectationTable &table,
                                      const std::function<double(const ExpectationTable &)> &objective) {
    auto f = objective ? objective
                       : std::function<double(const ExpectationTable &)>(
                             [](const ExpectationTable &t) { return bell_fidelity(t); });
    auto value = [&](double phi) { return f(apply_virtual_z(table, phi, 1)); };

    PhaseEstimate est;
    est.fidelity_before = value(0.0);

    // Coarse scan to bracket the maximum (the objective is sinusoidal in
    // phi, so the global maximum has a one-grid-step bracket).
    const int grid = 128;
    double best_phi = 0, best_val = -1e300, min_val = 1e300;
    for (int k = 0; k <= grid; k++) {
        double phi = -kPi + 2 * kPi * k / grid;
        double v = value(phi);
        if (v > best_val) {
            best_val = v;
            best_phi = phi;
        }
        min_val = std::min(min_val, v);
    }
    if (best_val - min_val < 1e-12) {
        est.flat_objective = true;
        est.angle = 0;
        est.fidelity_after = est.fidelity_before;
        return est;
    }
    double lo = best_phi - 2 * kPi / grid;
    double hi = best_phi + 2 * kPi / grid;
    const double gr = (std::sqrt(5.0) - 1) / 2;
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = value(x1), f2 = value(x2);
    while (b - a > 1e-3) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = value(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = value(x1);
        }
    }
    est.angle = (a + b) / 2;
    est.fidelity_after = value(est.angle);
    return est;
}

DecayFit fit_exponential_decay(const std::vector<double> &cycles,
                               const std::vector<double> &errors) {
    if (cycles.size() != errors.size() || cycles.size() < 3) {
        throw std::invalid_argument("decay fit needs at least three points");
    }
    size_t n = cycles.size();
    DecayFit fit;

    bool saturated = true;
    for (double e : errors) {
        if (std::abs(e - 0.5) > 1e-9) {
            saturated = false;
        }
    }
    if (saturated) {
        fit.identifiable = false;
        fit.eps = 0;
        fit.e0 = 0.5;
        fit.eps_err = fit.e0_err = std::numeric_limits<double>::infinity();
        fit.covariance.setConstant(std::numeric_limits<double>::infinity());
        return fit;
    }

    // Log-linear initialization on sub-saturation points.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int used = 0;
    for (size_t k = 0; k < n; k++) {
        double gap = 0.5 - errors[k];
        if (gap <= 1e-12) {
            continue;
        }
        double u = std::log(gap);
        sx += cycles[k];
        sy += u;
        sxx += cycles[k] * cycles[k];
        sxy += cycles[k] * u;
        used++;
    }
    double eps = 0.05, e0 = 0.0;
    if (used >= 2 && sxx * used - sx * sx > 1e-12) {
        double slope = (used * sxy - sx * sy) / (used * sxx - sx * sx);
        double intercept = (sy - slope * sx) / used;
        double decay = std::exp(slope);  // 1 - 2 eps
        eps = std::clamp((1 - decay) / 2, 1e-9, 0.499999);
        e0 = std::clamp(0.5 - std::exp(intercept), -0.5, 0.4999);
    }

    // Gauss-Newton refinement of (eps, e0).
    Eigen::Matrix2d jtj_final = Eigen::Matrix2d::Identity();
    for (int iter = 0; iter < 60; iter++) {
        Eigen::MatrixXd jac(n, 2);
        Eigen::VectorXd res(n);
        double decay = 1 - 2 * eps;
        for (size_t k = 0; k < n; k++) {
            double m = cycles[k];
            double pw = std::pow(decay, m);
            res[k] = 0.5 + (e0 - 0.5) * pw - errors[k];
            jac(k, 0) = (e0 - 0.5) * m * std::pow(decay, m - 1) * (-2.0);
            jac(k, 1) = pw;
        }
        Eigen::Matrix2d jtj = jac.transpose() * jac;
        Eigen::Vector2d jtr = jac.transpose() * res;
        Eigen::Vector2d step = (jtj + 1e-12 * Eigen::Matrix2d::Identity()).ldlt().solve(jtr);
        eps = std::clamp(eps - step[0], 1e-9, 0.499999);
        e0 = std::clamp(e0 - step[1], -0.5, 0.49999999);
        jtj_final = jtj;
        if (step.norm() < 1e-12) {
            break;
        }
    }
    fit.eps = eps;
    fit.e0 = e0;
    double ssr = 0;
    double decay = 1 - 2 * eps;
    for (size_t k = 0; k < n; k++) {
        double r = 0.5 + (e0 - 0.5) * std::pow(decay, cycles[k]) - errors[k];
        ssr += r * r;
    }
    double sigma2 = n > 2 ? ssr / static_cast<double>(n - 2) : ssr;
    Eigen::Matrix2d cov = sigma2 * jtj_final.inverse();
    fit.covariance = cov;
    fit.eps_err = std::sqrt(std::max(cov(0, 0), 0.0));
    fit.e0_err = std::sqrt(std::max(cov(1, 1), 0.0));
    return fit;
}

double bootstrap_se(const LogicalDataset &data,
                    const std::function<double(const LogicalDataset &)> &statistic,
                    int resamples, uint64_t seed) {
    CounterRng rng{seed};
    std::vector<double> values;
    values.reserve(resamples);
    for (int r = 0; r < resamples; r++) {
        std::mt19937_64 gen(rng.word(r, 0));
        LogicalDataset sample = data;
        for (auto &[key, cell] : sample.cells) {
            // Joint counts of the four (code1, code2) outcome categories.
            uint64_t nmm = (cell.minus1 + cell.minus2 >= cell.minus12)
                               ? (cell.minus1 + cell.minus2 - cell.minus12) / 2
                               : 0;
            nmm = std::min({nmm, cell.minus1, cell.minus2});
            uint64_t nmp = cell.minus1 - nmm;
            uint64_t npm = cell.minus2 - nmm;
            uint64_t npp = cell.n - nmm - nmp - npm;
            uint64_t counts[4] = {npp, npm, nmp, nmm};
            uint64_t total = cell.n;
            uint64_t new_counts[4] = {0, 0, 0, 0};
            uint64_t remaining = total;
            double remaining_p = 1.0;
            for (int c = 0; c < 3; c++) {
                double p = remaining_p > 0
                               ? static_cast<double>(counts[c]) / static_cast<double>(total) / remaining_p
                               : 0.0;
                p = std::clamp(p, 0.0, 1.0);
                std::binomial_distribution<uint64_t> bin(remaining, p);
                new_counts[c] = bin(gen);
                remaining -= new_counts[c];
                remaining_p -= static_cast<double>(counts[c]) / static_cast<double>(total);
            }
            new_counts[3] = remaining;
            cell.minus1 = new_counts[2] + new_counts[3];
            cell.minus2 = new_counts[1] + new_counts[3];
            cell.minus12 = new_counts[1] + new_counts[2];
        }
        values.push_back(statistic(sample));
    }
    double mean = 0;
    for (double v : values) {
        mean += v;
    }
    mean /= values.size();
    double var = 0;
    for (double v : values) {
        var += (v - mean) * (v - mean);
    }
    var /= std::max<size_t>(1, values.size() - 1);
    return std::sqrt(var);
}

}  // namespace splitsim
