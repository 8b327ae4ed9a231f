// Copyright 2026 The ringcluster Authors
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

#include "ringcluster/fock_oracle.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>
#include <unsupported/Eigen/MatrixFunctions>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ringcluster/errors.hpp"
#include "ringcluster/model.hpp"

namespace ringcluster {

namespace {

using SparseMatrix = Eigen::SparseMatrix<Complex>;
using Triplet = Eigen::Triplet<Complex>;

// Annihilator of mode `k` on the product basis.
SparseMatrix annihilator(const std::vector<std::size_t> &cutoffs, std::size_t k) {
    std::size_t dim = 1;
    for (std::size_t c : cutoffs) {
        dim *= c + 1;
    }
    std::size_t stride = 1;
    for (std::size_t j = k + 1; j < cutoffs.size(); ++j) {
        stride *= cutoffs[j] + 1;
    }
    const std::size_t levels = cutoffs[k] + 1;
    std::vector<Triplet> entries;
    for (std::size_t i = 0; i < dim; ++i) {
        const std::size_t n = (i / stride) % levels;
        if (n > 0) {
            entries.emplace_back(static_cast<Eigen::Index>(i - stride), static_cast<Eigen::Index>(i),
                                 std::sqrt(static_cast<double>(n)));
        }
    }
    SparseMatrix a(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    a.setFromTriplets(entries.begin(), entries.end());
    return a;
}

double hermiticity_error(const ComplexMatrix &rho) {
    return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double top_level_population(const ComplexMatrix &rho, std::size_t cutoff_a, std::size_t cutoff_d) {
    const std::size_t nd = cutoff_d + 1;
    double top_a = 0.0;
    double top_d = 0.0;
    for (std::size_t j = 0; j < nd; ++j) {
        const auto i = static_cast<Eigen::Index>(cutoff_a * nd + j);
        top_a += rho(i, i).real();
    }
    for (std::size_t j = 0; j <= cutoff_a; ++j) {
        const auto i = static_cast<Eigen::Index>(j * nd + cutoff_d);
        top_d += rho(i, i).real();
    }
    return std::max(top_a, top_d);
}

struct Propagation {
    ComplexMatrix rho;
    std::size_t steps = 0;
    double trace_error = 0.0;
    double hermiticity = 0.0;
    double leakage = 0.0;
};

// Nonzero entries of one row of a sparse operator.
struct Stencil {
    std::vector<Eigen::Index> offsets;  // row start into cols/values
    std::vector<Eigen::Index> cols;
    std::vector<Complex> values;
};

Stencil stencil_of(const SparseMatrix &op) {
    const Eigen::SparseMatrix<Complex, Eigen::RowMajor> rows(op);
    Stencil st;
    st.offsets.push_back(0);
    for (Eigen::Index i = 0; i < rows.outerSize(); ++i) {
        for (Eigen::SparseMatrix<Complex, Eigen::RowMajor>::InnerIterator it(rows, i); it; ++it) {
            st.cols.push_back(it.col());
            st.values.push_back(it.value());
        }
        st.offsets.push_back(static_cast<Eigen::Index>(st.cols.size()));
    }
    return st;
}

Propagation propagate(const FockConfig &c, double dt) {
    const std::vector<std::size_t> cutoffs = {c.cutoff_a, c.cutoff_d};
    const SparseMatrix a = annihilator(cutoffs, 0);
    const SparseMatrix d = annihilator(cutoffs, 1);
    const SparseMatrix ad = SparseMatrix(a.adjoint());
    const SparseMatrix dd = SparseMatrix(d.adjoint());
    const double gamma = cavity_lindblad_rate(c.kappa);
    const SparseMatrix coupling = c.beta * (ad * d) + (c.beta * c.r) * (ad * dd);
    const SparseMatrix h = coupling + SparseMatrix(coupling.adjoint());
    // -i H_eff with H_eff = H - i (gamma/2) a^dag a
    const SparseMatrix gen = Complex(0.0, -1.0) * h - (0.5 * gamma) * (ad * a);
    const Stencil st = stencil_of(gen);

    const Eigen::Index dim = a.rows();
    const auto stride = static_cast<Eigen::Index>(c.cutoff_d + 1);
    const auto top = static_cast<Eigen::Index>(c.cutoff_a) * stride;
    std::vector<double> jump_weight(static_cast<std::size_t>(dim));
    for (Eigen::Index i = 0; i < dim; ++i) {
        jump_weight[static_cast<std::size_t>(i)] = i < top ? std::sqrt(static_cast<double>(i / stride + 1)) : 0.0;
    }

    // d(rho) = G rho + (G rho)^dag + gamma a rho a^dag with G = -i H_eff.
    ComplexMatrix k_buf(dim, dim);
    auto rhs = [&](const ComplexMatrix &rho, ComplexMatrix &out) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            const Complex *col = rho.col(j).data();
            Complex *dst = k_buf.col(j).data();
            for (Eigen::Index i = 0; i < dim; ++i) {
                Complex acc = 0.0;
                for (Eigen::Index e = st.offsets[static_cast<std::size_t>(i)];
                     e < st.offsets[static_cast<std::size_t>(i) + 1]; ++e) {
                    acc += st.values[static_cast<std::size_t>(e)] * col[st.cols[static_cast<std::size_t>(e)]];
                }
                dst[i] = acc;
            }
        }
        for (Eigen::Index j = 0; j < dim; ++j) {
            const double wj = gamma * jump_weight[static_cast<std::size_t>(j)];
            for (Eigen::Index i = 0; i < dim; ++i) {
                Complex v = k_buf(i, j) + std::conj(k_buf(j, i));
                if (wj != 0.0 && i < top) {
                    v += wj * jump_weight[static_cast<std::size_t>(i)] * rho(i + stride, j + stride);
                }
                out(i, j) = v;
            }
        }
    };

    Propagation p;
    p.rho = ComplexMatrix::Zero(dim, dim);
    p.rho(0, 0) = 1.0;
    ComplexMatrix k1(dim, dim), k2(dim, dim), k3(dim, dim), k4(dim, dim), stage(dim, dim);
    const auto steps = static_cast<std::size_t>(std::llround(c.t_final / dt));
    const double h_step = steps > 0 ? c.t_final / static_cast<double>(steps) : 0.0;
    for (std::size_t s = 0; s < steps; ++s) {
        rhs(p.rho, k1);
        stage = p.rho + 0.5 * h_step * k1;
        rhs(stage, k2);
        stage = p.rho + 0.5 * h_step * k2;
        rhs(stage, k3);
        stage = p.rho + h_step * k3;
        rhs(stage, k4);
        p.rho += (h_step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        p.trace_error = std::max(p.trace_error, std::abs(p.rho.trace() - 1.0));
        p.hermiticity = std::max(p.hermiticity, hermiticity_error(p.rho));
        const double leak = top_level_population(p.rho, c.cutoff_a, c.cutoff_d);
        p.leakage = std::max(p.leakage, leak);
        if (leak > c.leakage_guard) {
            std::ostringstream msg;
            msg << "Fock cutoffs (" << c.cutoff_a << ", " << c.cutoff_d << ") too small: top-level population "
                << leak << " exceeds guard " << c.leakage_guard << " at t = " << static_cast<double>(s + 1) * h_step;
            throw CutoffTooSmall(msg.str(), leak);
        }
    }
    p.steps = steps;
    return p;
}

}  // namespace

void FockConfig::validate() const {
    if (cutoff_a < 4 || cutoff_d < 4) {
        throw InvalidParameter("FockConfig: cutoffs must be at least 4");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw InvalidParameter("FockConfig: dt must be positive");
    }
    if (!(leakage_guard > 0.0 && leakage_guard < 1.0)) {
        throw InvalidParameter("FockConfig: leakage guard must lie in (0, 1)");
    }
    if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
        throw InvalidParameter("FockConfig: t_final must be finite and non-negative");
    }
    if (!std::isfinite(beta) || !(kappa >= 0.0) || !std::isfinite(kappa)) {
        throw InvalidParameter("FockConfig: beta must be finite and kappa non-negative");
    }
    if (!(r >= 0.0 && r < 1.0)) {
        throw InvalidParameter("FockConfig: r must lie in [0, 1)");
    }
}

FockResult integrate_two_mode(const FockConfig &config) {
    config.validate();
    const std::vector<std::size_t> cutoffs = {config.cutoff_a, config.cutoff_d};
    Propagation full = propagate(config, config.dt);

    FockResult result;
    result.covariance = covariance_from_density(full.rho, cutoffs);
    result.steps = full.steps;
    result.max_trace_error = full.trace_error;
    result.max_hermiticity_error = full.hermiticity;
    result.max_leakage = full.leakage;
    result.step_halving_error = std::numeric_limits<double>::quiet_NaN();
    if (config.step_halving) {
        const Propagation half = propagate(config, 0.5 * config.dt);
        result.step_halving_error =
            (covariance_from_density(half.rho, cutoffs) - result.covariance).cwiseAbs().maxCoeff();
    }
    result.rho = std::move(full.rho);
    return result;
}

RealMatrix gaussian_two_mode_covariance(const FockConfig &config) {
    config.validate();
    ComplexMatrix F = ComplexMatrix::Zero(2, 2);
    ComplexMatrix G = ComplexMatrix::Zero(2, 2);
    F(0, 1) = F(1, 0) = config.beta;
    G(0, 1) = G(1, 0) = config.beta * config.r;
    const std::vector<double> damping = {cavity_lindblad_rate(config.kappa), 0.0};
    const auto dd = drift_diffusion(QuadraticHamiltonian(F, G), damping);
    return evolve(GaussianState::vacuum({"a", "d"}), dd, config.t_final).cov();
}

RealMatrix covariance_from_density(const ComplexMatrix &rho, const std::vector<std::size_t> &cutoffs) {
    std::size_t dim = 1;
    for (std::size_t c : cutoffs) {
        dim *= c + 1;
    }
    if (cutoffs.empty() || rho.rows() != static_cast<Eigen::Index>(dim) || rho.cols() != rho.rows()) {
        throw InvalidParameter("covariance_from_density: matrix size does not match the cutoffs");
    }
    const double herm = hermiticity_error(rho);
    if (herm > 1e-10) {
        std::ostringstream msg;
        msg << "density matrix is not Hermitian (deviation " << herm << ")";
        throw Unphysical(msg.str());
    }
    const double trace_err = std::abs(rho.trace() - 1.0);
    if (trace_err > 1e-8) {
        std::ostringstream msg;
        msg << "density matrix trace deviates from 1 by " << trace_err;
        throw Unphysical(msg.str());
    }
    const ComplexMatrix sym = 0.5 * (rho + rho.adjoint());
    const double min_eig = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(sym, Eigen::EigenvaluesOnly)
                               .eigenvalues()
                               .minCoeff();
    if (min_eig < -1e-9) {
        std::ostringstream msg;
        msg << "density matrix has negative eigenvalue " << min_eig;
        throw Unphysical(msg.str());
    }

    const std::size_t m = cutoffs.size();
    const auto n = static_cast<Eigen::Index>(m);
    std::vector<SparseMatrix> ops;
    for (std::size_t k = 0; k < m; ++k) {
        ops.push_back(annihilator(cutoffs, k));
    }
    auto expect = [&sym](const SparseMatrix &op) -> Complex { return (op * sym).trace(); };

    ComplexVector mean_a(n);
    ComplexMatrix aa(n, n);   // <a_i a_j>
    ComplexMatrix ada(n, n);  // <a_i^dag a_j>
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto &ai = ops[static_cast<std::size_t>(i)];
        mean_a(i) = expect(ai);
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto &aj = ops[static_cast<std::size_t>(j)];
            aa(i, j) = expect(SparseMatrix(ai * aj));
            ada(i, j) = expect(SparseMatrix(SparseMatrix(ai.adjoint()) * aj));
        }
    }
    // Centered moments. q = (a + a^dag)/sqrt2, p = (a - a^dag)/(i sqrt2).
    const ComplexMatrix caa = aa - mean_a * mean_a.transpose();
    const ComplexMatrix cada = ada - mean_a.conjugate() * mean_a.transpose();
    RealMatrix cov(2 * n, 2 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const Complex x = caa(i, j);
            // Symmetrized <a_i^dag a_j> including the commutator for i == j.
            const Complex y = cada(i, j) + (i == j ? 0.5 : 0.0);
            cov(2 * i, 2 * j) = (x.real() + y.real());
            cov(2 * i + 1, 2 * j + 1) = (y.real() - x.real());
            cov(2 * i, 2 * j + 1) = (x.imag() + y.imag());
            cov(2 * i + 1, 2 * j) = (x.imag() - y.imag());
        }
    }
    return 0.5 * (cov + cov.transpose());
}

ComplexMatrix number_state_density(std::size_t n, std::size_t cutoff) {
    if (n > cutoff) {
        throw InvalidParameter("number_state_density: n exceeds the cutoff");
    }
    ComplexMatrix rho = ComplexMatrix::Zero(static_cast<Eigen::Index>(cutoff + 1), static_cast<Eigen::Index>(cutoff + 1));
    rho(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) = 1.0;
    return rho;
}

ComplexMatrix squeezed_vacuum_density(double xi, std::size_t cutoff) {
    if (cutoff < 4) {
        throw InvalidParameter("squeezed_vacuum_density: cutoff must be at least 4");
    }
    const std::size_t big = 2 * cutoff + 40;
    const ComplexMatrix a = ComplexMatrix(annihilator({big}, 0));
    const ComplexMatrix gen = (0.5 * xi) * (a * a - a.adjoint() * a.adjoint());
    const ComplexMatrix S = gen.exp();
    const auto levels = static_cast<Eigen::Index>(cutoff + 1);
    const ComplexVector psi = S.col(0).head(levels);
    ComplexMatrix rho = psi * psi.adjoint();
    return rho / rho.trace();
}

}  // namespace ringcluster
