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

#include "ringcluster/gaussian.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <unsupported/Eigen/MatrixFunctions>

#include "ringcluster/errors.hpp"

namespace ringcluster {

namespace {

void symmetrize(RealMatrix &m) {
    m = 0.5 * (m + m.transpose()).eval();
}

double max_abs(const auto &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Columns express (a_1..a_n, a_1^dag..a_n^dag) in terms of (q_1, p_1, ...).
ComplexMatrix ladder_from_quadratures(std::size_t n) {
    const double s = 1.0 / std::sqrt(2.0);
    const Complex i{0.0, 1.0};
    ComplexMatrix L = ComplexMatrix::Zero(2 * n, 2 * n);
    for (std::size_t k = 0; k < n; ++k) {
        L(k, 2 * k) = s;
        L(k, 2 * k + 1) = i * s;
        L(n + k, 2 * k) = s;
        L(n + k, 2 * k + 1) = -i * s;
    }
    return L;
}

}  // namespace

RealMatrix symplectic_form(std::size_t n_modes) {
    RealMatrix omega = RealMatrix::Zero(2 * n_modes, 2 * n_modes);
    for (std::size_t k = 0; k < n_modes; ++k) {
        omega(2 * k, 2 * k + 1) = 1.0;
        omega(2 * k + 1, 2 * k) = -1.0;
    }
    return omega;
}

GaussianState::GaussianState(std::vector<std::string> labels, RealVector mean, RealMatrix cov)
    : labels_(std::move(labels)), mean_(std::move(mean)), cov_(std::move(cov)) {
    const auto dim = static_cast<Eigen::Index>(2 * labels_.size());
    if (mean_.size() != dim || cov_.rows() != dim || cov_.cols() != dim) {
        std::ostringstream msg;
        msg << "GaussianState: " << labels_.size() << " modes need mean of length " << dim << " and a " << dim
            << "x" << dim << " covariance";
        throw InvalidParameter(msg.str());
    }
    const double asym = max_abs(cov_ - cov_.transpose());
    if (asym > 1e-8 * std::max(1.0, max_abs(cov_))) {
        std::ostringstream msg;
        msg << "GaussianState: covariance is not symmetric (deviation " << asym << ")";
        throw InvalidParameter(msg.str());
    }
    symmetrize(cov_);
}

GaussianState GaussianState::vacuum(std::vector<std::string> labels) {
    const auto dim = static_cast<Eigen::Index>(2 * labels.size());
    return GaussianState(std::move(labels), RealVector::Zero(dim), 0.5 * RealMatrix::Identity(dim, dim));
}

std::optional<std::size_t> GaussianState::find_mode(std::string_view label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t GaussianState::mode_index(std::string_view label) const {
    if (auto idx = find_mode(label)) {
        return *idx;
    }
    throw InvalidParameter("GaussianState: no mode labeled '" + std::string(label) + "'");
}

GaussianState GaussianState::reduced(std::span<const std::size_t> modes) const {
    const auto m = static_cast<Eigen::Index>(modes.size());
    std::vector<std::string> labels;
    RealVector mean(2 * m);
    RealMatrix cov(2 * m, 2 * m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto src_i = static_cast<Eigen::Index>(modes[i]);
        if (modes[i] >= n_modes()) {
            throw InvalidParameter("GaussianState::reduced: mode index out of range");
        }
        labels.push_back(labels_[modes[i]]);
        mean.segment<2>(2 * i) = mean_.segment<2>(2 * src_i);
        for (Eigen::Index j = 0; j < m; ++j) {
            const auto src_j = static_cast<Eigen::Index>(modes[j]);
            cov.block<2, 2>(2 * i, 2 * j) = cov_.block<2, 2>(2 * src_i, 2 * src_j);
        }
    }
    return GaussianState(std::move(labels), std::move(mean), std::move(cov));
}

QuadraticHamiltonian::QuadraticHamiltonian(ComplexMatrix F, ComplexMatrix G) : F_(std::move(F)), G_(std::move(G)) {
    if (F_.rows() != F_.cols() || G_.rows() != G_.cols() || F_.rows() != G_.rows()) {
        throw InvalidParameter("QuadraticHamiltonian: F and G must be square and of equal size");
    }
    const double herm = max_abs(F_ - F_.adjoint());
    const double sym = max_abs(G_ - G_.transpose());
    if (herm > kSymmetryTolerance * std::max(1.0, max_abs(F_))) {
        std::ostringstream msg;
        msg << "QuadraticHamiltonian: F is not Hermitian (deviation " << herm << ")";
        throw InvalidParameter(msg.str());
    }
    if (sym > kSymmetryTolerance * std::max(1.0, max_abs(G_))) {
        std::ostringstream msg;
        msg << "QuadraticHamiltonian: G is not symmetric (deviation " << sym << ")";
        throw InvalidParameter(msg.str());
    }
}

QuadraticHamiltonian QuadraticHamiltonian::zero(std::size_t n_modes) {
    const auto n = static_cast<Eigen::Index>(n_modes);
    return QuadraticHamiltonian(ComplexMatrix::Zero(n, n), ComplexMatrix::Zero(n, n));
}

RealMatrix QuadraticHamiltonian::real_form() const {
    const auto n = F_.rows();
    ComplexMatrix M(2 * n, 2 * n);
    M << F_, G_, G_.conjugate(), F_.conjugate();
    const ComplexMatrix L = ladder_from_quadratures(static_cast<std::size_t>(n));
    RealMatrix h = (L.adjoint() * M * L).real();
    symmetrize(h);
    return h;
}

DriftDiffusion drift_diffusion(const QuadraticHamiltonian &h, std::span<const double> damping) {
    const std::size_t n = h.n_modes();
    if (damping.size() != n) {
        throw InvalidParameter("drift_diffusion: damping vector length must equal the number of modes");
    }
    RealVector half_rate(2 * n);
    for (std::size_t k = 0; k < n; ++k) {
        if (!(damping[k] >= 0.0) || !std::isfinite(damping[k])) {
            std::ostringstream msg;
            msg << "drift_diffusion: damping rate of mode " << k << " must be finite and non-negative, got "
                << damping[k];
            throw InvalidParameter(msg.str());
        }
        half_rate(2 * k) = half_rate(2 * k + 1) = 0.5 * damping[k];
    }
    DriftDiffusion dd;
    dd.drift = symplectic_form(n) * h.real_form();
    dd.drift.diagonal() -= half_rate;
    dd.diffusion = half_rate.asDiagonal();
    return dd;
}

GaussianState evolve(const GaussianState &state, const DriftDiffusion &dd, double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw InvalidParameter("evolve: duration must be finite and non-negative");
    }
    const Eigen::Index dim = dd.drift.rows();
    if (dd.drift.cols() != dim || dd.diffusion.rows() != dim || dd.diffusion.cols() != dim ||
        state.mean().size() != dim) {
        throw InvalidParameter("evolve: state and generator dimensions disagree");
    }
    if (t == 0.0) {
        return state;
    }

    // Van Loan block exponential on a short step, then doubling:
    //   F(2h) = F(h)^2,  Q(2h) = Q(h) + F(h) Q(h) F(h)^T.
    const double norm = dd.drift.cwiseAbs().colwise().sum().maxCoeff() +
                        dd.diffusion.cwiseAbs().colwise().sum().maxCoeff();
    int doublings = 0;
    double h = t;
    while (h * norm > 0.5 && doublings < 60) {
        h *= 0.5;
        ++doublings;
    }
    RealMatrix block = RealMatrix::Zero(2 * dim, 2 * dim);
    block.topLeftCorner(dim, dim) = dd.drift * h;
    block.topRightCorner(dim, dim) = dd.diffusion * h;
    block.bottomRightCorner(dim, dim) = -dd.drift.transpose() * h;
    const RealMatrix e = block.exp();
    RealMatrix F = e.topLeftCorner(dim, dim);
    RealMatrix Q = e.topRightCorner(dim, dim) * F.transpose();
    symmetrize(Q);
    for (int k = 0; k < doublings; ++k) {
        Q += F * Q * F.transpose();
        symmetrize(Q);
        F = F * F;
    }

    RealVector mean = F * state.mean();
    RealMatrix cov = F * state.cov() * F.transpose() + Q;
    symmetrize(cov);
    return GaussianState(state.labels(), std::move(mean), std::move(cov));
}

Complex slowest_eigenvalue(const RealMatrix &drift) {
    Eigen::EigenSolver<RealMatrix> solver(drift, false);
    const auto &ev = solver.eigenvalues();
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < ev.size(); ++k) {
        if (ev(k).real() > ev(best).real()) {
            best = k;
        }
    }
    return ev(best);
}

void require_hurwitz(const RealMatrix &drift) {
    const Complex worst = slowest_eigenvalue(drift);
    if (!(worst.real() < kHurwitzThreshold)) {
        std::ostringstream msg;
        msg << "drift matrix is not Hurwitz: eigenvalue " << worst.real() << (worst.imag() < 0 ? " - " : " + ")
            << std::abs(worst.imag()) << "i has non-negative real part";
        throw NoSteadyState(msg.str(), worst.real(), worst.imag());
    }
}

RealMatrix steady_state(const DriftDiffusion &dd) {
    const RealMatrix &A = dd.drift;
    const Eigen::Index dim = A.rows();
    if (A.cols() != dim || dd.diffusion.rows() != dim || dd.diffusion.cols() != dim) {
        throw InvalidParameter("steady_state: drift and diffusion dimensions disagree");
    }
    require_hurwitz(A);

    // (I kron A + A kron I) vec(S) = -vec(D), column-major vec.
    const RealMatrix I = RealMatrix::Identity(dim, dim);
    RealMatrix K = RealMatrix::Zero(dim * dim, dim * dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            K.block(i * dim, j * dim, dim, dim) += I(i, j) * A + A(i, j) * I;
        }
    }
    const Eigen::PartialPivLU<RealMatrix> lu(K);
    const RealVector rhs = -Eigen::Map<const RealVector>(dd.diffusion.data(), dim * dim);
    RealVector x = lu.solve(rhs);
    x += lu.solve(rhs - K * x);  // one step of iterative refinement

    RealMatrix S = Eigen::Map<RealMatrix>(x.data(), dim, dim);
    symmetrize(S);
    const double residual = (A * S + S * A.transpose() + dd.diffusion).norm();
    const double scale = A.norm() * S.norm() + dd.diffusion.norm();
    if (residual > 1e-10 * std::max(scale, 1e-300)) {
        std::ostringstream msg;
        msg << "steady_state: Lyapunov residual " << residual << " exceeds tolerance (scale " << scale << ")";
        throw PhysicsError(msg.str());
    }
    return S;
}

double unitarity_deviation(const ComplexMatrix &U) {
    if (U.rows() != U.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return max_abs(U * U.adjoint() - ComplexMatrix::Identity(U.rows(), U.cols()));
}

RealMatrix quadrature_map(const ComplexMatrix &U) {
    const Eigen::Index n = U.rows();
    RealMatrix R(2 * n, 2 * n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k < n; ++k) {
            const double re = U(j, k).real();
            const double im = U(j, k).imag();
            R(2 * j, 2 * k) = re;
            R(2 * j, 2 * k + 1) = -im;
            R(2 * j + 1, 2 * k) = im;
            R(2 * j + 1, 2 * k + 1) = re;
        }
    }
    return R;
}

GaussianState apply_mode_transform(const GaussianState &state, const ComplexMatrix &U) {
    std::vector<std::size_t> all(state.n_modes());
    for (std::size_t k = 0; k < all.size(); ++k) {
        all[k] = k;
    }
    return apply_mode_transform(state, U, all);
}

GaussianState apply_mode_transform(const GaussianState &state,
                                   const ComplexMatrix &U,
                                   std::span<const std::size_t> modes) {
    if (U.rows() != static_cast<Eigen::Index>(modes.size()) || U.cols() != U.rows()) {
        throw InvalidParameter("apply_mode_transform: transform size does not match the selected modes");
    }
    const double dev = unitarity_deviation(U);
    if (dev > kUnitarityTolerance) {
        std::ostringstream msg;
        msg << "apply_mode_transform: transform is not unitary (|U U^dag - I|_max = " << dev << ")";
        throw InvalidTransform(msg.str(), dev);
    }
    const RealMatrix local = quadrature_map(U);
    const auto dim = static_cast<Eigen::Index>(2 * state.n_modes());
    RealMatrix R = RealMatrix::Identity(dim, dim);
    for (std::size_t j = 0; j < modes.size(); ++j) {
        if (modes[j] >= state.n_modes()) {
            throw InvalidParameter("apply_mode_transform: mode index out of range");
        }
        R.block<2, 2>(2 * modes[j], 2 * modes[j]).setZero();
    }
    for (std::size_t j = 0; j < modes.size(); ++j) {
        for (std::size_t k = 0; k < modes.size(); ++k) {
            R.block<2, 2>(2 * modes[j], 2 * modes[k]) = local.block<2, 2>(2 * j, 2 * k);
        }
    }
    RealVector mean = R * state.mean();
    RealMatrix cov = R * state.cov() * R.transpose();
    symmetrize(cov);
    return GaussianState(state.labels(), std::move(mean), std::move(cov));
}

std::vector<double> symplectic_eigenvalues(const RealMatrix &cov) {
    const Eigen::Index dim = cov.rows();
    if (dim % 2 != 0 || cov.cols() != dim) {
        throw InvalidParameter("symplectic_eigenvalues: covariance must be square with even dimension");
    }
    // With cov = V diag(w) V^T, M = cov^{1/2} Omega cov^{1/2} is antisymmetric and
    // M^T M has eigenvalues nu_k^2, each twice.
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(cov);
    const RealVector w = es.eigenvalues();
    if (w.minCoeff() <= 0.0) {
        std::ostringstream msg;
        msg << "symplectic_eigenvalues: covariance is not positive definite (eigenvalue " << w.minCoeff() << ")";
        throw Unphysical(msg.str());
    }
    const RealMatrix root = es.eigenvectors() * w.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
    const RealMatrix M = root * symplectic_form(static_cast<std::size_t>(dim / 2)) * root;
    Eigen::SelfAdjointEigenSolver<RealMatrix> ms(M.transpose() * M, Eigen::EigenvaluesOnly);
    std::vector<double> nu;
    for (Eigen::Index k = 0; k < dim; k += 2) {
        // Pairs are degenerate; average the pair to cancel splitting from round-off.
        nu.push_back(std::sqrt(std::max(0.0, 0.5 * (ms.eigenvalues()(k) + ms.eigenvalues()(k + 1)))));
    }
    std::sort(nu.begin(), nu.end());
    if (!nu.empty() && nu.front() < 0.5 - kUncertaintyTolerance) {
        std::ostringstream msg;
        msg << "symplectic_eigenvalues: uncertainty relation violated (nu_min = " << nu.front() << " < 1/2)";
        throw Unphysical(msg.str());
    }
    return nu;
}

double purity(const RealMatrix &cov) {
    Eigen::LLT<RealMatrix> llt(2.0 * cov);
    if (llt.info() != Eigen::Success) {
        throw Unphysical("purity: covariance is not positive definite");
    }
    double log_det = 0.0;
    for (Eigen::Index k = 0; k < cov.rows(); ++k) {
        log_det += 2.0 * std::log(llt.matrixL()(k, k));
    }
    return std::exp(-0.5 * log_det);
}

}  // namespace ringcluster
