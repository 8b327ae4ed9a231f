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

#pragma once

// Gaussian states of bosonic modes and their evolution under quadratic
// Hamiltonians with single-mode damping.
//
// Quadratures are ordered (q1, p1, ..., qn, pn) with a_k = (q_k + i p_k)/sqrt(2),
// so [q, p] = i and the vacuum covariance is I/2.

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ringcluster {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

inline constexpr double kSymmetryTolerance = 1e-12;
inline constexpr double kUncertaintyTolerance = 1e-9;
inline constexpr double kHurwitzThreshold = -1e-12;
inline constexpr double kUnitarityTolerance = 1e-10;

/// Block-diagonal symplectic form with blocks [[0, 1], [-1, 0]].
RealMatrix symplectic_form(std::size_t n_modes);

/// Mean vector and covariance matrix over labeled modes.
///
/// The covariance is symmetrized on construction; inputs whose asymmetry is
/// far beyond round-off are rejected.
class GaussianState {
   public:
    GaussianState(std::vector<std::string> labels, RealVector mean, RealMatrix cov);

    static GaussianState vacuum(std::vector<std::string> labels);

    std::size_t n_modes() const noexcept {
        return labels_.size();
    }
    const std::vector<std::string> &labels() const noexcept {
        return labels_;
    }
    const RealVector &mean() const noexcept {
        return mean_;
    }
    const RealMatrix &cov() const noexcept {
        return cov_;
    }

    std::optional<std::size_t> find_mode(std::string_view label) const;
    std::size_t mode_index(std::string_view label) const;

    /// Marginal state of the listed modes, in the listed order.
    GaussianState reduced(std::span<const std::size_t> modes) const;

   private:
    std::vector<std::string> labels_;
    RealVector mean_;
    RealMatrix cov_;
};

/// H = sum_ij F_ij a_i^dag a_j + 1/2 sum_ij (G_ij a_i^dag a_j^dag + h.c.)
class QuadraticHamiltonian {
   public:
    QuadraticHamiltonian(ComplexMatrix F, ComplexMatrix G);

    static QuadraticHamiltonian zero(std::size_t n_modes);

    std::size_t n_modes() const noexcept {
        return static_cast<std::size_t>(F_.rows());
    }
    const ComplexMatrix &F() const noexcept {
        return F_;
    }
    const ComplexMatrix &G() const noexcept {
        return G_;
    }

    /// Real symmetric H_R with H = 1/2 x^T H_R x up to a constant.
    RealMatrix real_form() const;

   private:
    ComplexMatrix F_;
    ComplexMatrix G_;
};

/// Moment-space generator: d(mean)/dt = A mean, d(cov)/dt = A cov + cov A^T + D.
struct DriftDiffusion {
    RealMatrix drift;
    RealMatrix diffusion;
};

/// `damping[k]` is the Lindblad rate of mode k (dissipator rate * D[a_k]), so
/// <a_k> decays as exp(-damping[k] t / 2) and a lone damped mode relaxes to
/// vacuum.
DriftDiffusion drift_diffusion(const QuadraticHamiltonian &h, std::span<const double> damping);

/// Exact Gaussian propagation over a duration t >= 0.
GaussianState evolve(const GaussianState &state, const DriftDiffusion &dd, double t);

/// Eigenvalue of `drift` with the largest real part.
Complex slowest_eigenvalue(const RealMatrix &drift);

/// Throws NoSteadyState unless every eigenvalue has real part below kHurwitzThreshold.
void require_hurwitz(const RealMatrix &drift);

/// Unique solution of A S + S A^T + D = 0 for Hurwitz A.
RealMatrix steady_state(const DriftDiffusion &dd);

/// Max-abs entry of U U^dag - I.
double unitarity_deviation(const ComplexMatrix &U);

/// Real orthogonal-symplectic quadrature map induced by d = U c.
RealMatrix quadrature_map(const ComplexMatrix &U);

GaussianState apply_mode_transform(const GaussianState &state, const ComplexMatrix &U);

/// Applies U to the listed modes only; other modes are untouched.
GaussianState apply_mode_transform(const GaussianState &state,
                                   const ComplexMatrix &U,
                                   std::span<const std::size_t> modes);

/// Sorted symplectic eigenvalues, one per mode. Throws Unphysical when any
/// falls below 1/2 - kUncertaintyTolerance.
std::vector<double> symplectic_eigenvalues(const RealMatrix &cov);

/// 1 / sqrt(det(2 cov)).
double purity(const RealMatrix &cov);

}  // namespace ringcluster
