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

// Property checks shared by the unit tests and the acceptance binary. Each
// returns the worst deviation found over a fixed-seed random sample.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "ringcluster/gaussian.hpp"
#include "ringcluster/model.hpp"
#include "ringcluster/protocols.hpp"

namespace props {

using namespace ringcluster;

inline std::vector<std::string> labels(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t k = 0; k < n; ++k) {
        out.push_back("m" + std::to_string(k));
    }
    return out;
}

// max |nu(U sigma) - nu(sigma)| over random states and random transforms.
inline double symplectic_invariance(int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> size(1, 5);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        const auto n = static_cast<Eigen::Index>(size(rng));
        const RealMatrix cov = oracle::random_covariance(rng, n, s % 2 == 0);
        const ComplexMatrix U = oracle::random_unitary(rng, n);
        const GaussianState in(labels(static_cast<std::size_t>(n)), RealVector::Zero(2 * n), cov);
        const auto before = symplectic_eigenvalues(cov);
        const auto after = symplectic_eigenvalues(apply_mode_transform(in, U).cov());
        for (std::size_t k = 0; k < before.size(); ++k) {
            worst = std::max(worst, std::abs(before[k] - after[k]));
        }
    }
    return worst;
}

// Smallest symplectic eigenvalue seen while evolving random states under
// random quadratic Hamiltonians with random damping, plus every stage state of
// the three protocols with both methods.
inline double min_symplectic_during_evolution(int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> size(1, 4);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> rate(0.0, 2.0);
    std::uniform_real_distribution<double> time(0.0, 5.0);
    double lowest = std::numeric_limits<double>::infinity();
    for (int s = 0; s < samples; ++s) {
        const auto n = static_cast<Eigen::Index>(size(rng));
        ComplexMatrix X(n, n), Y(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                X(i, j) = Complex(normal(rng), normal(rng));
                Y(i, j) = Complex(normal(rng), normal(rng));
            }
        }
        const ComplexMatrix F = 0.5 * (X + X.adjoint());
        const ComplexMatrix G = 0.25 * (Y + Y.transpose());
        std::vector<double> gamma(static_cast<std::size_t>(n));
        for (auto &g : gamma) {
            g = rate(rng);
        }
        const auto dd = drift_diffusion(QuadraticHamiltonian(F, G), gamma);
        GaussianState state(labels(static_cast<std::size_t>(n)), RealVector::Zero(2 * n),
                            oracle::random_covariance(rng, n, s % 3 == 0));
        for (int k = 0; k < 3; ++k) {
            state = evolve(state, dd, time(rng));
            const auto nu = oracle::symplectic_spectrum(state.cov());
            lowest = std::min(lowest, *std::min_element(nu.begin(), nu.end()));
        }
    }
    for (ClusterKind kind : kAllClusterKinds) {
        for (Method m : {Method::LyapunovSequential, Method::TimeDomain}) {
            const auto params = PhysicalParams::from_coupling(2.5, 0.5);
            const Protocol p = builtin_protocol(kind, params, 4.0);
            GaussianState state = GaussianState::vacuum(model_mode_labels());
            for (std::size_t s = 0; s < p.stages.size(); ++s) {
                Protocol partial = p;
                partial.stages.assign(p.stages.begin(), p.stages.begin() + static_cast<long>(s + 1));
                partial.stages.resize(4, PulseStage{});
                const auto run = run_protocol(partial, params, m, 4.0);
                const auto nu = oracle::symplectic_spectrum(run.final_state.cov());
                lowest = std::min(lowest, *std::min_element(nu.begin(), nu.end()));
            }
        }
    }
    return lowest;
}

inline double transform_unitarity() {
    double worst = 0.0;
    for (ClusterKind kind : kAllClusterKinds) {
        for (const auto &t : {builtin_transform(kind), protocol_transform(kind)}) {
            const ComplexMatrix e = t.U * t.U.adjoint() - ComplexMatrix::Identity(4, 4);
            worst = std::max(worst, e.cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

// Largest off-target coupling relative to beta over random (beta, r).
inline double stage_decoupling(int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> beta(0.1, 10.0);
    std::uniform_real_distribution<double> ratio(0.0, 0.95);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        const auto params = PhysicalParams::from_coupling(beta(rng), ratio(rng));
        for (ClusterKind kind : kAllClusterKinds) {
            const Protocol p = builtin_protocol(kind, params);
            for (std::size_t k = 0; k < p.stages.size(); ++k) {
                const auto c = transformed_coupling(p.stages[k], p.transform, params);
                double off = 0.0;
                for (std::size_t j = 0; j < kEnsembles; ++j) {
                    if (j != k) {
                        off = std::max({off, std::abs(c.beam_splitter[j]), std::abs(c.squeezing[j])});
                    }
                }
                worst = std::max(worst, off / params.beta());
            }
        }
    }
    return worst;
}

// max |cov(permuted order) - cov(natural order)| for lyapunov_sequential.
inline double permutation_invariance(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ratio(0.05, 0.9);
    double worst = 0.0;
    for (ClusterKind kind : kAllClusterKinds) {
        const auto params = PhysicalParams::from_coupling(2.5, ratio(rng));
        const Protocol p = builtin_protocol(kind, params);
        const RealMatrix ref = run_protocol(p, params, Method::LyapunovSequential).final_state.cov();
        std::vector<std::size_t> order = {0, 1, 2, 3};
        while (std::next_permutation(order.begin(), order.end())) {
            Protocol q = p;
            for (std::size_t k = 0; k < 4; ++k) {
                q.stages[k] = p.stages[order[k]];
            }
            const RealMatrix cov = run_protocol(q, params, Method::LyapunovSequential).final_state.cov();
            worst = std::max(worst, (cov - ref).cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

}  // namespace props
