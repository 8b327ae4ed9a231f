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

// Reference computations written independently of the library internals:
// drift from the Heisenberg equations of the complex amplitudes, an RK4
// covariance integrator, and cluster covariances built from complex moments.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using Cx = std::complex<double>;

struct Generator {
    Mat A;
    Mat D;
};

// d<a>/dt = M <a> + N <a^*>, M = -iF - gamma/2, N = -iG, then split into (q, p).
inline Generator heisenberg_generator(const CMat &F, const CMat &G, const std::vector<double> &gamma) {
    const Eigen::Index n = F.rows();
    CMat M = Cx(0, -1) * F;
    const CMat N = Cx(0, -1) * G;
    for (Eigen::Index k = 0; k < n; ++k) {
        M(k, k) -= 0.5 * gamma[static_cast<std::size_t>(k)];
    }
    Generator g{Mat::Zero(2 * n, 2 * n), Mat::Zero(2 * n, 2 * n)};
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const Cx m = M(i, j);
            const Cx v = N(i, j);
            g.A(2 * i, 2 * j) = m.real() + v.real();
            g.A(2 * i, 2 * j + 1) = -m.imag() + v.imag();
            g.A(2 * i + 1, 2 * j) = m.imag() + v.imag();
            g.A(2 * i + 1, 2 * j + 1) = m.real() - v.real();
        }
        g.D(2 * i, 2 * i) = g.D(2 * i + 1, 2 * i + 1) = 0.5 * gamma[static_cast<std::size_t>(i)];
    }
    return g;
}

inline Mat rk4_covariance(const Generator &g, Mat cov, double t, double dt) {
    const auto f = [&g](const Mat &s) -> Mat { return g.A * s + s * g.A.transpose() + g.D; };
    const int steps = static_cast<int>(std::ceil(t / dt));
    const double h = steps ? t / steps : 0.0;
    for (int k = 0; k < steps; ++k) {
        const Mat k1 = f(cov);
        const Mat k2 = f(cov + 0.5 * h * k1);
        const Mat k3 = f(cov + 0.5 * h * k2);
        const Mat k4 = f(cov + h * k3);
        cov += (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return cov;
}

// Covariance from <c_i c_j> and <c_i^dag c_j> (zero means).
inline Mat covariance_from_moments(const CMat &cc, const CMat &cdc) {
    const Eigen::Index n = cc.rows();
    Mat cov(2 * n, 2 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const Cx x = cc(i, j);
            const Cx y = cdc(i, j) + (i == j ? 0.5 : 0.0);
            cov(2 * i, 2 * j) = x.real() + y.real();
            cov(2 * i + 1, 2 * j + 1) = y.real() - x.real();
            cov(2 * i, 2 * j + 1) = x.imag() + y.imag();
            cov(2 * i + 1, 2 * j) = x.imag() - y.imag();
        }
    }
    return 0.5 * (cov + cov.transpose());
}

// Each d_j = sum_k U_jk c_k in S(xi)|0>; returns the covariance over c1..c4.
inline Mat squeezed_product_in_c(const CMat &U, double xi) {
    const double sh = std::sinh(xi);
    const double ch = std::cosh(xi);
    const Eigen::Index n = U.rows();
    CMat cc = CMat::Zero(n, n);
    CMat cdc = CMat::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index l = 0; l < n; ++l) {
            for (Eigen::Index j = 0; j < n; ++j) {
                cc(k, l) += std::conj(U(j, k)) * std::conj(U(j, l)) * (-sh * ch);
                cdc(k, l) += U(j, k) * std::conj(U(j, l)) * (sh * sh);
            }
        }
    }
    return covariance_from_moments(cc, cdc);
}

// Var(p_a - sum_{b in N(a)} q_b) with zero-based neighbor lists.
inline std::vector<double> nullifiers(const Mat &cov, const std::vector<std::vector<int>> &nbrs) {
    std::vector<double> out;
    for (std::size_t a = 0; a < nbrs.size(); ++a) {
        Vec w = Vec::Zero(cov.rows());
        w(2 * static_cast<Eigen::Index>(a) + 1) = 1.0;
        for (int b : nbrs[a]) {
            w(2 * b) -= 1.0;
        }
        out.push_back(w.dot(cov * w));
    }
    return out;
}

inline const std::vector<std::vector<int>> kLinear = {{1}, {0, 2}, {1, 3}, {2}};
inline const std::vector<std::vector<int>> kSquare = {{2, 3}, {2, 3}, {0, 1}, {0, 1}};
inline const std::vector<std::vector<int>> kTShape = {{1, 2, 3}, {0}, {0}, {0}};

inline CMat random_unitary(std::mt19937_64 &rng, Eigen::Index n) {
    std::normal_distribution<double> normal;
    CMat z(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            z(i, j) = Cx(normal(rng), normal(rng));
        }
    }
    Eigen::HouseholderQR<CMat> qr(z);
    CMat q = qr.householderQ() * CMat::Identity(n, n);
    const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < n; ++j) {
        q.col(j) *= r(j, j) / std::abs(r(j, j));
    }
    return q;
}

// Squeezed thermal states rotated by a random passive transform.
inline Mat random_covariance(std::mt19937_64 &rng, Eigen::Index n, bool pure) {
    std::uniform_real_distribution<double> sq(-1.0, 1.0);
    std::uniform_real_distribution<double> th(1.0, 3.0);
    const CMat U = random_unitary(rng, n);
    CMat cc = CMat::Zero(n, n);
    CMat cdc = CMat::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double s = sq(rng);
        const double nu = pure ? 1.0 : th(rng);
        // thermal occupation (nu - 1)/2 then squeezing
        const double nbar = 0.5 * (nu - 1.0);
        const double sh = std::sinh(s), ch = std::cosh(s);
        const Cx dd = -(2 * nbar + 1) * sh * ch;
        const double ddag = nbar * (ch * ch + sh * sh) + sh * sh;
        for (Eigen::Index k = 0; k < n; ++k) {
            for (Eigen::Index l = 0; l < n; ++l) {
                cc(k, l) += std::conj(U(j, k)) * std::conj(U(j, l)) * dd;
                cdc(k, l) += U(j, k) * std::conj(U(j, l)) * ddag;
            }
        }
    }
    return covariance_from_moments(cc, cdc);
}

// Williamson spectrum via eigenvalues of i Omega cov, computed directly.
inline std::vector<double> symplectic_spectrum(const Mat &cov) {
    const Eigen::Index n = cov.rows() / 2;
    Mat omega = Mat::Zero(2 * n, 2 * n);
    for (Eigen::Index k = 0; k < n; ++k) {
        omega(2 * k, 2 * k + 1) = 1.0;
        omega(2 * k + 1, 2 * k) = -1.0;
    }
    const CMat m = Cx(0, 1) * (omega * cov).cast<Cx>();
    Eigen::ComplexEigenSolver<CMat> es(m);
    std::vector<double> vals;
    for (Eigen::Index i = 0; i < 2 * n; ++i) {
        if (es.eigenvalues()(i).real() > 0) {
            vals.push_back(es.eigenvalues()(i).real());
        }
    }
    std::sort(vals.begin(), vals.end());
    return vals;
}

}  // namespace oracle
