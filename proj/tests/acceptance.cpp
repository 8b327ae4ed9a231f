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

// Acceptance checks, one line per criterion. With arguments, runs only the
// named criteria (e.g. `acceptance 4 8b`).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "properties.hpp"
#include "ringcluster/fock_oracle.hpp"
#include "ringcluster/model.hpp"
#include "ringcluster/protocols.hpp"
#include "ringcluster/verify.hpp"

using namespace ringcluster;

namespace {

constexpr double kReproductionTol = 1e-8;
constexpr double kRuntimeLinear = 1.0;  // seconds
constexpr double kFiniteTimeTol = 0.05;
constexpr double kFiniteTimeBeta = 2.5;
constexpr double kPurityTol = 1e-8;
constexpr double kEigenTol = 1e-10;
constexpr double kOracleTol = 1e-3;
constexpr double kTraceTol = 1e-8;
constexpr double kRuntimeOracle = 60.0;  // seconds
constexpr double kTableTol = 1e-12;
constexpr double kKappaTol = 0.20;
constexpr double kGammaTol = 0.10;
constexpr double kInvarianceTol = 1e-10;
constexpr double kUncertaintyTol = 1e-9;
constexpr double kUnitarityTol = 1e-12;
constexpr double kDecouplingTol = 1e-10;
constexpr double kPermutationTol = 1e-10;

constexpr double kR = 0.5;

struct Outcome {
    bool pass;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x) {
    std::ostringstream s;
    s.precision(3);
    s << x;
    return s.str();
}

// Variance targets written from the printed formulas with e^{-2 xi} = (1 - r)/(1 + r).
std::vector<double> printed_targets(ClusterKind kind, double r) {
    const double e = (1 - r) / (1 + r);
    switch (kind) {
        case ClusterKind::Linear:
            return {e, 1.5 * e, 1.5 * e, e};
        case ClusterKind::Square:
            return {1.5 * e, 1.5 * e, 1.5 * e, 1.5 * e};
        case ClusterKind::TShape:
            return {2 * e, e, e, e};
    }
    return {};
}

const std::vector<std::vector<int>> &oracle_graph(ClusterKind kind) {
    switch (kind) {
        case ClusterKind::Linear:
            return oracle::kLinear;
        case ClusterKind::Square:
            return oracle::kSquare;
        case ClusterKind::TShape:
            break;
    }
    return oracle::kTShape;
}

Outcome reproduce(ClusterKind kind, bool timed) {
    const auto params = PhysicalParams::from_coupling(kFiniteTimeBeta, kR);
    const auto t0 = Clock::now();
    const auto run = run_protocol(builtin_protocol(kind, params), params, Method::LyapunovSequential);
    const double elapsed = seconds_since(t0);
    const auto got = nullifier_variances(run.final_state, builtin_graph(kind));
    const auto printed = printed_targets(kind, kR);
    const auto derived =
        oracle::nullifiers(oracle::squeezed_product_in_c(protocol_transform(kind).U, std::atanh(kR)), oracle_graph(kind));
    double err = 0.0;
    double oracle_gap = 0.0;
    std::ostringstream v;
    for (std::size_t a = 0; a < 4; ++a) {
        err = std::max(err, std::abs(got[a] - printed[a]));
        oracle_gap = std::max(oracle_gap, std::abs(derived[a] - printed[a]));
        v << (a ? ", " : "") << got[a];
    }
    bool pass = err <= kReproductionTol && oracle_gap <= kReproductionTol;
    std::ostringstream d;
    d << "variances (" << v.str() << "), max |v - target| " << fmt(err) << " (tol " << kReproductionTol
      << "), independent covariance oracle gap " << fmt(oracle_gap);
    if (timed) {
        pass = pass && elapsed < kRuntimeLinear;
        d << ", runtime " << fmt(elapsed) << " s (limit " << kRuntimeLinear << " s)";
    }
    return {pass, d.str()};
}

Outcome finite_time() {
    const auto params = PhysicalParams::from_coupling(kFiniteTimeBeta, kR);
    bool pass = true;
    std::ostringstream d;
    for (ClusterKind kind : kAllClusterKinds) {
        const auto p = builtin_protocol(kind, params);
        const auto exact = printed_targets(kind, kR);
        std::vector<double> errs;
        for (double tau : {4.0, 8.0, 12.0}) {
            const auto run = run_protocol(p, params, Method::TimeDomain, tau);
            const auto v = nullifier_variances(run.final_state, p.graph);
            double e = 0.0;
            for (std::size_t a = 0; a < 4; ++a) {
                e = std::max(e, std::abs(v[a] - exact[a]));
            }
            errs.push_back(e);
        }
        const bool ok = errs[0] <= kFiniteTimeTol && errs[0] > errs[1] && errs[1] > errs[2];
        pass = pass && ok;
        d << to_string(kind) << " err(4,8,12) = " << fmt(errs[0]) << ", " << fmt(errs[1]) << ", " << fmt(errs[2])
          << "; ";
    }
    d << "tol " << kFiniteTimeTol << " at stage_time 4, strictly decreasing";
    return {pass, d.str()};
}

Outcome purity_check() {
    const auto params = PhysicalParams::from_coupling(kFiniteTimeBeta, kR);
    double worst_p = 0.0;
    double worst_nu = 0.0;
    const std::vector<std::size_t> ens = {1, 2, 3, 4};
    for (ClusterKind kind : kAllClusterKinds) {
        const auto run = run_protocol(builtin_protocol(kind, params), params, Method::LyapunovSequential);
        const RealMatrix cov = run.final_state.reduced(ens).cov();
        worst_p = std::max(worst_p, std::abs(purity(cov) - 1.0));
        for (double nu : symplectic_eigenvalues(cov)) {
            worst_nu = std::max(worst_nu, std::abs(nu - 0.5));
        }
    }
    std::ostringstream d;
    d << "max |purity - 1| " << fmt(worst_p) << ", max |nu - 1/2| " << fmt(worst_nu) << " (tol " << kPurityTol
      << ", all three protocols)";
    return {worst_p <= kPurityTol && worst_nu <= kPurityTol, d.str()};
}

Outcome eigenvalue_law() {
    const std::vector<double> betas = {0.3, 0.6, 1.0, 2.5, 5.0};
    const std::vector<double> rs = {0.0, 0.2, 0.4, 0.6, 0.8};
    const double kappa = 1.0;
    double worst = 0.0;
    int flag_mismatch = 0;
    for (double beta : betas) {
        for (double r : rs) {
            ComplexMatrix F = ComplexMatrix::Zero(2, 2), G = ComplexMatrix::Zero(2, 2);
            F(0, 1) = F(1, 0) = beta;
            G(0, 1) = G(1, 0) = beta * r;
            const std::vector<double> rates = {cavity_lindblad_rate(kappa), 0.0};
            const auto dd = drift_diffusion(QuadraticHamiltonian(F, G), rates);
            const Eigen::VectorXcd ev = dd.drift.eigenvalues();
            const Complex disc = std::sqrt(Complex(kappa * kappa / 4 - beta * beta * (1 - r * r)));
            const Complex lp = -kappa / 2 + disc;
            const Complex lm = -kappa / 2 - disc;
            for (Eigen::Index k = 0; k < ev.size(); ++k) {
                worst = std::max(worst, std::min(std::abs(ev(k) - lp), std::abs(ev(k) - lm)));
            }
            int plus = 0;
            for (Eigen::Index k = 0; k < ev.size(); ++k) {
                plus += std::abs(ev(k) - lp) < std::abs(ev(k) - lm);
            }
            if (std::abs(lp - lm) > 1e-6 && plus != 2) {
                worst = std::max(worst, 1.0);
            }
            const bool slow_expected = beta * std::sqrt(1 - r * r) - kappa / 2 <= 0.0;
            const auto est = convergence_eigenvalues(beta, r, kappa);
            worst = std::max({worst, std::abs(est.lambda_plus - lp), std::abs(est.lambda_minus - lm)});
            flag_mismatch += est.slow() != slow_expected;
        }
    }
    std::ostringstream d;
    d << "25-point grid beta/kappa in {0.3,0.6,1,2.5,5} x r in {0,0.2,0.4,0.6,0.8}: max eigenvalue distance "
      << fmt(worst) << " (tol " << kEigenTol << "), slow-flag mismatches " << flag_mismatch;
    return {worst <= kEigenTol && flag_mismatch == 0, d.str()};
}

Outcome oracle_equivalence() {
    FockConfig c;
    c.cutoff_a = c.cutoff_d = 20;
    c.beta = 1.0;
    c.r = 0.3;
    c.kappa = 1.0;
    c.t_final = 6.0;
    const auto t0 = Clock::now();
    const auto fock = integrate_two_mode(c);
    const double elapsed = seconds_since(t0);
    const RealMatrix gauss = gaussian_two_mode_covariance(c);
    const double diff = (fock.covariance - gauss).cwiseAbs().maxCoeff();
    std::ostringstream d;
    d << "max |cov_fock - cov_gauss| " << fmt(diff) << " (tol " << kOracleTol << "), max trace error "
      << fmt(fock.max_trace_error) << " (tol " << kTraceTol << "), step-halving error "
      << fmt(fock.step_halving_error) << ", runtime " << fmt(elapsed) << " s (limit " << kRuntimeOracle << " s)";
    return {diff <= kOracleTol && fock.max_trace_error <= kTraceTol && elapsed < kRuntimeOracle, d.str()};
}

Outcome tables_whitelisted() {
    const auto all = check_tables(1.0, kR);
    int unexpected = 0;
    int flagged = 0;
    for (const auto &c : all) {
        unexpected += c.status == MatchStatus::UnexpectedMismatch;
        flagged += c.status == MatchStatus::ExpectedMismatch;
    }
    std::ostringstream d;
    d << "12 printed tables vs generated stages: " << unexpected << " unexpected mismatches, " << flagged
      << " stages differ only in whitelisted fields";
    return {unexpected == 0, d.str()};
}

Outcome tables_linear_exact() {
    const auto all = check_tables(1.0, kR);
    bool pass = true;
    std::ostringstream d;
    for (const auto &c : all) {
        if (c.kind != ClusterKind::Linear) {
            continue;
        }
        d << "L" << c.index << " " << to_string(c.status);
        if (c.status != MatchStatus::Exact) {
            pass = false;
            d << " [";
            for (std::size_t k = 0; k < c.diffs.size(); ++k) {
                d << (k ? " " : "") << c.diffs[k].field;
            }
            d << "]";
        }
        d << "; ";
    }
    d << "tol " << kTableTol;
    if (!pass) {
        d << ". Stage 3 prints the phases of ensembles 3 and 4 swapped: it addresses -(i c3 + c4)/sqrt2, "
             "which is not orthogonal to d_L2, so no consistent transform reproduces it. Stage 4 equals the "
             "generated stage for -d_L4 (every phase shifted by pi), which is physically equivalent but not "
             "an exact match";
    }
    return {pass, d.str()};
}

Outcome estimators() {
    const double kappa_2pi = cavity_decay_from_finesse(1.7e5, 0.1) / (2 * std::numbers::pi);
    const double gamma_eff = effective_spontaneous_rate(6e6, 0.005);
    const double ek = std::abs(kappa_2pi - 20e3) / 20e3;
    const double eg = std::abs(gamma_eff - 40.0) / 40.0;
    std::ostringstream d;
    d << "kappa/2pi = " << fmt(kappa_2pi) << " Hz vs 20 kHz (" << fmt(100 * ek) << "%, limit " << 100 * kKappaTol
      << "%); gamma_eff = " << gamma_eff << " Hz vs 40 Hz (" << fmt(100 * eg) << "%, limit " << 100 * kGammaTol
      << "%)";
    return {ek <= kKappaTol && eg <= kGammaTol, d.str()};
}

Outcome property_suites() {
    const double inv = props::symplectic_invariance(300, 2024);
    const double low = props::min_symplectic_during_evolution(100, 2025);
    const double uni = props::transform_unitarity();
    const double dec = props::stage_decoupling(100, 2026);
    const double per = props::permutation_invariance(2027);
    std::ostringstream d;
    d << "invariance " << fmt(inv) << " (tol " << kInvarianceTol << "), min nu " << low << " (>= 1/2 - "
      << kUncertaintyTol << "), unitarity " << fmt(uni) << " (tol " << kUnitarityTol << "), off-target/beta "
      << fmt(dec) << " (tol " << kDecouplingTol << "), permutation " << fmt(per) << " (tol " << kPermutationTol
      << ")";
    const bool pass = inv <= kInvarianceTol && low >= 0.5 - kUncertaintyTol && uni <= kUnitarityTol &&
                      dec <= kDecouplingTol && per <= kPermutationTol;
    return {pass, d.str()};
}

struct Criterion {
    std::string id;
    std::string name;
    std::function<Outcome()> check;
};

}  // namespace

int main(int argc, char **argv) {
    const std::vector<Criterion> criteria = {
        {"1", "linear cluster reproduction", [] { return reproduce(ClusterKind::Linear, true); }},
        {"2", "square cluster reproduction", [] { return reproduce(ClusterKind::Square, false); }},
        {"3", "T-shape cluster reproduction", [] { return reproduce(ClusterKind::TShape, false); }},
        {"4", "finite-time protocol", finite_time},
        {"5", "purity of the final state", purity_check},
        {"6", "convergence eigenvalue law", eigenvalue_law},
        {"7", "Fock oracle equivalence", oracle_equivalence},
        {"8a", "stage tables match except whitelisted typos", tables_whitelisted},
        {"8b", "linear stage tables match exactly", tables_linear_exact},
        {"9", "physical estimators", estimators},
        {"10", "property suites", property_suites},
    };
    std::set<std::string> only(argv + 1, argv + argc);
    int failures = 0;
    int ran = 0;
    for (const auto &c : criteria) {
        if (!only.empty() && !only.count(c.id)) {
            continue;
        }
        ++ran;
        Outcome o{false, ""};
        try {
            o = c.check();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name << ": " << o.detail << std::endl;
    }
    if (ran == 0) {
        std::cerr << "no matching criteria\n";
        return 2;
    }
    return failures ? 1 : 0;
}
