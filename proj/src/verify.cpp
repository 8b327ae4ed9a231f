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

#include "ringcluster/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ringcluster/errors.hpp"

namespace ringcluster {

std::string to_string(ClusterKind kind) {
    switch (kind) {
        case ClusterKind::Linear:
            return "linear";
        case ClusterKind::Square:
            return "square";
        case ClusterKind::TShape:
            return "tshape";
    }
    return "unknown";
}

ClusterKind parse_cluster_kind(std::string_view name) {
    if (name == "linear") {
        return ClusterKind::Linear;
    }
    if (name == "square") {
        return ClusterKind::Square;
    }
    if (name == "tshape" || name == "t-shape" || name == "T") {
        return ClusterKind::TShape;
    }
    throw InvalidParameter("unknown cluster kind '" + std::string(name) + "' (expected linear, square or tshape)");
}

ClusterGraph::ClusterGraph(std::string name, Adjacency adjacency)
    : name_(std::move(name)), adjacency_(adjacency) {
    for (std::size_t i = 0; i < 4; ++i) {
        if (adjacency_[i][i]) {
            throw InvalidParameter("ClusterGraph: self-loops are not allowed");
        }
        for (std::size_t j = 0; j < 4; ++j) {
            if (adjacency_[i][j] != adjacency_[j][i]) {
                throw InvalidParameter("ClusterGraph: adjacency must be symmetric");
            }
        }
    }
}

std::vector<std::size_t> ClusterGraph::neighbors(std::size_t a) const {
    std::vector<std::size_t> out;
    for (std::size_t b = 0; b < 4; ++b) {
        if (adjacency_.at(a)[b]) {
            out.push_back(b);
        }
    }
    return out;
}

RealVector ClusterGraph::nullifier_weights(std::size_t a) const {
    RealVector w = RealVector::Zero(8);
    w(static_cast<Eigen::Index>(2 * a + 1)) = 1.0;
    for (std::size_t b : neighbors(a)) {
        w(static_cast<Eigen::Index>(2 * b)) -= 1.0;
    }
    return w;
}

std::string ClusterGraph::nullifier_expression(std::size_t a) const {
    std::ostringstream out;
    out << 'p' << a + 1;
    for (std::size_t b : neighbors(a)) {
        out << "-q" << b + 1;
    }
    return out.str();
}

ClusterGraph builtin_graph(ClusterKind kind) {
    ClusterGraph::Adjacency adj{};
    auto edge = [&adj](std::size_t i, std::size_t j) {
        adj[i - 1][j - 1] = true;
        adj[j - 1][i - 1] = true;
    };
    switch (kind) {
        case ClusterKind::Linear:
            edge(1, 2);
            edge(2, 3);
            edge(3, 4);
            break;
        case ClusterKind::Square:
            edge(1, 3);
            edge(1, 4);
            edge(2, 3);
            edge(2, 4);
            break;
        case ClusterKind::TShape:
            edge(1, 2);
            edge(1, 3);
            edge(1, 4);
            break;
    }
    return ClusterGraph(to_string(kind), adj);
}

std::vector<double> nullifier_variances(const GaussianState &state, const ClusterGraph &graph) {
    std::vector<std::size_t> modes;
    for (const char *label : {"c1", "c2", "c3", "c4"}) {
        if (auto idx = state.find_mode(label)) {
            modes.push_back(*idx);
        }
    }
    if (modes.size() != 4) {
        if (state.n_modes() != 4) {
            std::ostringstream msg;
            msg << "nullifier_variances: need ensemble modes c1..c4 or a four-mode state, got " << state.n_modes()
                << " modes";
            throw InvalidParameter(msg.str());
        }
        modes = {0, 1, 2, 3};
    }
    const RealMatrix cov = state.reduced(modes).cov();
    std::vector<double> out;
    for (std::size_t a = 0; a < 4; ++a) {
        const RealVector w = graph.nullifier_weights(a);
        out.push_back(w.dot(cov * w));
    }
    return out;
}

std::vector<double> analytic_targets(ClusterKind kind, double xi) {
    if (!(xi >= 0.0)) {
        throw InvalidParameter("analytic_targets: xi must be non-negative");
    }
    const double s = std::exp(-2.0 * xi);
    switch (kind) {
        case ClusterKind::Linear:
            return {s, 1.5 * s, 1.5 * s, s};
        case ClusterKind::Square:
            return {1.5 * s, 1.5 * s, 1.5 * s, 1.5 * s};
        case ClusterKind::TShape:
            return {2.0 * s, s, s, s};
    }
    return {};
}

double VarianceReport::max_error() const {
    double worst = 0.0;
    for (std::size_t a = 0; a < variances.size(); ++a) {
        worst = std::max(worst, std::abs(variances[a] - targets[a]));
    }
    return worst;
}

VarianceReport is_cluster(const GaussianState &state, ClusterKind kind, double xi, double tol) {
    if (!(tol > 0.0)) {
        throw InvalidParameter("is_cluster: tolerance must be positive");
    }
    VarianceReport report;
    report.tolerance = tol;
    report.variances = nullifier_variances(state, builtin_graph(kind));
    report.targets = analytic_targets(kind, xi);
    report.vacuum = analytic_targets(kind, 0.0);
    report.pass = true;
    for (std::size_t a = 0; a < report.variances.size(); ++a) {
        const bool ok = std::abs(report.variances[a] - report.targets[a]) <= tol &&
                        report.variances[a] < report.vacuum[a];
        report.node_pass.push_back(ok);
        report.pass = report.pass && ok;
    }
    return report;
}

}  // namespace ringcluster
