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

// Cluster-state diagnostics: nullifiers p_a - sum_{b in N(a)} q_b over the four
// ensemble modes and their variances.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "ringcluster/gaussian.hpp"

namespace ringcluster {

enum class ClusterKind { Linear, Square, TShape };

std::string to_string(ClusterKind kind);
/// Accepts "linear", "square", "tshape" (also "t-shape"). Throws InvalidParameter.
ClusterKind parse_cluster_kind(std::string_view name);

inline constexpr std::array<ClusterKind, 3> kAllClusterKinds = {ClusterKind::Linear, ClusterKind::Square,
                                                                ClusterKind::TShape};

class ClusterGraph {
   public:
    using Adjacency = std::array<std::array<bool, 4>, 4>;

    ClusterGraph(std::string name, Adjacency adjacency);

    const std::string &name() const noexcept {
        return name_;
    }
    const Adjacency &adjacency() const noexcept {
        return adjacency_;
    }
    /// Zero-based neighbors of node a.
    std::vector<std::size_t> neighbors(std::size_t a) const;

    /// Coefficients of the nullifier of node a over (q1, p1, ..., q4, p4).
    RealVector nullifier_weights(std::size_t a) const;

    /// Human-readable nullifier, e.g. "p2-q1-q3".
    std::string nullifier_expression(std::size_t a) const;

   private:
    std::string name_;
    Adjacency adjacency_;
};

ClusterGraph builtin_graph(ClusterKind kind);

/// Variance of each node's nullifier. The state must carry modes labeled
/// c1..c4 (other modes are marginalized out) or consist of exactly four modes.
std::vector<double> nullifier_variances(const GaussianState &state, const ClusterGraph &graph);

/// Ideal finite-squeezing variances for the built-in graphs; xi >= 0.
std::vector<double> analytic_targets(ClusterKind kind, double xi);

struct VarianceReport {
    std::vector<double> variances;
    std::vector<double> targets;
    std::vector<double> vacuum;
    std::vector<bool> node_pass;
    double tolerance = 0.0;
    bool pass = false;

    /// max_a |variances[a] - targets[a]|.
    double max_error() const;
};

/// Passes when every nullifier variance is within `tol` of its target and
/// strictly below its vacuum value.
VarianceReport is_cluster(const GaussianState &state, ClusterKind kind, double xi, double tol);

}  // namespace ringcluster
