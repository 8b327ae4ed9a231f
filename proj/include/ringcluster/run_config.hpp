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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ringcluster/model.hpp"
#include "ringcluster/protocols.hpp"
#include "ringcluster/verify.hpp"

namespace ringcluster {

/// Rates in units of kappa, times in units of 1/kappa. Everything is deterministic.
struct RunConfig {
    ClusterKind protocol = ClusterKind::Linear;
    double r = 0.5;
    double beta = 2.5;
    double stage_time = 4.0;
    Method method = Method::LyapunovSequential;
    /// Defaults to 1e-6 for lyapunov_sequential and 0.05 for time_domain.
    std::optional<double> tol;
    std::string out;
    bool oracle = false;

    // Sweep grids; an absent grid falls back to the scalar value.
    std::vector<double> sweep_beta;
    std::vector<double> sweep_r;
    std::vector<double> sweep_stage_time;
    std::size_t threads = 0;  // 0 = hardware concurrency

    double resolved_tol() const;
    PhysicalParams params() const;

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

nlohmann::json to_json(const RunConfig &config);

/// Accepts a bare config object or a result document with a "config" member.
/// Throws ConfigError; `source` is used to locate fields by line.
RunConfig config_from_json(const nlohmann::json &doc, const std::string &source = "");

/// Throws ConfigError with line and column on syntax errors.
RunConfig parse_run_config(const std::string &text);

RunConfig load_run_config(const std::string &path);

}  // namespace ringcluster
