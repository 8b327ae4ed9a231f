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

// Structured result documents for runs, sweeps, table checks and the
// physical estimators. Documents are JSON objects with sorted keys, so equal
// inputs give byte-identical output apart from the "timestamp" field.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ringcluster/fock_oracle.hpp"
#include "ringcluster/protocols.hpp"
#include "ringcluster/run_config.hpp"

namespace ringcluster {

inline constexpr int kSchemaVersion = 1;
/// Entrywise agreement required between the Fock and Gaussian covariances.
inline constexpr double kOracleTolerance = 1e-3;

std::string version();

struct RunOutcome {
    nlohmann::json document;
    bool pass = false;
};

/// Runs the configured protocol (and the Fock cross-check when requested).
/// Physics failures propagate as PhysicsError.
RunOutcome execute_run(const RunConfig &config);

struct SweepRow {
    double beta = 0.0;
    double r = 0.0;
    double stage_time = 0.0;
    double max_error = 0.0;
    bool slow_regime = false;
    bool pass = false;
    std::string error;  // set when the point raised a physics error
};

/// Cartesian grid over (beta, r, stage_time), evaluated in parallel; rows are
/// ordered by grid index. Throws ConfigError on an empty grid.
std::vector<SweepRow> run_sweep(const RunConfig &config);

nlohmann::json sweep_document(const RunConfig &config, const std::vector<SweepRow> &rows);

nlohmann::json tables_document(const std::vector<StageComparison> &comparisons);

struct PhysicalInputs {
    double finesse = 1.7e5;
    double round_trip_length_m = 0.1;
    double gamma_over_2pi_hz = 6e6;
    double omega_over_detuning = 0.005;
};

nlohmann::json physical_document(const PhysicalInputs &inputs);

/// Copy of `doc` without its timestamp, for comparing runs.
nlohmann::json without_timestamp(nlohmann::json doc);

/// Two-space indented text with a trailing newline.
std::string dump_document(const nlohmann::json &doc);

/// Writes `text` to `path`; throws Error on I/O failure.
void write_text(const std::string &path, const std::string &text);

}  // namespace ringcluster
