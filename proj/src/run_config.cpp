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

#include "ringcluster/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "ringcluster/errors.hpp"

namespace ringcluster {

namespace {

using nlohmann::json;

std::size_t line_of_key(const std::string &source, const std::string &key) {
    const auto pos = source.find('"' + key + '"');
    if (pos == std::string::npos) {
        return 0;
    }
    return 1 + static_cast<std::size_t>(std::count(source.begin(), source.begin() + static_cast<long>(pos), '\n'));
}

[[noreturn]] void field_error(const std::string &source, const std::string &field, const std::string &message) {
    std::ostringstream msg;
    msg << "config";
    if (const auto line = line_of_key(source, field); line > 0) {
        msg << " line " << line;
    }
    msg << ", field '" << field << "': " << message;
    throw ConfigError(msg.str());
}

double get_number(const json &doc, const std::string &source, const std::string &key) {
    const json &v = doc.at(key);
    if (!v.is_number()) {
        field_error(source, key, "expected a number");
    }
    return v.get<double>();
}

std::vector<double> get_grid(const json &doc, const std::string &source, const std::string &key) {
    const json &v = doc.at(key);
    if (v.is_number()) {
        return {v.get<double>()};
    }
    if (!v.is_array()) {
        field_error(source, "sweep." + key, "expected a number or an array of numbers");
    }
    std::vector<double> out;
    for (const auto &x : v) {
        if (!x.is_number()) {
            field_error(source, key, "grid entries must be numbers");
        }
        out.push_back(x.get<double>());
    }
    return out;
}

void check_grid(const std::vector<double> &grid, const char *name) {
    for (double x : grid) {
        if (!std::isfinite(x)) {
            throw ConfigError(std::string("config, field 'sweep.") + name + "': grid entries must be finite");
        }
    }
}

}  // namespace

double RunConfig::resolved_tol() const {
    if (tol) {
        return *tol;
    }
    return method == Method::LyapunovSequential ? 1e-6 : 0.05;
}

PhysicalParams RunConfig::params() const {
    return PhysicalParams::from_coupling(beta, r, 1.0);
}

void RunConfig::validate() const {
    if (!(r >= 0.0 && r < 1.0)) {
        throw ConfigError("config, field 'r': must lie in [0, 1)");
    }
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw ConfigError("config, field 'beta': must be positive and finite");
    }
    if (!(stage_time > 0.0) || !std::isfinite(stage_time)) {
        throw ConfigError("config, field 'stage_time': must be positive and finite");
    }
    if (tol && (!(*tol > 0.0) || !std::isfinite(*tol))) {
        throw ConfigError("config, field 'tol': must be positive and finite");
    }
    check_grid(sweep_beta, "beta");
    check_grid(sweep_r, "r");
    check_grid(sweep_stage_time, "stage_time");
}

json to_json(const RunConfig &c) {
    json j;
    j["protocol"] = to_string(c.protocol);
    j["r"] = c.r;
    j["beta"] = c.beta;
    j["stage_time"] = c.stage_time;
    j["method"] = to_string(c.method);
    j["tol"] = c.resolved_tol();
    j["out"] = c.out;
    j["oracle"] = c.oracle;
    if (!c.sweep_beta.empty() || !c.sweep_r.empty() || !c.sweep_stage_time.empty()) {
        json s;
        s["beta"] = c.sweep_beta;
        s["r"] = c.sweep_r;
        s["stage_time"] = c.sweep_stage_time;
        j["sweep"] = s;
    }
    return j;
}

RunConfig config_from_json(const json &input, const std::string &source) {
    if (!input.is_object()) {
        throw ConfigError("config: top level must be an object");
    }
    const json &doc = input.contains("config") ? input.at("config") : input;
    if (!doc.is_object()) {
        field_error(source, "config", "expected an object");
    }
    static const std::set<std::string> known = {"protocol", "r",      "beta",  "stage_time", "method",
                                                "tol",      "out",    "oracle", "sweep",     "threads"};
    for (const auto &[key, value] : doc.items()) {
        if (!known.count(key)) {
            field_error(source, key, "unknown field");
        }
    }

    RunConfig c;
    try {
        if (doc.contains("protocol")) {
            if (!doc["protocol"].is_string()) {
                field_error(source, "protocol", "expected a string");
            }
            c.protocol = parse_cluster_kind(doc["protocol"].get<std::string>());
        }
    } catch (const InvalidParameter &e) {
        field_error(source, "protocol", e.what());
    }
    try {
        if (doc.contains("method")) {
            if (!doc["method"].is_string()) {
                field_error(source, "method", "expected a string");
            }
            c.method = parse_method(doc["method"].get<std::string>());
        }
    } catch (const InvalidParameter &e) {
        field_error(source, "method", e.what());
    }
    if (doc.contains("r")) {
        c.r = get_number(doc, source, "r");
    }
    if (doc.contains("beta")) {
        c.beta = get_number(doc, source, "beta");
    }
    if (doc.contains("stage_time")) {
        c.stage_time = get_number(doc, source, "stage_time");
    }
    if (doc.contains("tol") && !doc["tol"].is_null()) {
        c.tol = get_number(doc, source, "tol");
    }
    if (doc.contains("out")) {
        if (!doc["out"].is_string()) {
            field_error(source, "out", "expected a string");
        }
        c.out = doc["out"].get<std::string>();
    }
    if (doc.contains("oracle")) {
        if (!doc["oracle"].is_boolean()) {
            field_error(source, "oracle", "expected true or false");
        }
        c.oracle = doc["oracle"].get<bool>();
    }
    if (doc.contains("threads")) {
        if (!doc["threads"].is_number_unsigned()) {
            field_error(source, "threads", "expected a non-negative integer");
        }
        c.threads = doc["threads"].get<std::size_t>();
    }
    if (doc.contains("sweep")) {
        const json &s = doc["sweep"];
        if (!s.is_object()) {
            field_error(source, "sweep", "expected an object");
        }
        for (const auto &[key, value] : s.items()) {
            if (key == "beta") {
                c.sweep_beta = get_grid(s, source, key);
            } else if (key == "r") {
                c.sweep_r = get_grid(s, source, key);
            } else if (key == "stage_time") {
                c.sweep_stage_time = get_grid(s, source, key);
            } else {
                field_error(source, key, "unknown sweep field");
            }
        }
    }

    try {
        c.validate();
    } catch (const ConfigError &e) {
        // Re-anchor the message on the field's line when the source is known.
        const std::string what = e.what();
        const auto start = what.find("field '");
        if (start != std::string::npos && !source.empty()) {
            const auto end = what.find('\'', start + 7);
            const std::string field = what.substr(start + 7, end - start - 7);
            field_error(source, field, what.substr(what.find(": ", end) + 2));
        }
        throw;
    }
    return c;
}

RunConfig parse_run_config(const std::string &text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        std::size_t line = 1;
        std::size_t column = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::ostringstream msg;
        msg << "config line " << line << ", column " << column << ": syntax error";
        throw ConfigError(msg.str());
    }
    return config_from_json(doc, text);
}

RunConfig load_run_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_run_config(buffer.str());
}

}  // namespace ringcluster
