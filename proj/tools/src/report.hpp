// Copyright 2026 The arealaw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <ostream>
#include <string>

#include "arealaw/flow.hpp"
#include "arealaw/marking.hpp"
#include "arealaw/predictor.hpp"
#include "arealaw/simulator.hpp"
#include "arealaw/transport.hpp"
#include "json.hpp"

namespace arealaw::cli {

using nlohmann::json;

inline constexpr int schema_version = 1;

/// Graph document with its trace, in the input format.
json marginal_json(const Marginal& marginal);

json flow_json(const Graph& graph, const FlowNetwork& network, const FlowResult& flow);

json marking_json(const Marking& marking);

json prediction_json(const EntropyPrediction& prediction);

json mc_json(const MCReport& report);

json instance_json(const TransportInstance& instance);

json scenarios_json(const Scenarios& y);

json plan_json(const RoutingPlan& plan);

json certificate_json(const Certificate& cert);

/// Empty report carrying the schema version and command name.
json report_header(const std::string& command);

std::string dump(const json& report);

/// `sample,index,eigenvalue`, one row per eigenvalue, descending within a
/// sample.
void write_spectra_csv(std::ostream& out, const MCReport& report);

}  // namespace arealaw::cli
