// Copyright 2026 The qfno Authors
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

#include <ostream>
#include <string>
#include <vector>

#include "qfno/eval/eval.hpp"
#include "qfno/train/trainer.hpp"

namespace qfno::io {

// Shortest text that parses back to the same double; nan and inf spelled out.
std::string format_double(double v);

void write_metrics_csv(std::ostream& out, const std::vector<train::EpochMetrics>& metrics);
void write_metrics_csv(const std::string& path, const std::vector<train::EpochMetrics>& metrics);

// Columns sample, t_start, t_end, metric_name, value.
void write_report_csv(std::ostream& out, const eval::EvalReport& report);
void write_report_csv(const std::string& path, const eval::EvalReport& report);

}  // namespace qfno::io
