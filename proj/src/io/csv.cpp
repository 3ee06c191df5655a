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

#include "qfno/io/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "qfno/error.hpp"

namespace qfno::io {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw IoError(IoErrorCode::kOpenFailed, "cannot open '" + path + "' for writing");
  return f;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_metrics_csv(std::ostream& out, const std::vector<train::EpochMetrics>& metrics) {
  out << "epoch,train_loss,val_loss,val_fidelity\n";
  for (const auto& m : metrics) {
    out << m.epoch << ',' << format_double(m.train_loss) << ',' << format_double(m.val_loss) << ','
        << format_double(m.val_fidelity) << '\n';
  }
}

void write_metrics_csv(const std::string& path, const std::vector<train::EpochMetrics>& metrics) {
  auto f = open_out(path);
  write_metrics_csv(f, metrics);
  if (!f) throw IoError(IoErrorCode::kOpenFailed, "failed writing '" + path + "'");
}

void write_report_csv(std::ostream& out, const eval::EvalReport& report) {
  out << "sample,t_start,t_end,metric_name,value\n";
  for (const auto& r : report.rows) {
    out << r.sample << ',' << format_double(r.t_start) << ',' << format_double(r.t_end) << ',' << r.metric << ','
        << format_double(r.value) << '\n';
  }
}

void write_report_csv(const std::string& path, const eval::EvalReport& report) {
  auto f = open_out(path);
  write_report_csv(f, report);
  if (!f) throw IoError(IoErrorCode::kOpenFailed, "failed writing '" + path + "'");
}

}  // namespace qfno::io
