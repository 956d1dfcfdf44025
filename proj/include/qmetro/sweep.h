// Copyright 2026 The qmetro Authors
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

#ifndef QMETRO_SWEEP_H_
#define QMETRO_SWEEP_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qmetro/fisher_bounds.h"

namespace qmetro {

enum class OutputFormat { kCsv, kJson };

struct AlphaSqRange {
  double start = 0.0;
  double stop = 0.0;
  int steps = 1;  // number of grid points, endpoints included
};

struct SweepSpec {
  std::vector<Protocol> protocols;
  AlphaSqRange alpha_sq;
  std::vector<int> d;
  std::vector<int> n;
  std::vector<int> l;
  std::optional<int> cutoff;
  std::string output_path;
  OutputFormat format = OutputFormat::kCsv;

  /// Throws SpecValidationError naming the offending field.
  void validate() const;
};

struct SweepRow {
  Protocol protocol;
  int l = 0;
  int n = 0;
  int d = 1;
  double alpha_sq = 0.0;
  std::optional<double> qcrb;
  std::optional<double> qcrb_trace_inverse;
  std::optional<double> mean_photon;
  std::optional<double> hl;
  std::optional<double> sql;
  std::vector<std::string> flags;
};

/// Grid values rounded to 1e-9 so that decimal steps print cleanly.
std::vector<double> alpha_sq_grid(const AlphaSqRange& range);

Protocol parse_protocol(std::string_view name);
OutputFormat parse_format(std::string_view name);

/// One grid point. Library errors become flags with empty value columns.
SweepRow evaluate_point(Protocol protocol, int l, int n, int d, double alpha_sq,
                        std::optional<int> cutoff = {});

/// Rows ordered by (protocol, l, n, d, alpha_sq).
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads = 0);

std::string format_csv(const std::vector<SweepRow>& rows);
std::string format_json(const std::vector<SweepRow>& rows);
std::string format_rows(const std::vector<SweepRow>& rows, OutputFormat format);

/// Writes text to path, or to stdout when path is empty or "-".
void write_output(const std::string& path, const std::string& text);

const std::vector<std::string>& preset_names();
std::vector<SweepRow> run_preset(std::string_view name, int threads = 0);

/// Oracle-vs-closed-form comparison report as JSON text.
std::string run_diagnostics(int threads = 0);

}  // namespace qmetro

#endif  // QMETRO_SWEEP_H_
