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

#include "qmetro/sweep.h"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <nlohmann/json.hpp>
#include <thread>

#include "qmetro/errors.h"
#include "qmetro/fock_oracle.h"
#include "qmetro/homodyne.h"

namespace qmetro {
namespace {

using nlohmann::json;

constexpr double kCompatibilityTolerance = 1e-10;

// Evaluates fn(0..count-1) on worker threads; results keep index order.
template <typename T>
std::vector<T> parallel_map(std::size_t count, int threads,
                            const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(count);
  unsigned workers = threads > 0 ? static_cast<unsigned>(threads)
                                 : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (std::size_t i = next++; i < count && !failed; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

template <typename F>
void attempt(SweepRow& row, F&& f) {
  try {
    f();
  } catch (const DegenerateStateError&) {
    row.flags.push_back("degenerate_state");
  } catch (const PsdViolationError&) {
    row.flags.push_back("psd_violation");
  } catch (const DivisionByZeroError&) {
    row.flags.push_back("division_by_zero");
  } catch (const SingularMatrixError&) {
    row.flags.push_back("singular_matrix");
  } catch (const ZeroDerivativeError&) {
    row.flags.push_back("zero_derivative");
  } catch (const TruncationError&) {
    row.flags.push_back("truncation");
  } catch (const GridInadequateError&) {
    row.flags.push_back("grid_inadequate");
  } catch (const NegativityError&) {
    row.flags.push_back("negativity");
  }
}

void dedupe(std::vector<std::string>& flags) {
  std::vector<std::string> out;
  for (auto& f : flags)
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  flags = std::move(out);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double round12(double v) { return std::strtod(fmt(v).c_str(), nullptr); }

json num(const std::optional<double>& v) {
  return v ? json(round12(*v)) : json(nullptr);
}

json num(double v) { return std::isfinite(v) ? json(round12(v)) : json(nullptr); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string join(const std::vector<std::string>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += v[i];
  }
  return s;
}

void fill_photon_columns(SweepRow& row, double mean) {
  row.mean_photon = mean;
  if (mean > 0.0) {
    row.hl = heisenberg_limit(mean);
    row.sql = standard_quantum_limit(mean);
  } else {
    row.flags.push_back("zero_photons");
  }
}

}  // namespace

void SweepSpec::validate() const {
  if (protocols.empty()) throw SpecValidationError("protocols", "must not be empty");
  for (std::size_t i = 0; i < protocols.size(); ++i)
    for (std::size_t j = i + 1; j < protocols.size(); ++j)
      if (protocols[i] == protocols[j])
        throw SpecValidationError("protocols", "contains duplicates");
  if (alpha_sq.steps < 1) throw SpecValidationError("alpha_sq", "steps must be >= 1");
  if (!std::isfinite(alpha_sq.start) || !std::isfinite(alpha_sq.stop))
    throw SpecValidationError("alpha_sq", "bounds must be finite");
  if (alpha_sq.start < 0.0) throw SpecValidationError("alpha_sq", "start must be >= 0");
  if (alpha_sq.stop < alpha_sq.start)
    throw SpecValidationError("alpha_sq", "stop must be >= start");
  if (d.empty()) throw SpecValidationError("d", "must not be empty");
  for (int v : d)
    if (v < 1) throw SpecValidationError("d", "values must be >= 1");
  if (n.empty()) throw SpecValidationError("n", "must not be empty");
  for (int v : n)
    if (v < 0) throw SpecValidationError("n", "values must be >= 0");
  if (l.empty()) throw SpecValidationError("l", "must not be empty");
  for (int v : l)
    if (v != 0 && v != 1) throw SpecValidationError("l", "values must be 0 or 1");
  if (cutoff && *cutoff < 0) throw SpecValidationError("cutoff", "must be >= 0");
}

std::vector<double> alpha_sq_grid(const AlphaSqRange& range) {
  std::vector<double> g;
  if (range.steps < 1) return g;
  const double step =
      range.steps == 1 ? 0.0 : (range.stop - range.start) / (range.steps - 1);
  for (int i = 0; i < range.steps; ++i) {
    const double v = i + 1 == range.steps && range.steps > 1
                         ? range.stop
                         : range.start + i * step;
    g.push_back(std::round(v * 1e9) / 1e9);
  }
  return g;
}

Protocol parse_protocol(std::string_view name) {
  for (Protocol p : {Protocol::kIndependent, Protocol::kLinear, Protocol::kNonlinear,
                     Protocol::kHomodyne, Protocol::kOracleTraceInverse}) {
    if (protocol_name(p) == name) return p;
  }
  throw SpecValidationError("protocols", "unknown protocol '" + std::string(name) + "'");
}

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "json") return OutputFormat::kJson;
  throw SpecValidationError("format", "expected csv or json, got '" +
                                          std::string(name) + "'");
}

SweepRow evaluate_point(Protocol protocol, int l, int n, int d, double alpha_sq,
                        std::optional<int> cutoff) {
  SweepRow row{protocol, l, n, d, alpha_sq, {}, {}, {}, {}, {}, {}};
  const Complex alpha(std::sqrt(alpha_sq), 0.0);
  const StateParams params{alpha, n, d, l};
  params.validate();
  fill_photon_columns(row, mean_photon_pacs(alpha, n));

  switch (protocol) {
    case Protocol::kIndependent:
      attempt(row, [&] {
        const double f = qfi_independent(alpha, n, l);
        row.qcrb = qcrb_independent(alpha, n, l, d).value;
        row.qcrb_trace_inverse =
            qcrb_trace_inverse(FisherMatrix::structured(d, f, 0.0)).value;
      });
      break;
    case Protocol::kLinear:
      attempt(row, [&] { row.qcrb = qcrb_linear(alpha, n, d, l).value; });
      attempt(row, [&] {
        row.qcrb_trace_inverse = qcrb_trace_inverse(qfim_linear(alpha, n, d, l)).value;
      });
      break;
    case Protocol::kNonlinear:
      attempt(row, [&] { row.qcrb = qcrb_nonlinear(alpha, n, d, l).value; });
      break;
    case Protocol::kHomodyne:
      attempt(row, [&] {
        const MarginalParams mp{params, 0.0};
        row.qcrb = variance_homodyne(mp, default_mode_grid(params)).value;
      });
      break;
    case Protocol::kOracleTraceInverse:
      attempt(row, [&] {
        const BranchProductState state = ghz_pacs_state(params, cutoff);
        const auto gens = number_generators(1, d);
        if (compatibility_check(state, gens) > kCompatibilityTolerance)
          row.flags.push_back("incompatible_generators");
        const double v = qcrb_trace_inverse(qfim_numeric(state, gens)).value;
        row.qcrb = v;
        row.qcrb_trace_inverse = v;
      });
      break;
  }
  dedupe(row.flags);
  return row;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads) {
  spec.validate();
  std::vector<Protocol> protocols = spec.protocols;
  std::vector<int> ls = spec.l, ns = spec.n, ds = spec.d;
  std::sort(protocols.begin(), protocols.end());
  for (auto* v : {&ls, &ns, &ds}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  const std::vector<double> xs = alpha_sq_grid(spec.alpha_sq);

  struct Task {
    Protocol protocol;
    int l, n, d;
    double x;
  };
  std::vector<Task> tasks;
  for (Protocol p : protocols)
    for (int l : ls)
      for (int n : ns)
        for (int d : ds)
          for (double x : xs) tasks.push_back({p, l, n, d, x});

  return parallel_map<SweepRow>(tasks.size(), threads, [&](std::size_t i) {
    const Task& t = tasks[i];
    return evaluate_point(t.protocol, t.l, t.n, t.d, t.x, spec.cutoff);
  });
}

std::string format_csv(const std::vector<SweepRow>& rows) {
  std::string out = "protocol,l,n,d,alpha_sq,qcrb,qcrb_trace_inverse,mean_photon,hl,sql,flags\n";
  const auto opt = [](const std::optional<double>& v) { return v ? fmt(*v) : std::string(); };
  for (const auto& r : rows) {
    out += csv_field(std::string(protocol_name(r.protocol)));
    out += ',' + std::to_string(r.l) + ',' + std::to_string(r.n) + ',' +
           std::to_string(r.d) + ',' + fmt(r.alpha_sq) + ',' + opt(r.qcrb) + ',' +
           opt(r.qcrb_trace_inverse) + ',' + opt(r.mean_photon) + ',' + opt(r.hl) +
           ',' + opt(r.sql) + ',' + csv_field(join(r.flags, ';')) + "\n";
  }
  return out;
}

std::string format_json(const std::vector<SweepRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"protocol", protocol_name(r.protocol)},
                   {"l", r.l},
                   {"n", r.n},
                   {"d", r.d},
                   {"alpha_sq", num(r.alpha_sq)},
                   {"qcrb", num(r.qcrb)},
                   {"qcrb_trace_inverse", num(r.qcrb_trace_inverse)},
                   {"mean_photon", num(r.mean_photon)},
                   {"hl", num(r.hl)},
                   {"sql", num(r.sql)},
                   {"flags", r.flags}});
  }
  return arr.dump(2) + "\n";
}

std::string format_rows(const std::vector<SweepRow>& rows, OutputFormat format) {
  return format == OutputFormat::kJson ? format_json(rows) : format_csv(rows);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("failed to write to standard output");
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  f.close();
  if (!f) throw IoError("failed writing '" + path + "'");
}

namespace {

struct PresetDef {
  std::string name;
  std::function<std::vector<SweepRow>(int)> build;
};

std::vector<int> range_inclusive(int lo, int hi) {
  std::vector<int> v;
  for (int i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

const std::vector<int> kFigureOrders = {0, 1, 4, 7, 10};
const AlphaSqRange kFigureAlphaSq{0.1, 8.0, 80};

SweepSpec figure_spec(Protocol p, char panel) {
  SweepSpec s;
  s.protocols = {p};
  s.n = kFigureOrders;
  const bool alpha_axis = panel == 'a' || panel == 'b';
  s.l = {panel == 'a' || panel == 'c' ? 0 : 1};
  s.alpha_sq = alpha_axis ? kFigureAlphaSq : AlphaSqRange{4.0, 4.0, 1};
  s.d = alpha_axis ? std::vector<int>{5} : range_inclusive(1, 12);
  return s;
}

std::vector<SweepRow> reference_rows(const std::vector<double>& xs,
                                     const std::vector<int>& ds, int threads) {
  struct Task {
    ReferenceState s;
    int d;
    double x;
  };
  std::vector<Task> tasks;
  for (ReferenceState s : {ReferenceState::kEcs, ReferenceState::kNoon})
    for (int d : ds)
      for (double x : xs) tasks.push_back({s, d, x});
  const auto bounds = parallel_map<ReferenceBounds>(
      tasks.size(), threads,
      [&](std::size_t i) { return reference_bounds(tasks[i].s, tasks[i].x, tasks[i].d); });

  std::vector<SweepRow> rows;
  for (Protocol p : {Protocol::kIndependent, Protocol::kLinear, Protocol::kNonlinear}) {
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      const ReferenceBounds& b = bounds[i];
      SweepRow row{p, 0, b.photons, tasks[i].d, tasks[i].x, {}, {}, {}, {}, {}, {}};
      row.qcrb = p == Protocol::kIndependent ? b.independent
                 : p == Protocol::kLinear    ? b.linear
                                             : b.nonlinear;
      row.qcrb_trace_inverse = row.qcrb;
      fill_photon_columns(row, b.mean_photon);
      row.flags.push_back("reference_construction");
      row.flags.push_back(std::string(reference_name(tasks[i].s)));
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<SweepRow> section4_rows() {
  std::vector<SweepRow> rows;
  for (const auto& [x, n] : {std::pair{4.0, 4}, std::pair{10.0, 10}}) {
    const Complex alpha(std::sqrt(x), 0.0);
    SweepRow row{Protocol::kIndependent, 0, n, 1, x, {}, {}, {}, {}, {}, {}};
    row.qcrb = std::sqrt(qcrb_independent(alpha, n, 0, 1).value);
    fill_photon_columns(row, mean_photon_pacs(alpha, n));
    row.flags.push_back("std_dev");
    rows.push_back(std::move(row));
  }
  return rows;
}

const std::vector<PresetDef>& presets() {
  static const std::vector<PresetDef> defs = [] {
    std::vector<PresetDef> v;
    const std::pair<int, Protocol> figs[] = {{1, Protocol::kIndependent},
                                             {2, Protocol::kLinear},
                                             {3, Protocol::kNonlinear}};
    for (const auto& [fig, protocol] : figs) {
      for (char panel : {'a', 'b', 'c', 'd'}) {
        const SweepSpec spec = figure_spec(protocol, panel);
        v.push_back({"fig" + std::to_string(fig) + panel,
                     [spec](int threads) { return run_sweep(spec, threads); }});
      }
    }
    v.push_back({"fig7", [](int threads) {
                   return reference_rows(alpha_sq_grid(kFigureAlphaSq), {5}, threads);
                 }});
    v.push_back({"fig8", [](int threads) {
                   return reference_rows({4.0}, range_inclusive(1, 12), threads);
                 }});
    v.push_back({"section4_anchors", [](int) { return section4_rows(); }});
    return v;
  }();
  return defs;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& p : presets()) v.push_back(p.name);
    return v;
  }();
  return names;
}

std::vector<SweepRow> run_preset(std::string_view name, int threads) {
  for (const auto& p : presets())
    if (p.name == name) return p.build(threads);
  throw SpecValidationError("preset", "unknown preset '" + std::string(name) + "'");
}

namespace {

double rel_dev(double a, double b) { return std::abs(a - b) / std::abs(b); }

json linear_vs_trace_inverse(double x, int n, int d, int l) {
  const Complex alpha(std::sqrt(x), 0.0);
  json j = {{"alpha_sq", x}, {"n", n}, {"d", d}, {"l", l}};
  const double closed = qcrb_linear(alpha, n, d, l).value;
  const FisherMatrix f = qfim_linear_unchecked(alpha, n, d, l);
  const double lo = f.eigenvalues().front();
  j["qcrb_linear"] = num(closed);
  j["min_eigenvalue"] = num(lo);
  j["psd"] = f.is_psd();
  if (f.is_psd()) {
    const double tr = qcrb_trace_inverse(f).value;
    j["trace_inverse"] = num(tr);
    j["relative_deviation"] = num(rel_dev(closed, tr));
  } else {
    j["trace_inverse"] = nullptr;
    j["relative_deviation"] = nullptr;
  }
  return j;
}

json generator_placement(double x, int n, int d, int l) {
  const Complex alpha(std::sqrt(x), 0.0);
  const BranchProductState state = ghz_pacs_state({alpha, n, d, l});
  const BghTerms t = bgh(alpha, n, d, l);
  const auto moment = [&](int mode, bool squared) {
    const ModeObservable o[] = {squared ? number_squared(mode) : number_operator(mode)};
    return branch_expectation(state, o).real();
  };
  const double bg = t.b * t.g, bh = t.b * t.h;
  const double m0_1 = moment(0, false), m0_2 = moment(0, true);
  const double m1_1 = moment(1, false), m1_2 = moment(1, true);
  return {{"alpha_sq", x},
          {"n", n},
          {"d", d},
          {"l", l},
          {"bg", num(bg)},
          {"bh", num(bh)},
          {"mode0_n2", num(m0_2)},
          {"mode0_n", num(m0_1)},
          {"mode1_n2", num(m1_2)},
          {"mode1_n", num(m1_1)},
          {"mode0_deviation_g", num(rel_dev(m0_2, bg))},
          {"mode0_deviation_h", num(rel_dev(m0_1, bh))},
          {"mode1_deviation_g", num(rel_dev(m1_2, bg))},
          {"mode1_deviation_h", num(rel_dev(m1_1, bh))}};
}

json compatibility(double x, int n, int d, int l) {
  const BranchProductState state = ghz_pacs_state({Complex(std::sqrt(x), 0.0), n, d, l});
  return {{"alpha_sq", x},
          {"n", n},
          {"d", d},
          {"l", l},
          {"linear", num(compatibility_check(state, number_generators(0, d + 1)))},
          {"nonlinear",
           num(compatibility_check(state, number_generators(0, d + 1, true)))}};
}

json independent_oracle(double x, int n, int l) {
  const Complex alpha(std::sqrt(x), 0.0);
  const ModeObservable g[] = {number_operator(0)};
  const double oracle = qfim_numeric(ghz_pacs_state({alpha, n, 2, l}), g)(0, 0);
  const double closed = qfi_independent(alpha, n, l);
  return {{"alpha_sq", x},
          {"n", n},
          {"l", l},
          {"qfi_independent", num(closed)},
          {"oracle", num(oracle)},
          {"relative_deviation", num(rel_dev(closed, oracle))}};
}

json marginal_report(double x, int n, int d, int l) {
  const StateParams s{Complex(std::sqrt(x), 0.0), n, d, l};
  json j = {{"alpha_sq", x}, {"n", n}, {"d", d}, {"l", l}};
  j["joint_normalization"] =
      num(joint_moments(ghz_quadrature_state(s), default_mode_grid(s)).norm);
  const MarginalParams zero{s, 0.0};
  const MarginalParams small{s, 0.01};
  const QuadratureGrid slice = default_slice_grid(s);
  const auto guarded = [](auto f) -> json {
    try {
      return num(f());
    } catch (const GridInadequateError&) {
      return "grid_inadequate";
    }
  };
  j["slice_integral_exact"] = guarded([&] { return slice_integral(zero, slice); });
  j["slice_integral_first_order"] = guarded(
      [&] { return slice_integral(zero, slice, MarginalForm::kFirstOrder); });
  double lo = INFINITY;
  for (double p : slice.points()) lo = std::min(lo, marginal_first_order(p, small));
  j["first_order_min_phi_0.01"] = num(lo);
  j["signal_mean_slice_phi_0.01"] = guarded([&] { return signal_mean(small, slice); });
  j["signal_mean_joint_phi_0.01"] =
      guarded([&] { return joint_signal_mean(small, default_mode_grid(s)); });
  if (n >= 1) {
    j["variance_small_alpha"] = num(variance_small_alpha(s));
    j["variance_large_alpha"] = num(variance_large_alpha(s));
  } else {
    j["variance_small_alpha"] = nullptr;
    j["variance_large_alpha"] = nullptr;
  }
  return j;
}

template <typename F>
json grid_section(const std::vector<std::array<double, 4>>& points, int threads, F f) {
  const auto items = parallel_map<json>(points.size(), threads, [&](std::size_t i) {
    const auto& p = points[i];
    return f(p[0], static_cast<int>(p[1]), static_cast<int>(p[2]),
             static_cast<int>(p[3]));
  });
  return json(items);
}

std::vector<std::array<double, 4>> product_grid(const std::vector<double>& xs,
                                                const std::vector<int>& ns,
                                                const std::vector<int>& ds) {
  std::vector<std::array<double, 4>> g;
  for (double x : xs)
    for (int n : ns)
      for (int d : ds)
        for (int l : {0, 1}) g.push_back({x, double(n), double(d), double(l)});
  return g;
}

}  // namespace

std::string run_diagnostics(int threads) {
  json report;
  report["linear_vs_trace_inverse"] =
      grid_section(product_grid({0.5, 1.0, 2.0, 4.0, 8.0}, {0, 1, 4, 7}, {2, 5}),
                   threads, linear_vs_trace_inverse);
  report["generator_placement"] = grid_section(
      product_grid({0.5, 1.0, 4.0}, {0, 1, 4}, {2, 5}), threads, generator_placement);
  report["compatibility"] = grid_section(
      product_grid({0.5, 1.0, 4.0}, {0, 1, 4}, {2, 5}), threads, compatibility);
  report["independent_oracle"] =
      grid_section(product_grid({0.5, 1.0, 4.0}, {0, 1, 4}, {2}), threads,
                   [](double x, int n, int, int l) { return independent_oracle(x, n, l); });
  report["marginal"] = grid_section(product_grid({0.25, 1.0, 4.0}, {0, 1, 3}, {1, 2}),
                                    threads, marginal_report);
  return report.dump(2) + "\n";
}

}  // namespace qmetro
