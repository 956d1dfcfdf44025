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

// qmetro: Cramer-Rao bound sweeps for GHZ-type photon-added coherent states.
//
//   qmetro sweep --protocols linear,nonlinear --alpha-sq 0.1:8:80 --d 5 --n 0,7
//   qmetro preset fig2a --out fig2a.csv
//   qmetro diagnostics --out report.json
//
// Exit codes: 0 success, 1 I/O failure, 2 invalid specification.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qmetro/errors.h"
#include "qmetro/sweep.h"

namespace {

constexpr int kExitIo = 1;
constexpr int kExitSpec = 2;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

int parse_int(const std::string& field, const std::string& text) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size())
    throw qmetro::SpecValidationError(field, "not an integer: '" + text + "'");
  return v;
}

double parse_double(const std::string& field, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size())
    throw qmetro::SpecValidationError(field, "not a number: '" + text + "'");
  return v;
}

std::vector<int> parse_int_list(const std::string& field, const std::string& text) {
  std::vector<int> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_int(field, item));
  return out;
}

qmetro::AlphaSqRange parse_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() == 1) {
    const double v = parse_double("alpha_sq", parts[0]);
    return {v, v, 1};
  }
  if (parts.size() != 3)
    throw qmetro::SpecValidationError("alpha_sq", "expected start:stop:steps");
  return {parse_double("alpha_sq", parts[0]), parse_double("alpha_sq", parts[1]),
          parse_int("alpha_sq", parts[2])};
}

// key=value lines; '#' starts a comment.
std::map<std::string, std::string> read_config(const char* path) {
  std::map<std::string, std::string> cfg;
  if (path == nullptr || *path == '\0') return cfg;
  std::ifstream f(path);
  if (!f) throw qmetro::IoError(std::string("cannot read config file '") + path + "'");
  std::string line;
  int number = 0;
  while (std::getline(f, line)) {
    ++number;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw qmetro::SpecValidationError("config",
                                        "line " + std::to_string(number) + " lacks '='");
    cfg[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return cfg;
}

struct Options {
  std::string protocols = "independent,linear,nonlinear";
  std::string alpha_sq = "0.1:8:80";
  std::string d = "5";
  std::string n = "0";
  std::string l = "0";
  std::string cutoff;
  std::string out;
  std::string format = "csv";
  std::string preset;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum Cramer-Rao bounds for GHZ-type photon-added coherent states"};
  app.require_subcommand(1);
  Options o;

  struct Flag {
    const char* name;
    const char* key;
    std::string* target;
    const char* help;
  };
  const Flag flags[] = {
      {"--protocols", "protocols", &o.protocols,
       "Comma-separated subset of independent,linear,nonlinear,homodyne,oracle"},
      {"--alpha-sq", "alpha-sq", &o.alpha_sq, "|alpha|^2 grid as start:stop:steps"},
      {"--d", "d", &o.d, "Comma-separated parameter counts"},
      {"--n", "n", &o.n, "Comma-separated photon-addition orders"},
      {"--l", "l", &o.l, "Comma-separated parities (0 or 1)"},
      {"--cutoff", "cutoff", &o.cutoff, "Fock cutoff for oracle rows"},
  };

  auto* sweep = app.add_subcommand("sweep", "Evaluate bounds over a parameter grid");
  std::map<std::string, CLI::Option*> given;
  for (const auto& f : flags)
    given[f.key] = sweep->add_option(f.name, *f.target, f.help);

  auto* preset = app.add_subcommand("preset", "Reproduce a figure data set");
  preset->add_option("name", o.preset, "Preset name")->required();
  auto* diagnostics =
      app.add_subcommand("diagnostics", "Oracle versus closed-form comparison report");

  for (auto* sub : {sweep, preset}) {
    auto* out = sub->add_option("--out", o.out, "Output path (default stdout)");
    auto* fmt = sub->add_option("--format", o.format, "csv or json");
    if (sub == sweep) {
      given["out"] = out;
      given["format"] = fmt;
    }
  }
  diagnostics->add_option("--out", o.out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitSpec;
  }

  try {
    if (*sweep) {
      const auto cfg = read_config(std::getenv("QMETRO_CONFIG"));
      std::map<std::string, std::string*> targets = {{"out", &o.out},
                                                     {"format", &o.format}};
      for (const auto& f : flags) targets[f.key] = f.target;
      for (const auto& [key, value] : cfg) {
        const auto t = targets.find(key);
        if (t == targets.end())
          throw qmetro::SpecValidationError("config", "unknown key '" + key + "'");
        if (given.at(key)->count() == 0) *t->second = value;
      }

      qmetro::SweepSpec spec;
      for (const auto& p : split(o.protocols, ','))
        spec.protocols.push_back(qmetro::parse_protocol(p));
      spec.alpha_sq = parse_range(o.alpha_sq);
      spec.d = parse_int_list("d", o.d);
      spec.n = parse_int_list("n", o.n);
      spec.l = parse_int_list("l", o.l);
      if (!trim(o.cutoff).empty()) spec.cutoff = parse_int("cutoff", trim(o.cutoff));
      spec.output_path = o.out;
      spec.format = qmetro::parse_format(o.format);
      spec.validate();
      qmetro::write_output(spec.output_path,
                           qmetro::format_rows(qmetro::run_sweep(spec), spec.format));
    } else if (*preset) {
      const auto format = qmetro::parse_format(o.format);
      qmetro::write_output(o.out, qmetro::format_rows(qmetro::run_preset(o.preset), format));
    } else if (*diagnostics) {
      qmetro::write_output(o.out, qmetro::run_diagnostics());
    }
  } catch (const qmetro::IoError& e) {
    std::cerr << "qmetro: " << e.what() << "\n";
    return kExitIo;
  } catch (const qmetro::Error& e) {
    std::cerr << "qmetro: " << e.what() << "\n";
    return kExitSpec;
  }
  return 0;
}
