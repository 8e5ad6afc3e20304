// SPDX-License-Identifier: Apache-2.0
//
// irspca: simulation of IRS-aided pilot contamination attacks and countermeasures
// Copyright (C) 2026 The irspca authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "irspca.hpp"

namespace {

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> trials;
  std::optional<unsigned> workers;
  std::string out;
  std::vector<std::string> sets;
  std::string sweep;
  int figure = 0;
};

irspca::ExperimentSpec build_spec(const std::string &command, const Options &opt) {
  irspca::ExperimentSpec spec;
  if (command == "figure") {
    spec = irspca::figure_spec(opt.figure);
  } else {
    spec.kind = irspca::parse_experiment_kind(command);
  }
  if (!opt.config_path.empty()) {
    irspca::apply_settings(spec.base, irspca::read_key_value_file(opt.config_path));
  }
  for (const std::string &s : opt.sets) {
    const irspca::KeyValue kv = irspca::split_assignment(s);
    irspca::apply_setting(spec.base, kv.key, kv.value);
  }
  if (opt.seed) {
    spec.base.scenario.seed = *opt.seed;
  }
  if (opt.trials) {
    spec.base.trials = *opt.trials;
  }
  if (opt.workers) {
    spec.base.workers = *opt.workers;
  }
  if (!opt.sweep.empty()) {
    spec.sweep = irspca::parse_sweep(opt.sweep);
  }
  return spec;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Monte Carlo simulator for IRS-aided pilot contamination attacks, their quickest detection and "
               "cooperative secure beamforming"};
  app.set_version_flag("--version", std::string(irspca::tool_version));
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--config", opt.config_path, "Key-value configuration file")->check(CLI::ExistingFile);
  app.add_option("--seed", opt.seed, "Master seed");
  app.add_option("--trials", opt.trials, "Monte Carlo trials (blocks for snr)")->check(CLI::PositiveNumber);
  app.add_option("--workers", opt.workers, "Worker threads")->check(CLI::Range(1u, 4096u));
  app.add_option("--out", opt.out, "CSV output path (stdout when omitted)");
  app.add_option("--set", opt.sets, "Override one setting, key=value (repeatable)");
  app.add_option("--sweep", opt.sweep, "Sweep one setting, name=v1,v2,...");

  for (const char *name : {"calibrate", "arl2fa", "add", "wawtg", "snr"}) {
    app.add_subcommand(name, std::string("Run the ") + name + " experiment");
  }
  CLI::App *figure = app.add_subcommand("figure", "Run a figure preset");
  figure->add_option("number", opt.figure, "Figure number")->required()->check(CLI::Range(4, 10));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? irspca::exit_ok : irspca::exit_config_error;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const irspca::ExperimentSpec spec = build_spec(command, opt);
    const irspca::ResultTable table = irspca::run_experiment(spec);
    if (opt.out.empty()) {
      irspca::write_csv(table, std::cout);
    } else {
      irspca::emit_csv(table, opt.out);
    }
  } catch (const irspca::config_error &e) {
    std::cerr << "config error: " << e.what() << '\n';
    return irspca::exit_config_error;
  } catch (const irspca::io_error &e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return irspca::exit_io_error;
  } catch (const irspca::contract_error &e) {
    std::cerr << "config error: " << e.what() << '\n';
    return irspca::exit_config_error;
  } catch (const std::exception &e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return irspca::exit_numeric_error;
  }
  return irspca::exit_ok;
}
