/**
 * Copyright 2026 The accelsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


// Fits the latency constants to measured latencies and writes the
// calibration record.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "accelsim/calibration_fit.hpp"
#include "accelsim/error.hpp"
#include "accelsim/workloads.hpp"

int main(int argc, char **argv) {
  CLI::App app{"Fit the accelsim calibration record"};
  std::string targets = "data/measured_latency.csv";
  std::string configs = "data/configs";
  std::string start;
  std::string out;
  std::vector<std::string> frozen;
  bool evaluate_only = false;
  app.add_option("--targets", targets, "CSV of measured latencies")->check(CLI::ExistingFile);
  app.add_option("--configs", configs, "directory holding the config files named in the CSV")
      ->check(CLI::ExistingDirectory);
  app.add_option("--start", start, "calibration record to start from")->check(CLI::ExistingFile);
  app.add_flag("--evaluate", evaluate_only, "report the error of the start record without fitting");
  app.add_option("--freeze", frozen, "constants kept at their start value");
  app.add_option("--out", out, "where to write the fitted record");
  CLI11_PARSE(app, argc, argv);

  try {
    using namespace accelsim;
    std::map<std::string, graph::NetworkGraph> nets;
    for (auto name : workloads::kNames) nets.emplace(std::string(name), workloads::by_name(name));
    const auto cells = perf::load_latency_targets(targets, configs);
    const perf::Calibration init = start.empty() ? perf::Calibration{} : perf::load_calibration(start);
    const perf::FitReport fit =
        evaluate_only ? perf::evaluate_fit(init, nets, cells) : perf::fit_calibration(init, nets, cells, frozen);
    std::cout << perf::format_fit(fit) << "\n" << perf::format_calibration(fit.calib);
    if (!out.empty()) {
      std::ofstream f(out);
      f << "# Fitted to " << targets << " (mean relative error " << fit.mean_rel_error << ")\n"
        << perf::format_calibration(fit.calib);
      if (!f) throw accelsim::Error(accelsim::ErrorKind::kIo, "cannot write " + out);
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
