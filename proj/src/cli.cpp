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


#include "accelsim/cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <optional>

#include "accelsim/config.hpp"
#include "accelsim/dfp.hpp"
#include "accelsim/dse.hpp"
#include "accelsim/graph.hpp"
#include "accelsim/graph_io.hpp"
#include "accelsim/kv_file.hpp"
#include "accelsim/perf.hpp"
#include "accelsim/tensor_io.hpp"

namespace accelsim::cli {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::string net;
  std::string config;
  std::string input;
  std::string out_dir;
  std::vector<std::string> emit;
  std::string calibration;
  std::string csv;
  std::string sweep;
  std::vector<std::string> inputs;
  std::optional<int> frac;
};

perf::Calibration calibration(const Options &o) {
  return o.calibration.empty() ? perf::Calibration{} : perf::load_calibration(o.calibration);
}

float max_abs(std::span<const float> v) {
  float m = 0;
  for (float x : v) m = std::max(m, std::fabs(x));
  return m;
}

int pick_frac(std::span<const float> v, const Options &o) {
  return o.frac ? *o.frac : dfp::choose_frac_bits(v);
}

std::vector<std::int8_t> quantize_all(std::span<const float> v, int frac) {
  std::vector<std::int8_t> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [&](float x) { return dfp::quantize_value(x, frac); });
  return out;
}

// Node ids may contain '/', which would create subdirectories.
std::string file_name(const std::string &id) {
  std::string s = id;
  std::replace(s.begin(), s.end(), '/', '_');
  return s;
}

void write_text(const fs::path &path, const std::string &text) {
  write_file(path, std::span(reinterpret_cast<const std::uint8_t *>(text.data()), text.size()));
}

int cmd_quantize(const Options &o, std::ostream &out) {
  if (o.frac) dfp::validate(dfp::DfpScheme{*o.frac, *o.frac, *o.frac, *o.frac});
  fs::create_directories(o.out_dir);
  for (const fs::path in : o.inputs) {
    const std::string name = in.string();
    switch (detect_file_kind(in)) {
      case FileKind::kTensor: {
        const AnyTensor t = load_any_tensor(in);
        if (!std::holds_alternative<FTensor3>(t)) fail(ErrorKind::kParse, name + ": already quantized");
        const auto &f = std::get<FTensor3>(t);
        int frac = 0;
        try {
          frac = pick_frac(f.values(), o);
        } catch (const Error &e) {
          fail(e.kind(), name + ": " + e.what());
        }
        const fs::path dst = fs::path(o.out_dir) / (in.stem().string() + ".qt3");
        save_tensor(dfp::quantize(f, frac), dst);
        out << fmt::format("{}: tensor {} max_abs={:.6g} frac_bits={} -> {}\n", name, to_string(f.shape()),
                           max_abs(f.values()), frac, dst.string());
        break;
      }
      case FileKind::kFloatFilterBank: {
        const FFilterBank b = load_float_filter_bank(in);
        int wf = 0, bf = 0;
        try {
          wf = pick_frac(b.weights(), o);
          bf = pick_frac(b.biases(), o);
        } catch (const Error &e) {
          fail(e.kind(), name + ": " + e.what());
        }
        const fs::path dst = fs::path(o.out_dir) / (in.stem().string() + ".qfb");
        save_filter_bank(QFilterBank(b.geom(), quantize_all(b.weights(), wf), quantize_all(b.biases(), bf), wf, bf),
                         dst);
        out << fmt::format("{}: filter bank {} weights max_abs={:.6g} frac_bits={} biases max_abs={:.6g} frac_bits={} -> {}\n",
                           name, to_string(b.geom()), max_abs(b.weights()), wf, max_abs(b.biases()), bf,
                           dst.string());
        break;
      }
      case FileKind::kFilterBank:
        fail(ErrorKind::kParse, name + ": already quantized");
      case FileKind::kUnknown:
        read_file(in);  // reports unreadable files as io errors
        fail(ErrorKind::kParse, name + ": not a float tensor or float filter bank file");
    }
  }
  return kOk;
}

int cmd_validate(const Options &o, std::ostream &out, std::ostream &err) {
  const auto net = graph::load_network(o.net);
  const auto cfg = load_config(o.config);
  const auto report = graph::validate(net, cfg, calibration(o));
  out << report.format();
  if (!report.ok()) {
    err << fmt::format("error: network {} does not fit {}\n", net.name, o.config);
    return kValidationError;
  }
  out << fmt::format("network {} fits {}\n", net.name, o.config);
  return kOk;
}

int cmd_estimate(const Options &o, std::ostream &out) {
  const auto net = graph::load_network(o.net);
  const auto cfg = load_config(o.config);
  const auto calib = calibration(o);
  const auto report = graph::network_perf(net, cfg, calib);
  out << graph::format_report(report, perf::estimate_resources(cfg, calib));
  return kOk;
}

int cmd_run(const Options &o, std::ostream &out) {
  const fs::path net_path = o.net;
  const auto net = graph::load_network(net_path);
  const auto cfg = load_config(o.config);
  const auto calib = calibration(o);
  const QTensor3 input = load_tensor(o.input);
  const auto params = graph::load_params(net, net_path.parent_path());
  const auto result = graph::run_network(net, cfg, input, params, calib, o.emit);
  const std::string report = graph::format_report(result.perf, perf::estimate_resources(cfg, calib));
  fs::create_directories(o.out_dir);
  for (const auto &[id, tensor] : result.outputs) {
    const fs::path dst = fs::path(o.out_dir) / (file_name(id) + ".qt3");
    save_tensor(tensor, dst);
    out << fmt::format("wrote {}\n", dst.string());
  }
  write_text(fs::path(o.out_dir) / "report.txt", report);
  out << report;
  return kOk;
}

int cmd_sweep(const Options &o, std::ostream &out) {
  dse::SweepSpec spec = dse::load_sweep(o.sweep);
  if (!o.calibration.empty()) spec.calib = perf::load_calibration(o.calibration);
  const auto points = dse::enumerate(spec);
  const std::string csv = dse::to_csv(points, spec);
  if (o.csv.empty()) {
    out << csv << "\n";
  } else {
    write_text(o.csv, csv);
    out << fmt::format("wrote {} rows to {}\n", points.size(), o.csv);
  }
  out << dse::format_summary(points, spec);
  return kOk;
}

}  // namespace

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse:
    case ErrorKind::kFormat:
    case ErrorKind::kCorruption:
    case ErrorKind::kDomain:
      return kParseError;
    case ErrorKind::kValidation:
    case ErrorKind::kConfigTooSmall:
    case ErrorKind::kShape:
    case ErrorKind::kScheme:
    case ErrorKind::kNotApplicable:
    case ErrorKind::kSize:
      return kValidationError;
    case ErrorKind::kLoad:
    case ErrorKind::kIo:
      return kLoadError;
    case ErrorKind::kBounds:
    case ErrorKind::kOverflow:
      return kInternalError;
  }
  return kInternalError;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Accelerator simulator and performance model"};
  app.name("accelsim");
  app.require_subcommand(1);
  Options o;

  auto *quantize = app.add_subcommand("quantize", "Quantize float tensors and filter banks");
  quantize->add_option("inputs", o.inputs, "float tensor or filter bank files")->required();
  quantize->add_option("--out-dir", o.out_dir, "output directory")->required();
  quantize->add_option("--frac", o.frac, "fixed exponent instead of the max-abs rule");

  auto *validate = app.add_subcommand("validate", "Check every layer against the configuration budgets");
  auto *estimate = app.add_subcommand("estimate", "Latency, resource and power report without execution");
  auto *run_cmd = app.add_subcommand("run", "Execute a network bit-exactly");
  for (auto *sub : {validate, estimate, run_cmd}) {
    sub->add_option("--net", o.net, "network file")->required();
    sub->add_option("--config", o.config, "accelerator config file")->required();
    sub->add_option("--calibration", o.calibration, "calibration record");
  }
  run_cmd->add_option("--input", o.input, "quantized input tensor")->required();
  run_cmd->add_option("--out-dir", o.out_dir, "directory for output tensors and report.txt")->required();
  run_cmd->add_option("--emit", o.emit, "also write this node's output (repeatable)");

  auto *sweep = app.add_subcommand("sweep", "Design-space sweep with Pareto summary");
  sweep->add_option("--sweep", o.sweep, "sweep file")->required();
  sweep->add_option("--csv", o.csv, "write the CSV here instead of stdout");
  sweep->add_option("--calibration", o.calibration, "calibration record, overriding the sweep file's");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*quantize) return cmd_quantize(o, out);
    if (*validate) return cmd_validate(o, out, err);
    if (*estimate) return cmd_estimate(o, out);
    if (*run_cmd) return cmd_run(o, out);
    if (*sweep) return cmd_sweep(o, out);
  } catch (const Error &e) {
    err << fmt::format("error: {}: {}\n", to_string(e.kind()), e.what());
    return exit_code(e.kind());
  } catch (const fs::filesystem_error &e) {
    err << fmt::format("error: {}\n", e.what());
    return kLoadError;
  } catch (const std::exception &e) {
    err << fmt::format("internal error: {}\n", e.what());
    return kInternalError;
  }
  return kUsage;
}

}  // namespace accelsim::cli
