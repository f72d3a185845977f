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


#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <random>

#include "accelsim/dse.hpp"
#include "accelsim/error.hpp"

namespace accelsim::dse {
namespace {

const std::filesystem::path kData = std::filesystem::path(ACCELSIM_SOURCE_DIR) / "data";

// O(n²) reference: feasible points no other feasible point dominates.
std::vector<std::size_t> brute_front(const std::vector<DesignPoint> &pts, const std::vector<Objective> &obj) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!pts[i].feasible) continue;
    const auto vi = objective_vector(pts[i], obj);
    bool dominated = false;
    for (std::size_t j = 0; j < pts.size() && !dominated; ++j) {
      if (j == i || !pts[j].feasible) continue;
      const auto vj = objective_vector(pts[j], obj);
      bool le = true, lt = false;
      for (std::size_t k = 0; k < vi.size(); ++k) {
        le = le && vj[k] <= vi[k];
        lt = lt || vj[k] < vi[k];
      }
      dominated = le && lt;
    }
    if (!dominated) out.push_back(i);
  }
  return out;
}

std::vector<DesignPoint> random_points(std::size_t n, std::mt19937 &rng) {
  std::uniform_int_distribution<int> small(0, 9);
  std::uniform_int_distribution<int> pow2(0, 4);
  std::vector<DesignPoint> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    DesignPoint &p = pts[i];
    p.cfg.freq_mhz = 100 + static_cast<double>(i);
    p.cfg.icp = std::size_t{1} << pow2(rng);
    p.evaluated = true;
    p.feasible = small(rng) != 0;
    p.metrics.end_to_end_ms = {static_cast<double>(small(rng)), static_cast<double>(small(rng))};
    p.metrics.conv_ms = p.metrics.end_to_end_ms;
    p.metrics.dsp = small(rng);
    p.metrics.power_w = small(rng) * 0.5;
    p.metrics.bram_bytes = static_cast<std::uint64_t>(small(rng));
  }
  return pts;
}

class ParetoTest : public ::testing::TestWithParam<std::size_t> {};

TEST_P(ParetoTest, MatchesBruteForce) {
  std::mt19937 rng(static_cast<unsigned>(GetParam()));
  const std::vector<std::vector<Objective>> objective_sets = {
      {Objective::kLatency, Objective::kDsp},
      {Objective::kLatency, Objective::kDsp, Objective::kPower},
      {Objective::kDsp, Objective::kBram},
      {Objective::kPower},
  };
  for (const auto &obj : objective_sets) {
    auto pts = random_points(GetParam(), rng);
    const auto expected = brute_front(pts, obj);
    mark_dominance(pts, obj);
    std::vector<std::size_t> got;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (pts[i].pareto) got.push_back(i);
      EXPECT_EQ(pts[i].dominated, pts[i].feasible && !pts[i].pareto);
    }
    EXPECT_EQ(got, expected);

    const auto front = pareto_front(pts, obj);
    ASSERT_EQ(front.size(), expected.size());
    for (std::size_t i = 1; i < front.size(); ++i) {
      const auto a = objective_vector(front[i - 1], obj);
      const auto b = objective_vector(front[i], obj);
      EXPECT_TRUE(a < b || (a == b && config_less(front[i - 1].cfg, front[i].cfg)));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Sizes, ParetoTest, ::testing::Values(1, 2, 50, 1000));

TEST(Pareto, EqualVectorsAreBothKept) {
  std::vector<DesignPoint> pts(3);
  for (auto &p : pts) {
    p.evaluated = p.feasible = true;
    p.metrics.dsp = 5;
  }
  pts[1].cfg.icp = 32;
  pts[2].metrics.dsp = 6;
  const auto front = pareto_front(pts, {Objective::kDsp});
  ASSERT_EQ(front.size(), 2u);
  EXPECT_EQ(front[0].cfg.icp, 16u);
  EXPECT_EQ(front[1].cfg.icp, 32u);
}

TEST(Pareto, EmptyInput) { EXPECT_TRUE(pareto_front({}, {Objective::kDsp}).empty()); }

graph::NetworkGraph tiny_net() {
  graph::NetworkGraph net;
  net.name = "tiny";
  net.input_shape = {8, 8, 16};
  graph::Node n;
  n.id = "c1";
  n.inputs = {"input"};
  n.spec.filter = 3;
  n.spec.padding = 1;
  n.spec.co = 32;
  n.spec.relu = true;
  n.params = "c1.qfb";
  net.nodes.push_back(n);
  return net;
}

SweepSpec tiny_sweep() {
  SweepSpec s;
  s.base = implemented_config(1);
  s.workloads = {{"tiny", tiny_net()}};
  s.objectives = {Objective::kLatency, Objective::kDsp};
  return s;
}

TEST(Enumerate, CartesianOrderLastAxisFastest) {
  SweepSpec s = tiny_sweep();
  s.axes = {{"ICP", {8, 16}}, {"OCP", {4, 8, 16}}};
  const auto pts = enumerate(s);
  ASSERT_EQ(pts.size(), 6u);
  EXPECT_EQ(sweep_size(s), 6u);
  const std::size_t icp[] = {8, 8, 8, 16, 16, 16};
  const std::size_t ocp[] = {4, 8, 16, 4, 8, 16};
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(pts[i].cfg.icp, icp[i]);
    EXPECT_EQ(pts[i].cfg.ocp, ocp[i]);
  }
  // PE_DSP = 8 exceeds OCP = 4.
  EXPECT_FALSE(pts[0].evaluated);
  EXPECT_FALSE(pts[0].feasible);
  EXPECT_NE(pts[0].note.find("invalid config"), std::string::npos);
  EXPECT_TRUE(pts[1].feasible);
}

TEST(Enumerate, AxesCrossEveryExplicitConfig) {
  SweepSpec s = tiny_sweep();
  s.configs = {implemented_config(1), implemented_config(4)};
  s.axes = {{"FREQ", {100, 200}}};
  const auto pts = enumerate(s);
  ASSERT_EQ(pts.size(), 4u);
  EXPECT_EQ(pts[1].cfg.icp, 16u);
  EXPECT_EQ(pts[1].cfg.freq_mhz, 200);
  EXPECT_EQ(pts[2].cfg.icp, 32u);
  EXPECT_EQ(pts[2].cfg.freq_mhz, 100);
}

TEST(Enumerate, CapIsEnforcedBeforeEvaluation) {
  SweepSpec s = tiny_sweep();
  s.axes = {{"FREQ", std::vector<double>(1000, 100)}, {"APACK", std::vector<double>(101, 8)}};
  try {
    enumerate(s);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSize);
  }
  s.cap = 101000;
  EXPECT_EQ(sweep_size(s), 101000u);
}

TEST(Enumerate, ConstraintsMarkInfeasible) {
  SweepSpec s = tiny_sweep();
  s.configs = {implemented_config(1), implemented_config(4), implemented_config(6)};
  s.constraints.max_dsp = 200;
  auto pts = enumerate(s);
  EXPECT_TRUE(pts[0].feasible);
  EXPECT_FALSE(pts[1].feasible);
  EXPECT_TRUE(pts[1].evaluated);
  EXPECT_NE(pts[1].note.find("dsp 266 > 200"), std::string::npos);

  s.constraints = {};
  s.constraints.max_power_w = 3.0;
  pts = enumerate(s);
  EXPECT_TRUE(pts[1].feasible);
  EXPECT_FALSE(pts[2].feasible);

  s.constraints = {};
  s.constraints.max_latency_ms = pts[0].metrics.end_to_end_ms[0] - 1e-6;
  pts = enumerate(s);
  EXPECT_FALSE(pts[0].feasible);
  EXPECT_TRUE(pts[1].feasible);
}

TEST(Enumerate, UnsupportedWorkloadIsInfeasible) {
  SweepSpec s = tiny_sweep();
  AccelConfig small = implemented_config(1);
  small.filterxfilterxchin_max = 64;
  s.configs = {small, implemented_config(1)};
  const auto pts = enumerate(s);
  EXPECT_TRUE(pts[0].evaluated);
  EXPECT_FALSE(pts[0].feasible);
  EXPECT_NE(pts[0].note.find("FILTERxFILTERxCHIN_MAX"), std::string::npos);
  EXPECT_FALSE(pts[0].pareto);
  EXPECT_TRUE(pts[1].pareto);
}

TEST(Enumerate, SpecValidation) {
  SweepSpec s = tiny_sweep();
  s.objectives.clear();
  EXPECT_THROW(enumerate(s), Error);
  s = tiny_sweep();
  s.workloads.clear();
  EXPECT_THROW(enumerate(s), Error);
  s = tiny_sweep();
  s.axes = {{"ICP", {}}};
  EXPECT_THROW(enumerate(s), Error);
  s.axes = {{"NOPE", {1}}};
  EXPECT_THROW(enumerate(s), Error);
}

TEST(Csv, ImplementedSweep) {
  const SweepSpec s = load_sweep(kData / "sweeps" / "implemented.json");
  const auto pts = enumerate(s);
  const std::string csv = to_csv(pts, s);
  std::vector<std::vector<std::string>> rows;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    const std::size_t end = csv.find('\n', pos);
    std::vector<std::string> cells;
    std::string line = csv.substr(pos, end - pos);
    std::size_t c = 0;
    while (true) {
      const std::size_t comma = line.find(',', c);
      cells.push_back(line.substr(c, comma - c));
      if (comma == std::string::npos) break;
      c = comma + 1;
    }
    rows.push_back(cells);
    pos = end + 1;
  }
  ASSERT_EQ(rows.size(), 7u);
  const auto &header = rows[0];
  ASSERT_EQ(header.size(), 13u + 2 * 4 + 5);
  EXPECT_EQ(header[0], "FREQ");
  EXPECT_EQ(header[13], "sqn_conv_ms");
  EXPECT_EQ(header.back(), "pareto");
  const std::size_t dsp_col = std::find(header.begin(), header.end(), "dsp") - header.begin();
  const char *dsp[] = {"74", "138", "138", "266", "266", "266"};
  for (std::size_t i = 0; i < 6; ++i) {
    ASSERT_EQ(rows[i + 1].size(), header.size());
    EXPECT_EQ(rows[i + 1][dsp_col], dsp[i]);
    EXPECT_EQ(rows[i + 1][header.size() - 2], "1");
  }
  EXPECT_EQ(to_csv(enumerate(s), s), csv);
  EXPECT_NE(format_summary(pts, s).find("pareto front:"), std::string::npos);
}

TEST(Csv, InvalidRowsHaveEmptyMetrics) {
  SweepSpec s = tiny_sweep();
  s.axes = {{"OCP", {4}}};
  const auto pts = enumerate(s);
  const std::string csv = to_csv(pts, s);
  EXPECT_NE(csv.find(",,,,,0,0\n"), std::string::npos) << csv;
}

SweepSpec parse(const std::string &text) { return parse_sweep(text, "sweep.json", kData / "sweeps"); }

TEST(SweepFile, ParsesInlineConfigsAndAxes) {
  const SweepSpec s = parse(R"({
    "base": "../configs/conf1.cfg",
    "configs": [{"ICP": 32, "PE_DSP": 8}, "../configs/conf6.cfg"],
    "axes": {"FREQ": [100, 150]},
    "constraints": {"max_dsp": 300, "max_latency_ms": 1000},
    "objectives": ["conv_latency", "bram"],
    "workloads": ["../networks/sqn.json"],
    "cap": 10
  })");
  ASSERT_EQ(s.configs.size(), 2u);
  EXPECT_EQ(s.configs[0].icp, 32u);
  EXPECT_EQ(s.configs[0].ocp, 8u);
  EXPECT_EQ(s.configs[1], implemented_config(6));
  EXPECT_EQ(s.axes.size(), 1u);
  EXPECT_EQ(*s.constraints.max_dsp, 300);
  EXPECT_FALSE(s.constraints.max_power_w.has_value());
  EXPECT_EQ(s.objectives, (std::vector<Objective>{Objective::kConvLatency, Objective::kBram}));
  EXPECT_EQ(s.workloads[0].name, "sqn");
  EXPECT_EQ(s.cap, 10u);
  EXPECT_EQ(sweep_size(s), 4u);
}

TEST(SweepFile, Errors) {
  const auto kind_of = [](const std::string &text) {
    try {
      parse(text);
    } catch (const Error &e) {
      return e.kind();
    }
    return ErrorKind::kIo;
  };
  const std::string w = R"("workloads": ["../networks/sqn.json"])";
  EXPECT_EQ(kind_of("{"), ErrorKind::kParse);
  EXPECT_EQ(kind_of(R"({"objectives": ["dsp"], )" + w + R"(, "extra": 1})"), ErrorKind::kParse);
  EXPECT_EQ(kind_of(R"({"objectives": ["speed"], )" + w + "}"), ErrorKind::kParse);
  EXPECT_EQ(kind_of(R"({"objectives": ["dsp"], "axes": {"ICPX": [1]}, )" + w + "}"), ErrorKind::kParse);
  EXPECT_EQ(kind_of(R"({"objectives": ["dsp"], "configs": [{"ICP": 1.5}], )" + w + "}"), ErrorKind::kParse);
  EXPECT_EQ(kind_of(R"({"objectives": ["dsp"], "constraints": {"max_area": 1}, )" + w + "}"), ErrorKind::kParse);
  EXPECT_EQ(kind_of(R"({"objectives": [], )" + w + "}"), ErrorKind::kValidation);
  EXPECT_EQ(kind_of(R"({"objectives": ["dsp"], "workloads": []})"), ErrorKind::kValidation);
  EXPECT_EQ(kind_of(R"({"objectives": ["dsp"], "workloads": ["missing.json"]})"), ErrorKind::kIo);
}

}  // namespace
}  // namespace accelsim::dse
