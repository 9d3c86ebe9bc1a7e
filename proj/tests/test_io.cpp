#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "patricia_lab/csv.hpp"
#include "patricia_lab/experiment.hpp"
#include "patricia_lab/json_io.hpp"
#include "patricia_lab/svg_plot.hpp"
#include "test_support.hpp"

using namespace patricia_lab;
using test_support::error_code_of;

namespace {

ExperimentConfig small_grid(const DistributionSpec& spec) {
  ExperimentConfig c;
  c.spec = spec;
  c.n_grid = {8, 32, 128};
  c.trials = 4;
  c.seed = 2024;
  c.threads = 1;
  return c;
}

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

}  // namespace

TEST_CASE("distribution json round trip") {
  const char* records[] = {
      R"({"law":"bernoulli","p":0.25})",
      R"({"law":"mu_n","N":1000})",
      R"({"law":"mixture","alpha":{"family":"power","eps":0.5},"a_cap":4096})",
      R"({"law":"nu","alpha":{"family":"exp2_power","eps":0.5}})",
      R"({"law":"mixture","alpha":{"family":"table","values":[8,16],"continuation":{"family":"log_power","c":8}}})",
      R"({"law":"mixture","alpha":{"family":"log_power","c":4}})",
  };
  for (const char* text : records) {
    CAPTURE(text);
    const auto spec = distribution_from_json_text(text);
    const auto again = distribution_from_json(to_json(spec));
    CHECK(to_json(again) == to_json(spec));
    CHECK(again.params_string() == spec.params_string());
  }
  CHECK(to_json(distribution_from_json_text(R"({"law":"mixture","alpha":{"family":"power","eps":0.5}})"))["a_cap"] ==
        kDefaultACap);
}

TEST_CASE("distribution json errors are parse errors") {
  for (const char* text : {"{", "[]", R"({"law":"cauchy"})", R"({"law":"mu_n"})", R"({"law":"mu_n","N":-3})",
                           R"({"law":"mu_n","N":10,"extra":1})", R"({"law":"bernoulli","p":2})",
                           R"({"law":"mixture","alpha":{"family":"power"}})",
                           R"({"law":"mixture","alpha":{"family":"table","values":[1,2]}})"}) {
    CAPTURE(text);
    CHECK(error_code_of([&] { distribution_from_json_text(text); }) == ErrorCode::parse);
  }
}

TEST_CASE("csv headers are locked") {
  const auto cfg = small_grid(DistributionSpec::mu_n(100));
  const auto r = run_grid(cfg);
  const auto trials = trials_csv(cfg, r);
  const auto summary = summary_csv(r);
  CHECK(first_line(trials) ==
        "dist,params,n,trial,seed,height,distinct_first_one,prefix_match_count,max_split_index,elapsed_ms");
  CHECK(first_line(summary) ==
        "dist,params,n,trials,mean_height,std_height,h_over_n,h_over_log2n,h_over_floor,mean_distinct");
  const auto t = parse_csv(trials);
  CHECK(t.rows.size() == 12);
  CHECK(t.rows[0][t.column("dist")] == "mu_n");
  CHECK(t.rows[0][t.column("params")] == "N=100");
  CHECK(t.rows[0][t.column("seed")] == "2024");
  CHECK(t.rows[0][t.column("elapsed_ms")] == "0");
  const auto s = parse_csv(summary);
  CHECK(s.rows.size() == 3);
  CHECK(s.rows[0][s.column("h_over_floor")].empty());
}

TEST_CASE("csv is byte-identical across runs") {
  const auto cfg = small_grid(DistributionSpec::mixture(AlphaSpec::power(0.5)));
  const auto a = run_grid(cfg);
  auto cfg4 = cfg;
  cfg4.threads = 4;
  const auto b = run_grid(cfg4);
  CHECK(trials_csv(cfg, a) == trials_csv(cfg4, b));
  CHECK(summary_csv(a) == summary_csv(b));
  const auto s = parse_csv(summary_csv(a));
  CHECK_FALSE(s.rows[0][s.column("h_over_floor")].empty());
}

TEST_CASE("csv parser") {
  const auto t = parse_csv("a,b\n1,\"x,y\"\n2,\"say \"\"hi\"\"\"\r\n");
  CHECK(t.header == std::vector<std::string>{"a", "b"});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0][1] == "x,y");
  CHECK(t.rows[1][1] == "say \"hi\"");
  CHECK(error_code_of([&] { t.column("c"); }) == ErrorCode::parse);
  CHECK(error_code_of([] { parse_csv("a,b\n1\n"); }) == ErrorCode::parse);
  CHECK(error_code_of([] { read_csv_file("/nonexistent/file.csv"); }) == ErrorCode::io);
}

TEST_CASE("svg plot") {
  const auto cfg = small_grid(DistributionSpec::bernoulli(0.5));
  const auto table = parse_csv(summary_csv(run_grid(cfg)));
  const auto svg = render_svg(table, "n", "h_over_n");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg == render_svg(table, "n", "h_over_n"));

  const auto single = parse_csv("dist,params,n,mean_height\nmu_n,N=3,5,4\n");
  CHECK(error_code_of([&] { render_svg(single, "n", "mean_height"); }) == ErrorCode::invalid_argument);
  CHECK(error_code_of([&] { render_svg(table, "n", "nope"); }) == ErrorCode::parse);
}

TEST_CASE("svg polyline of a decreasing series descends left to right") {
  const auto table = parse_csv("dist,params,n,h_over_n\nb,p,10,0.5\nb,p,100,0.2\nb,p,1000,0.05\n");
  const auto svg = render_svg(table, "n", "h_over_n");
  const auto start = svg.find("points=\"");
  REQUIRE(start != std::string::npos);
  std::istringstream pts(svg.substr(start + 8, svg.find('"', start + 8) - start - 8));
  std::vector<std::pair<double, double>> xy;
  std::string pair;
  while (pts >> pair) {
    const auto comma = pair.find(',');
    xy.emplace_back(std::stod(pair.substr(0, comma)), std::stod(pair.substr(comma + 1)));
  }
  REQUIRE(xy.size() == 3);
  for (std::size_t i = 1; i < xy.size(); ++i) {
    CHECK(xy[i].first > xy[i - 1].first);
    CHECK(xy[i].second > xy[i - 1].second);  // svg y grows downward
  }
}

TEST_CASE("emit_svg writes a file") {
  const auto dir = std::filesystem::temp_directory_path() / "patricia_lab_io_test";
  std::filesystem::create_directories(dir);
  const auto csv_path = (dir / "summary.csv").string();
  {
    std::ofstream out(csv_path);
    write_summary_csv(out, run_grid(small_grid(DistributionSpec::mu_n(50))));
  }
  const auto svg_path = (dir / "plot.svg").string();
  emit_svg(csv_path, "n", "mean_height", svg_path);
  CHECK(std::filesystem::file_size(svg_path) > 100);
  std::filesystem::remove_all(dir);
}
