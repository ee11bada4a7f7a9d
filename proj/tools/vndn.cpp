#include "vndn/experiment/sweep.hpp"
#include "vndn/mobility/road-graph.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

namespace {

constexpr int EXIT_CONFIG = 2;
constexpr int EXIT_RUN = 3;

using namespace vndn;

void
writeFile(const std::filesystem::path& file, const std::function<void(std::ostream&)>& body)
{
  if (file.has_parent_path())
    std::filesystem::create_directories(file.parent_path());
  std::ofstream os(file, std::ios::binary);
  if (!os)
    throw std::runtime_error("cannot write " + file.string());
  body(os);
}

int
cmdRun(const std::string& scenarioFile, std::optional<uint64_t> seed, const std::string& out,
       bool withTrace)
{
  experiment::ScenarioConfig config;
  try {
    config = experiment::ScenarioConfig::load(scenarioFile);
  }
  catch (const experiment::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return EXIT_CONFIG;
  }
  if (seed)
    config.seed = *seed;

  fw::PacketTrace trace;
  experiment::MetricsReport report;
  try {
    report = experiment::runScenario(config, withTrace ? &trace : nullptr);
  }
  catch (const experiment::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return EXIT_CONFIG;
  }
  catch (const std::exception& e) {
    std::cerr << "run with seed " << config.seed << " failed: " << e.what() << '\n';
    return EXIT_RUN;
  }

  std::filesystem::path dir(out);
  writeFile(dir / "results.csv", [&] (std::ostream& os) {
    experiment::writeCsv(os, {experiment::ResultRow::from(0, config, report)});
  });
  if (withTrace)
    writeFile(dir / "trace.txt", [&] (std::ostream& os) { trace.write(os); });

  std::cout << "seed " << config.seed << ": " << report.totalPackets << " packets, "
            << report.completedTrips << " trips, mean travel time "
            << experiment::formatNumber(report.meanTravelTimeS) << " s\n";
  return 0;
}

int
cmdSweep(const std::string& planFile, const std::string& out, unsigned jobs)
{
  experiment::FactorialPlan plan;
  std::vector<experiment::ResultRow> rows;
  try {
    plan = experiment::FactorialPlan::load(planFile);
    rows = experiment::runFactorial(plan, jobs);
  }
  catch (const experiment::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return EXIT_CONFIG;
  }
  catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return EXIT_RUN;
  }
  writeFile(std::filesystem::path(out) / "results.csv",
            [&] (std::ostream& os) { experiment::writeCsv(os, rows); });
  std::cout << rows.size() << " runs written to " << (std::filesystem::path(out) / "results.csv").string()
            << '\n';
  return 0;
}

int
cmdAggregate(const std::string& csvFile, const std::vector<std::string>& by, const std::string& metric)
{
  std::ifstream is(csvFile);
  if (!is) {
    std::cerr << "cannot open " << csvFile << '\n';
    return EXIT_CONFIG;
  }
  try {
    auto rows = experiment::readCsv(is);
    auto groups = experiment::aggregate(rows, by, metric);
    for (size_t i = 0; i < by.size(); ++i)
      std::cout << by[i] << ',';
    std::cout << "mean,ci95_halfwidth,n\n";
    for (const auto& [key, ci] : groups) {
      for (const auto& k : key)
        std::cout << k << ',';
      std::cout << experiment::formatNumber(ci.mean) << ',' << experiment::formatNumber(ci.halfWidth)
                << ',' << ci.n << '\n';
    }
  }
  catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return EXIT_CONFIG;
  }
  return 0;
}

} // namespace

int
main(int argc, char** argv)
{
  CLI::App app{"Vehicular named-data networking simulator"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run one scenario");
  std::string scenarioFile, runOut;
  std::optional<uint64_t> seed;
  bool withTrace = false;
  run->add_option("--scenario", scenarioFile, "Scenario JSON")->required();
  run->add_option("--seed", seed, "Overrides the scenario seed");
  run->add_option("--out", runOut, "Output directory")->required();
  run->add_flag("--trace", withTrace, "Also write the packet trace");

  auto* sweep = app.add_subcommand("sweep", "Run a full factorial plan");
  std::string planFile, sweepOut;
  unsigned jobs = 1;
  sweep->add_option("--plan", planFile, "Plan JSON")->required();
  sweep->add_option("--out", sweepOut, "Output directory")->required();
  sweep->add_option("--jobs", jobs, "Parallel runs")->check(CLI::PositiveNumber);

  auto* genMap = app.add_subcommand("gen-map", "Write a generated road network");
  genMap->require_subcommand(1);
  auto* grid = genMap->add_subcommand("grid", "Manhattan grid");
  int rows = 3, cols = 3;
  double block = 100;
  std::string mapOut;
  grid->add_option("--rows", rows)->required()->check(CLI::PositiveNumber);
  grid->add_option("--cols", cols)->required()->check(CLI::PositiveNumber);
  grid->add_option("--block", block)->required()->check(CLI::PositiveNumber);
  grid->add_option("--out", mapOut)->required();
  auto* highway = genMap->add_subcommand("highway", "Straight two-way highway");
  double length = 1000;
  int lanes = 3;
  highway->add_option("--length", length)->required()->check(CLI::PositiveNumber);
  highway->add_option("--lanes", lanes)->required()->check(CLI::PositiveNumber);
  highway->add_option("--out", mapOut)->required();

  auto* agg = app.add_subcommand("aggregate", "Mean and 95% CI of a CSV column per group");
  std::string csvFile, metric;
  std::vector<std::string> by;
  agg->add_option("--csv", csvFile)->required();
  agg->add_option("--by", by)->delimiter(',')->required();
  agg->add_option("--metric", metric)->required();

  try {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : EXIT_CONFIG;
  }

  try {
    if (*run)
      return cmdRun(scenarioFile, seed, runOut, withTrace);
    if (*sweep)
      return cmdSweep(planFile, sweepOut, jobs);
    if (*grid) {
      auto graph = mobility::generateGrid(rows, cols, block);
      graph.save(mapOut);
      return 0;
    }
    if (*highway) {
      auto graph = mobility::generateHighway(length, lanes);
      graph.save(mapOut);
      return 0;
    }
    if (*agg)
      return cmdAggregate(csvFile, by, metric);
  }
  catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return EXIT_RUN;
  }
  return 0;
}
