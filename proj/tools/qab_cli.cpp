// Command-line front end: runs one verification suite and writes the report.
//   qab_cli <suite> --config cfg.json [--M 1,2] [--samples N] [--seed S]
//           [--precision double|high:<bits>] [--out report.json] [--format json|csv-summary]
// Exit codes: 0 all checks pass, 1 some check failed, 2 usage or infrastructure error.

#include "qab/harness.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Verification suites for the deformed Hubbard reflection algebra"};
  std::string suite, config_path, out = "-", format = "json", precision;
  std::vector<int> Ms;
  int samples = 0;
  std::uint64_t seed = 0;

  app.add_option("suite", suite, "rep-check, coalgebra, smatrix, ybe, kmatrix, bybe, unitarity, limits or all")
      ->required();
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--M", Ms, "bound-state numbers, comma separated")->delimiter(',');
  auto* samples_opt = app.add_option("--samples", samples, "points per M tuple")->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed, "master RNG seed");
  app.add_option("--precision", precision, "double or high:<bits>");
  app.add_option("--out", out, "output path, - for stdout");
  app.add_option("--format", format, "json or csv-summary")->check(CLI::IsMember({"json", "csv-summary"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    qab::RunConfig config = qab::load_config(config_path);
    if (!Ms.empty()) {
      for (int m : Ms)
        if (m < 1) throw qab::ConfigError("--M: bound-state numbers must be >= 1");
      config.M = Ms;
    }
    if (*samples_opt) config.samples = samples;
    if (*seed_opt) config.seed = seed;
    if (!precision.empty()) config.precision_bits = qab::parse_precision(precision);

    const qab::VerificationReport report = qab::run_suite(suite, config);
    qab::emit_report(report, format, out);
    return report.all_pass() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
