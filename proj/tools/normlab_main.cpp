#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>

#include "normlab/experiments.hpp"

namespace {

struct Overrides {
  std::optional<int> resolution;
  std::optional<double> period;
  std::optional<double> dt;
};

void apply_overrides(normlab::Config& config, const std::string& section, const Overrides& o) {
  if (o.resolution) {
    const std::string key = section == "exp-growth" ? "resolutions" : "n";
    config.set(section, key, std::to_string(*o.resolution));
  }
  if (o.period) config.set(section, "period", normlab::format_number(*o.period));
  if (o.dt) {
    const std::string key = section == "euler-inflation" ? "dt_max" : "dt";
    config.set(section, key, normlab::format_number(*o.dt));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Norm-inflation experiments for forced transport and Euler equations"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir = "out";
  bool quiet = false;
  Overrides overrides;
  app.add_option("--config", config_path, "Sectioned key = value configuration file")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Directory for CSV, SVG and manifest files");
  app.add_option("--resolution", overrides.resolution, "Grid points per axis");
  app.add_option("--period", overrides.period, "Torus side length");
  app.add_option("--dt", overrides.dt, "Time step");
  app.add_flag("--quiet", quiet, "Only print failing checks");

  for (const auto& entry : normlab::experiments::registry()) {
    app.add_subcommand(entry.name, entry.summary)->fallthrough();
  }
  CLI11_PARSE(app, argc, argv);

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    normlab::Config config = config_path.empty() ? normlab::Config{} : normlab::Config::load(config_path);
    apply_overrides(config, name, overrides);
    const normlab::Report report = normlab::experiments::find(name).run(config);
    std::filesystem::create_directories(out_dir);
    const auto files = normlab::write_report(report, out_dir);
    if (!quiet) {
      normlab::print_checks(std::cout, report);
      for (const auto& f : files) std::cout << "wrote " << f.string() << "\n";
    } else {
      for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
      for (const auto& c : report.checks) {
        if (!c.pass) std::cout << "FAIL " << c.name << " = " << normlab::format_number(c.value) << "\n";
      }
    }
    return report.passed() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << name << ": " << e.what() << "\n";
    return 2;
  }
}
