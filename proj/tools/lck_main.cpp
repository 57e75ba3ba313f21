// Command line front end: configure a Hopf model, run verification suites,
// emit a text or JSON report. Exit code 0 means every check passed, 1 means
// at least one check failed or errored while running, 2 means the
// configuration was rejected.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lck/report.hpp"

namespace {

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

std::vector<std::string> parse_names(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int emit_and_exit_code(const lck::RunReport& rep) {
  if (rep.config.output_format == "json")
    std::cout << lck::report_to_json(rep);
  else
    std::cout << lck::report_to_text(rep);
  return rep.overall_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical workbench for the locally conformally Kahler Hopf models"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "run verification suites");
  std::string config_path, a_csv, c_csv, suites_csv, format;
  std::optional<int> n_opt, points_opt, parallel_opt;
  std::optional<double> s_opt, t_range_opt;
  std::optional<std::uint64_t> seed_opt;
  bool include_timing = false;
  run_cmd->add_option("--config", config_path, "JSON configuration file");
  run_cmd->add_option("--n", n_opt, "complex dimension (>= 2)");
  run_cmd->add_option("--a", a_csv, "weights, comma separated ascending positives");
  run_cmd->add_option("--s", s_opt, "translation length (> 0)");
  run_cmd->add_option("--c", c_csv, "phases as re,im pairs, comma separated");
  run_cmd->add_option("--seed", seed_opt, "sample stream seed");
  run_cmd->add_option("--points", points_opt, "sample points per check");
  run_cmd->add_option("--t-range", t_range_opt, "half width of the t sampling window");
  run_cmd->add_option("--suites", suites_csv,
                      "comma separated suite names (lck, parallel_lee, contact, biholomorphism, "
                      "group_actions, lcr, theorem_a, all)");
  run_cmd->add_option("--format", format, "output format: json or text");
  run_cmd->add_option("--parallel", parallel_opt, "worker threads for the point sweeps");
  run_cmd->add_flag("--include-timing", include_timing,
                    "write real elapsed_ms into the JSON report");

  auto* demo_cmd = app.add_subcommand("demo", "run every suite on the standard model");

  CLI11_PARSE(app, argc, argv);

  try {
    lck::RunConfig cfg;
    if (demo_cmd->parsed()) {
      cfg.output_format = "text";
    } else {
      if (!config_path.empty()) cfg = lck::config_from_json_file(config_path);
      if (!a_csv.empty()) {
        auto a = parse_doubles(a_csv);
        cfg.data.n = static_cast<int>(a.size());
        cfg.data.a = Eigen::Map<Eigen::VectorXd>(a.data(), a.size());
        if (static_cast<int>(cfg.data.c.size()) != cfg.data.n)
          cfg.data.c.assign(cfg.data.n, std::complex<double>(1.0, 0.0));
      }
      if (n_opt) {
        if (!a_csv.empty() && *n_opt != cfg.data.n)
          throw std::invalid_argument("n: inconsistent with the length of a");
        if (a_csv.empty() && *n_opt != cfg.data.n) {
          cfg.data.n = *n_opt;
          cfg.data.a = Eigen::VectorXd::Ones(*n_opt);
          cfg.data.c.assign(*n_opt, std::complex<double>(1.0, 0.0));
        }
      }
      if (s_opt) cfg.data.s = *s_opt;
      if (!c_csv.empty()) {
        auto raw = parse_doubles(c_csv);
        if (raw.size() != 2 * static_cast<size_t>(cfg.data.n))
          throw std::invalid_argument("c: expected n re,im pairs");
        cfg.data.c.clear();
        for (int j = 0; j < cfg.data.n; ++j)
          cfg.data.c.emplace_back(raw[2 * j], raw[2 * j + 1]);
      }
      if (seed_opt) cfg.seed = *seed_opt;
      if (points_opt) cfg.points = *points_opt;
      if (t_range_opt) cfg.t_range = *t_range_opt;
      if (!suites_csv.empty()) cfg.suites = parse_names(suites_csv);
      if (!format.empty()) cfg.output_format = format;
      if (parallel_opt) cfg.parallel = *parallel_opt;
      if (include_timing) cfg.include_timing = true;
    }
    lck::validate_run_config(cfg);

    if (demo_cmd->parsed()) {
      auto lam = cfg.data.lambda();
      std::cout << "standard Hopf model, diagonal spectrum:\n";
      for (int j = 0; j < cfg.data.n; ++j)
        std::cout << "  lambda_" << (j + 1) << " = (" << lam[j].real() << ", " << lam[j].imag()
                  << ")  |lambda| = " << std::abs(lam[j]) << "\n";
      std::cout << "\n";
    }

    try {
      lck::RunReport rep = lck::run(cfg);
      return emit_and_exit_code(rep);
    } catch (const std::runtime_error& e) {
      std::cerr << "check execution failed: " << e.what() << "\n";
      return 1;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  }
}
