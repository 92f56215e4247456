#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "igaplate/cases.hpp"
#include "igaplate/errors.hpp"

using namespace igaplate;

namespace {

// flag values layered over the config file; empty/negative = keep the file's
struct Overrides {
  std::string degree;
  int refine = -1;
  std::string out;
  std::string probe;
  std::string solver;
};

void add_common(CLI::App* cmd, std::string& config_path, Overrides& o) {
  cmd->add_option("config", config_path, "case configuration file")->required();
  cmd->add_option("--degree", o.degree, "basis degree p or p,q");
  cmd->add_option("--refine", o.refine, "refinement level");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--probe", o.probe, "probe point x,y (physical coordinates)");
  cmd->add_option("--solver", o.solver, "linear solver: direct or cg");
}

int parse_strict_int(const std::string& what, const std::string& text) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(text, &pos);
    if (pos == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(what + ": cannot parse integer '" + text + "'");
}

double parse_strict_double(const std::string& what, const std::string& text) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(what + ": cannot parse number '" + text + "'");
}

CaseConfig load_config(const std::string& path, const Overrides& o) {
  CaseConfig config = parse_config_file(path);
  if (!o.degree.empty()) {
    const auto comma = o.degree.find(',');
    if (comma == std::string::npos) {
      config.degree_p = config.degree_q = parse_strict_int("--degree", o.degree);
    } else {
      config.degree_p = parse_strict_int("--degree", o.degree.substr(0, comma));
      config.degree_q = parse_strict_int("--degree", o.degree.substr(comma + 1));
    }
  }
  if (o.refine >= 0) config.refine = o.refine;
  if (!o.out.empty()) config.out_dir = o.out;
  if (!o.probe.empty()) {
    const auto comma = o.probe.find(',');
    if (comma == std::string::npos)
      throw ConfigError("--probe needs two coordinates x,y");
    config.probe.x() = parse_strict_double("--probe", o.probe.substr(0, comma));
    config.probe.y() = parse_strict_double("--probe", o.probe.substr(comma + 1));
    config.has_probe = true;
  }
  if (!o.solver.empty()) config.solver = parse_solver(o.solver);
  config.validate();
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shear-locking-free plate solver on smooth spline patches"};
  app.require_subcommand(1);

  std::string run_path, conv_path, cmp_path;
  Overrides run_over, conv_over, cmp_over;
  int levels = 0;

  CLI::App* run_cmd =
      app.add_subcommand("run", "solve one case; write fields and a summary");
  add_common(run_cmd, run_path, run_over);

  CLI::App* conv_cmd = app.add_subcommand(
      "convergence", "refinement ladder with probe and error columns");
  add_common(conv_cmd, conv_path, conv_over);
  conv_cmd->add_option("--levels", levels, "number of refinement levels")
      ->required();

  CLI::App* cmp_cmd = app.add_subcommand(
      "compare", "numeric profiles against the closed-form references");
  add_common(cmp_cmd, cmp_path, cmp_over);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run_cmd->parsed()) {
      run_case(load_config(run_path, run_over), std::cout);
    } else if (conv_cmd->parsed()) {
      run_convergence(load_config(conv_path, conv_over), levels, std::cout);
    } else {
      run_compare(load_config(cmp_path, cmp_over), std::cout);
    }
  } catch (const NumericError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
