#include "flatribbon/commands.hpp"
#include "flatribbon/config.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <utility>

using namespace flatribbon;

int main(int argc, char** argv) {
  CLI::App app{"Flat ribbons along space curves: build, solve, energy, sweep, validate"};
  app.require_subcommand(1, 1);

  std::string config_path, out_dir, width_text, q_text, r_text;
  std::size_t grid = 0;
  bool print_config = false;

  const std::pair<const char*, const char*> commands[] = {
      {"build", "construct the ribbon family, write meshes and residuals"},
      {"solve", "integrate the angle equation, write theta tables"},
      {"energy", "finite-width, quadrature and vanishing-width energies"},
      {"sweep", "helix energy ratios over the initial angle"},
      {"validate", "run the invariant checks"}};
  for (const auto& [name, description] : commands) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--config", config_path, "configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--grid", grid, "integrator steps over [0, L]")->check(CLI::PositiveNumber);
    sub->add_option("--width", width_text, "ribbon half-width w");
    sub->add_option("--q", q_text, "initial angle(s), comma separated");
    sub->add_option("--r", r_text, "helix parameters r for sweep, comma separated");
    sub->add_flag("--print-config", print_config, "print the normalized configuration and exit");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  RunConfig config;
  try {
    config = load_config(config_path);
    config.mode = parse_mode(app.get_subcommands().front()->get_name());
    if (!out_dir.empty()) config.output_dir = out_dir;
    if (grid != 0) config.ivp.grid = grid;
    if (!width_text.empty()) {
      config.ribbon.half_width = parse_real(width_text);
      if (!(config.ribbon.half_width > 0.0)) throw Error(ErrorCode::Config, "--width must be positive");
    }
    if (!q_text.empty()) config.ivp.q = parse_real_list(q_text);
    if (!r_text.empty()) {
      config.sweep.r = parse_real_list(r_text);
      for (double r : config.sweep.r)
        if (!(r > 0.0)) throw Error(ErrorCode::Config, "--r values must be positive");
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::Io ? 4 : 2;
  }

  if (print_config) {
    std::cout << format_config(config);
    return 0;
  }
  return run_command(config, std::cout, std::cerr);
}
