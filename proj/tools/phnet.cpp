// phnet: batch front end for pseudo-Hermitian network simulations.
//
//   phnet spectrum --config model.json [--out-dir dir]
//   phnet gram     --config model.json [--out-dir dir]
//   phnet evolve   --config run.json [--out-dir dir] [--method rk4|expm|spectral] [--dt h]
//   phnet demo     fig2a|fig2b|fig3|hermitian|gram|spectrum [--out-dir dir] [--method ...] [--dt h]
//   phnet preset   <name>          (prints the built-in JSON)

#include "phnet/error.hpp"
#include "phnet/io/experiment.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace phnet;
using namespace phnet::io;

struct Common {
  std::string config;
  std::string out_dir;
  std::string method;
  double dt = 0.0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidValue, "cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunOverrides overrides_from(const Common& c) {
  RunOverrides o;
  if (!c.method.empty()) o.method = parse_method(c.method);
  if (c.dt != 0.0) o.dt = c.dt;
  if (!c.out_dir.empty()) o.out_dir = c.out_dir;
  return o;
}

// Tables go to files under out_dir when one is given, otherwise to stdout.
void emit(const ResultTable& table, const std::string& out_dir, const std::string& file) {
  if (out_dir.empty()) {
    write_csv(table, std::cout);
    return;
  }
  std::filesystem::create_directories(out_dir);
  const auto path = (std::filesystem::path(out_dir) / file).string();
  write_csv_file(table, path);
  std::cerr << "wrote " << path << '\n';
}

void spectrum(std::string_view text, const Common& c) {
  const SpectrumOutput out = run_spectrum(load_model(text));
  emit(out.spectrum, c.out_dir, "spectrum.csv");
  if (out.dispersion && !c.out_dir.empty()) emit(*out.dispersion, c.out_dir, "dispersion.csv");
  if (out.dispersion) std::cerr << "max |numeric - analytic| = " << out.max_error << '\n';
}

void gram(std::string_view text, const Common& c) {
  const GramOutput out = run_gram(load_model(text));
  if (c.out_dir.empty()) {
    write_csv(out.mode_table, std::cout);
    std::cout << '\n';
    write_csv(out.gram_table, std::cout);
    return;
  }
  emit(out.mode_table, c.out_dir, "modes.csv");
  emit(out.gram_table, c.out_dir, "gram.csv");
}

void evolve(std::string_view text, const Common& c, bool overlays) {
  ExperimentConfig config = load_config(text);
  apply_overrides(config, overrides_from(c));
  const auto start = std::chrono::steady_clock::now();
  ExperimentOutput out = run_experiment(config);
  if (overlays) add_demo_overlays(config, out);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  for (const auto& path : write_outputs(config, out)) std::cerr << "wrote " << path << '\n';
  std::cerr << method_name(config.evolution.method) << ": " << out.result.times.size() << " samples in "
            << elapsed.count() << " s\n";
}

// Both figure cases, written to case_a/ and case_b/ plus a stacked norm plot.
void fig3(const Common& c) {
  const std::filesystem::path root = c.out_dir.empty() ? "." : c.out_dir;
  std::vector<ExperimentConfig> configs;
  std::vector<ExperimentOutput> outputs;
  for (const auto& [preset, sub] : {std::pair{"fig2a", "case_a"}, std::pair{"fig2b", "case_b"}}) {
    Common run = c;
    run.out_dir = (root / sub).string();
    ExperimentConfig config = load_config(preset_text(preset));
    apply_overrides(config, overrides_from(run));
    config.output.svg.reset();
    ExperimentOutput out = run_experiment(config);
    add_demo_overlays(config, out);
    for (const auto& path : write_outputs(config, out)) std::cerr << "wrote " << path << '\n';
    configs.push_back(std::move(config));
    outputs.push_back(std::move(out));
  }
  const PlotSpec plot = comparison_plot({{&configs[0], &outputs[0]}, {&configs[1], &outputs[1]}},
                                        {"(a) counter-propagating packets", "(b) coincident packets"});
  const auto path = (root / "fig3.svg").string();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidValue, "cannot open '" + path + "' for writing");
  out << render_svg(plot);
  std::cerr << "wrote " << path << '\n';
}

void demo(const std::string& name, const Common& c) {
  if (name == "fig3") return fig3(c);
  const std::string_view text = preset_text(name);
  if (name == "spectrum") return spectrum(text, c);
  if (name == "gram") return gram(text, c);
  evolve(text, c, true);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator for networks of pseudo-Hermitian clusters"};
  app.require_subcommand(1);

  Common common;
  std::string preset;
  auto add_common = [&](CLI::App* sub, bool needs_config) {
    if (needs_config) sub->add_option("--config", common.config, "JSON configuration")->required();
    sub->add_option("--out-dir", common.out_dir, "Output directory");
  };
  auto add_run = [&](CLI::App* sub) {
    sub->add_option("--method", common.method, "rk4, expm or spectral")
        ->check(CLI::IsMember({"rk4", "expm", "spectral"}));
    sub->add_option("--dt", common.dt, "RK4 step")->check(CLI::PositiveNumber);
  };

  auto* spectrum_cmd = app.add_subcommand("spectrum", "Mode-block spectrum and dispersion table");
  add_common(spectrum_cmd, true);
  auto* gram_cmd = app.add_subcommand("gram", "Cluster modes and Dirac Gram matrices");
  add_common(gram_cmd, true);
  auto* evolve_cmd = app.add_subcommand("evolve", "Time evolution from a config");
  add_common(evolve_cmd, true);
  add_run(evolve_cmd);
  auto* demo_cmd = app.add_subcommand("demo", "Built-in presets with predicted-vs-measured columns");
  demo_cmd->add_option("preset", preset, "Preset name")->required();
  add_common(demo_cmd, false);
  add_run(demo_cmd);
  auto* preset_cmd = app.add_subcommand("preset", "Print a built-in preset");
  preset_cmd->add_option("name", preset, "Preset name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, std::cerr, std::cerr);
  }

  try {
    if (*spectrum_cmd) spectrum(read_file(common.config), common);
    else if (*gram_cmd) gram(read_file(common.config), common);
    else if (*evolve_cmd) evolve(read_file(common.config), common, false);
    else if (*demo_cmd) demo(preset, common);
    else if (*preset_cmd) std::cout << preset_text(preset);
  } catch (const std::exception& e) {
    std::cerr << "phnet: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
