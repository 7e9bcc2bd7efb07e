// Command-line front end for the Cauchy spectral solver.
//
//   cauchy_spectra oscillator --states 1,3 --a 50 --out run1
//   cauchy_spectra well --v0 500 --states 4 --out well500
//   cauchy_spectra convergence-sweep --a 50,100 --v0 500
//   cauchy_spectra reference --infwell-energies 1..8
//   cauchy_spectra apply-op --a 5 --dx 0.01 --steps 100
//
// Options may also come from a key=value file given with --config; flags on
// the command line win.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cauchy/experiment.hpp"
#include "cauchy/parallel.hpp"
#include "json.hpp"

namespace {

enum Exit { kOk = 0, kFailure = 1, kUsage = 2, kRuntime = 3 };

int report_error(std::string_view kind, std::string_view message, int code) {
  nlohmann::ordered_json j;
  j["error"] = {{"kind", kind}, {"message", message}, {"exit_code", code}};
  std::cerr << j.dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace cauchy;

  CLI::App app{"Low-lying spectra of (-Laplacian)^(1/2) + V by imaginary-time propagation"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.set_config("--config", "", "key=value configuration file");
  app.get_config_formatter_base()->arrayDelimiter(';');

  SolverConfig defaults;
  double h = defaults.h, dx = defaults.dx, energy_tol = defaults.energy_tol;
  std::size_t k_max = defaults.k_max, check_every = defaults.check_every, threads = 0;
  std::string a_text = "50", v0_text = "500", states, gs_order, z_max_mode = "a", basis_kind;
  std::string out = "out";
  bool tail_compensation = false, quadratic_kinetic = false;

  app.add_option("--h", h, "imaginary time step");
  app.add_option("--dx", dx, "grid spacing");
  app.add_option("--a,--sweep_a", a_text, "half-width of [-a, a]; comma list for sweeps");
  app.add_option("--v0,--sweep_v0", v0_text, "well depth; comma list for sweeps");
  app.add_option("--states", states,
                 "n lowest states, or explicit labels like 1,3 or 1..4 (default 1)");
  app.add_option("--basis", basis_kind, "trial basis: hermite or box");
  app.add_option("--k-max,--k_max", k_max, "iteration cap");
  app.add_option("--check-every,--check_every", check_every, "convergence test stride");
  app.add_option("--energy-tol,--energy_tol", energy_tol, "convergence tolerance on E");
  app.add_option("--gs-order,--gs_order", gs_order, "Gram-Schmidt order as state labels");
  app.add_option("--z-max-mode,--z_max_mode", z_max_mode, "kernel truncation: a or 2a")
      ->check(CLI::IsMember({"a", "2a"}));
  app.add_flag("--tail-compensation,--tail_compensation", tail_compensation,
               "add (2/pi) f / z_max for the truncated far tail");
  app.add_flag("--quadratic-kinetic,--quadratic_kinetic", quadratic_kinetic,
               "keep the h^2 T^2 / 2 term of the kinetic factor");
  app.add_option("--threads", threads, "worker threads (capped by CAUCHY_SPECTRA_THREADS)");
  app.add_option("--out,--output_dir", out, "output directory");

  auto* osc = app.add_subcommand("oscillator", "harmonic potential V = x^2");
  auto* well = app.add_subcommand("well", "finite well: 0 for |x| < 1, V0 otherwise");
  auto* sweep = app.add_subcommand("convergence-sweep", "table over a and V0");
  auto* ref = app.add_subcommand("reference", "tabulate the semi-analytic formulas");
  auto* apply = app.add_subcommand("apply-op", "apply T once, or evolve a few steps");

  std::string infwell_levels = "1..8", infwell_psi = "1,2", detuning = "50,100,200,500";
  double psi1_half_width = 10.0, psi1_spacing = 0.01;
  ref->add_option("--infwell-energies", infwell_levels, "levels n for n pi/2 - pi/8");
  ref->add_option("--infwell-psi", infwell_psi, "levels for the approximate eigenfunctions");
  ref->add_option("--detuning", detuning, "increasing cutoffs a1,a2,...");
  ref->add_option("--psi1-half-width", psi1_half_width, "Airy ground state table range");
  ref->add_option("--psi1-spacing", psi1_spacing, "Airy ground state table spacing");

  std::string input;
  std::size_t steps = 0;
  apply->add_option("--input", input, "CSV x,value on the --a/--dx grid");
  apply->add_option("--steps", steps, "propagation steps (0 applies T once)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("usage", e.what(), kUsage);
  }

  try {
    ExperimentSpec spec;
    if (osc->parsed()) spec.mode = Mode::Oscillator;
    if (well->parsed()) spec.mode = Mode::Well;
    if (sweep->parsed()) spec.mode = Mode::ConvergenceSweep;
    if (ref->parsed()) spec.mode = Mode::Reference;
    if (apply->parsed()) spec.mode = Mode::ApplyOp;

    SolverConfig& c = spec.solver;
    c.h = h;
    c.dx = dx;
    c.k_max = k_max;
    c.check_every = check_every;
    c.energy_tol = energy_tol;
    c.kernel.z_max_mode = parse_z_max_mode(z_max_mode);
    c.kernel.tail_compensation = tail_compensation;
    c.step.quadratic_kinetic = quadratic_kinetic;
    c.threads = std::min(threads == 0 ? thread_cap() : threads, thread_cap());
    spec.output_dir = out;

    const auto a_values = parse_real_list(a_text);
    const bool v0_given = app.count("--v0") > 0;
    if (spec.mode == Mode::ConvergenceSweep) {
      spec.sweep_a = a_values;
      if (v0_given) spec.sweep_v0 = parse_real_list(v0_text);
      c.a = a_values.front();
    } else {
      if (a_values.size() != 1) throw UsageError("--a takes a single value outside sweeps");
      c.a = a_values.front();
      spec.v0 = parse_real_list(v0_text).front();
    }

    const bool box_default = spec.mode == Mode::Well ||
                             (spec.mode == Mode::ConvergenceSweep && !spec.sweep_v0.empty());
    BasisKind kind = box_default ? BasisKind::BoxTrig : BasisKind::Hermite;
    if (!basis_kind.empty()) kind = parse_basis_kind(basis_kind);
    spec.basis = parse_states(states.empty() ? "1" : states, kind);
    if (!gs_order.empty()) spec.basis.gs_order = parse_gs_order(gs_order, spec.basis);

    spec.reference.infwell_levels = parse_int_list(infwell_levels);
    spec.reference.infwell_psi_levels = parse_int_list(infwell_psi);
    spec.reference.detuning_cutoffs = parse_real_list(detuning);
    spec.reference.psi1_half_width = psi1_half_width;
    spec.reference.psi1_spacing = psi1_spacing;
    if (!input.empty()) spec.apply_op.input_csv = input;
    spec.apply_op.steps = steps;

    run(spec);
    nlohmann::ordered_json ok;
    ok["status"] = "ok";
    ok["mode"] = to_string(spec.mode);
    ok["summary"] = (spec.output_dir / "summary.json").string();
    std::cout << ok.dump() << '\n';
    return kOk;
  } catch (const std::invalid_argument& e) {
    return report_error("usage", e.what(), kUsage);
  } catch (const std::filesystem::filesystem_error& e) {
    return report_error("io", e.what(), kFailure);
  } catch (const std::runtime_error& e) {
    return report_error("runtime", e.what(), kRuntime);
  } catch (const std::exception& e) {
    return report_error("internal", e.what(), kFailure);
  }
}
