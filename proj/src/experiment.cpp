#include "cauchy/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

#include "cauchy/parallel.hpp"
#include "cauchy/propagator.hpp"
#include "cauchy/reference.hpp"
#include "json.hpp"

namespace cauchy {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Oscillator: return "oscillator";
    case Mode::Well: return "well";
    case Mode::ConvergenceSweep: return "convergence-sweep";
    case Mode::Reference: return "reference";
    case Mode::ApplyOp: return "apply-op";
  }
  return "?";
}

Mode parse_mode(std::string_view text) {
  for (Mode m : {Mode::Oscillator, Mode::Well, Mode::ConvergenceSweep, Mode::Reference,
                 Mode::ApplyOp}) {
    if (text == to_string(m)) return m;
  }
  if (text == "convergence_sweep") return Mode::ConvergenceSweep;
  if (text == "apply_op") return Mode::ApplyOp;
  throw UsageError("unknown mode '" + std::string(text) + "'");
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_number(std::string_view raw) {
  const std::string s = trim(raw);
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw UsageError("cannot parse number '" + s + "'");
  }
  return value;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(trim(text.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

int label_to_index(int label, BasisKind kind) {
  if (label < 1) throw UsageError("state labels start at 1");
  return kind == BasisKind::Hermite ? label - 1 : label;
}

}  // namespace

std::vector<int> parse_int_list(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) throw UsageError("empty integer list");
  if (const auto dots = s.find(".."); dots != std::string::npos) {
    const int lo = parse_number<int>(std::string_view(s).substr(0, dots));
    const int hi = parse_number<int>(std::string_view(s).substr(dots + 2));
    if (hi < lo) throw UsageError("empty range '" + s + "'");
    std::vector<int> out;
    for (int i = lo; i <= hi; ++i) out.push_back(i);
    return out;
  }
  std::vector<int> out;
  for (const auto& part : split(s, ',')) out.push_back(parse_number<int>(part));
  return out;
}

std::vector<double> parse_real_list(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) throw UsageError("empty list");
  std::vector<double> out;
  for (const auto& part : split(s, ',')) out.push_back(parse_number<double>(part));
  return out;
}

TrialBasis parse_states(std::string_view text, BasisKind kind) {
  const std::string s = trim(text);
  TrialBasis basis{kind, {}, {}};
  const bool explicit_labels = s.find(',') != std::string::npos || s.find("..") != std::string::npos;
  if (!explicit_labels) {
    const int n = parse_number<int>(s);
    if (n < 1) throw UsageError("--states needs at least one state");
    for (int label = 1; label <= n; ++label) basis.indices.push_back(label_to_index(label, kind));
    return basis;
  }
  for (int label : parse_int_list(s)) basis.indices.push_back(label_to_index(label, kind));
  return basis;
}

std::vector<std::size_t> parse_gs_order(std::string_view text, const TrialBasis& basis) {
  const auto labels = basis.labels();
  std::vector<std::size_t> order;
  for (int label : parse_int_list(text)) {
    const auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) {
      throw UsageError("--gs-order names state " + std::to_string(label) + " outside --states");
    }
    order.push_back(static_cast<std::size_t>(it - labels.begin()));
  }
  return order;
}

Potential ExperimentSpec::potential() const {
  return mode == Mode::Well ? Potential::finite_well(v0) : Potential::harmonic();
}

void ExperimentSpec::validate() const {
  try {
    if (mode != Mode::Reference) solver.validate();
    if (mode == Mode::Well && !(v0 > 0.0)) throw UsageError("--v0 must be positive");
    if (mode == Mode::ConvergenceSweep) {
      if (sweep_a.empty()) throw UsageError("convergence-sweep needs a nonempty --a list");
      for (double a : sweep_a) {
        SolverConfig c = solver;
        c.a = a;
        c.validate();
      }
      for (double v : sweep_v0) {
        if (!(v > 0.0)) throw UsageError("sweep depths must be positive");
      }
    }
    if (mode != Mode::Reference) {
      if (basis.indices.empty()) throw UsageError("no trial states selected");
      basis.resolved_order();
    }
    if (output_dir.empty()) throw UsageError("--out must not be empty");
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::vector<bool> bound_flags(const SpectralResult& result, double v0) {
  std::vector<bool> out(result.eigenvalues.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = result.converged[i] && result.eigenvalues[i] < v0;
  }
  return out;
}

Table1Row table1_row(double v0, const SpectralResult& result, const std::vector<double>& points) {
  const auto it = std::find(result.labels.begin(), result.labels.end(), 1);
  if (it == result.labels.end()) throw std::invalid_argument("no ground state in the result set");
  const GridFunction& psi = result.eigenfunctions[static_cast<std::size_t>(it - result.labels.begin())];
  Table1Row row{v0, {}};
  for (double x : points) {
    const auto j = psi.grid().index_of(x);
    if (!j) {
      throw std::invalid_argument("x = " + std::to_string(x) + " is not a grid node");
    }
    row.values.push_back(std::abs(psi[*j]));
  }
  return row;
}

namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << std::setprecision(17);
  return out;
}

std::string format_real(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

}  // namespace

void write_table1_csv(const fs::path& path, const std::vector<Table1Row>& rows,
                      const std::vector<double>& points) {
  auto out = open_out(path);
  out << "V0";
  for (double x : points) out << ",x=" << x;
  out << '\n';
  for (const auto& row : rows) {
    out << row.v0;
    for (double v : row.values) out << ',' << v;
    out << '\n';
  }
}

namespace {

ordered_json config_json(const ExperimentSpec& spec) {
  const SolverConfig& c = spec.solver;
  ordered_json j;
  j["mode"] = to_string(spec.mode);
  j["h"] = c.h;
  j["dx"] = c.dx;
  j["a"] = c.a;
  j["k_max"] = c.k_max;
  j["check_every"] = c.check_every;
  j["energy_tol"] = c.energy_tol;
  j["z_max_mode"] = to_string(c.kernel.z_max_mode);
  j["tail_compensation"] = c.kernel.tail_compensation;
  j["quadratic_kinetic"] = c.step.quadratic_kinetic;
  j["threads"] = c.threads;
  if (spec.mode == Mode::Well) j["v0"] = spec.v0;
  j["potential"] = spec.mode == Mode::Well ? "finite_well" : "harmonic";
  if (spec.mode == Mode::ConvergenceSweep) {
    j["sweep_a"] = spec.sweep_a;
    j["sweep_v0"] = spec.sweep_v0;
    if (!spec.sweep_v0.empty()) j["potential"] = "finite_well";
  }
  j["basis"] = {{"kind", to_string(spec.basis.kind)},
                {"indices", spec.basis.indices},
                {"labels", spec.basis.labels()},
                {"gs_order", spec.basis.resolved_order()}};
  j["output_dir"] = spec.output_dir.string();
  return j;
}

ordered_json states_json(const SpectralResult& r, const std::optional<double>& v0) {
  ordered_json states = ordered_json::array();
  const auto bound = v0 ? bound_flags(r, *v0) : std::vector<bool>{};
  for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
    ordered_json s;
    s["label"] = r.labels[i];
    s["eigenvalue"] = r.eigenvalues[i];
    s["converged"] = static_cast<bool>(r.converged[i]);
    if (v0) s["bound"] = static_cast<bool>(bound[i]);
    states.push_back(s);
  }
  return states;
}

void write_state_files(const fs::path& dir, const SpectralResult& r) {
  fs::create_directories(dir);
  for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
    const std::string tag = std::to_string(r.labels[i]);
    write_csv((dir / ("psi_" + tag + ".csv")).string(), r.eigenfunctions[i]);
    auto out = open_out(dir / ("energy_history_" + tag + ".csv"));
    out << "k,E\n";
    const auto& hist = r.energy_history[i];
    for (std::size_t k = 0; k < hist.size(); ++k) out << k << ',' << hist[k] << '\n';
  }
}

void write_table_header(std::ostream& out, const std::vector<int>& labels) {
  out << "a,V0";
  for (int label : labels) out << ",E" << label;
  out << '\n';
}

void write_table_row(std::ostream& out, double a, const std::optional<double>& v0,
                     const SpectralResult& r) {
  out << a << ',' << (v0 ? format_real(*v0) : std::string("harmonic"));
  const auto bound = v0 ? bound_flags(r, *v0) : std::vector<bool>{};
  for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
    const bool show = v0 ? static_cast<bool>(bound[i]) : true;
    out << ',';
    if (show) {
      out << r.eigenvalues[i];
    } else {
      out << '-';
    }
  }
  out << '\n';
}

void write_summary(const fs::path& dir, const ordered_json& j) {
  auto out = open_out(dir / "summary.json");
  out << j.dump(2) << '\n';
}

void run_single(const ExperimentSpec& spec) {
  const Potential potential = spec.potential();
  const SpectralResult r = solve(spec.solver, potential, spec.basis);
  const fs::path& dir = spec.output_dir;
  const std::optional<double> v0 =
      spec.mode == Mode::Well ? std::optional<double>(spec.v0) : std::nullopt;
  write_state_files(dir, r);
  {
    auto out = open_out(dir / "table.csv");
    write_table_header(out, r.labels);
    write_table_row(out, spec.solver.a, v0, r);
  }
  ordered_json j;
  j["config"] = config_json(spec);
  j["iterations_used"] = r.iterations_used;
  j["converged"] = r.all_converged();
  j["eigenvalues"] = r.eigenvalues;
  j["states"] = states_json(r, v0);
  if (v0) {
    const auto bound = bound_flags(r, *v0);
    j["bound_states"] = std::count(bound.begin(), bound.end(), true);
    if (std::find(r.labels.begin(), r.labels.end(), 1) != r.labels.end()) {
      std::vector<double> points;
      for (double x : kTable1Points) {
        if (r.eigenfunctions.front().grid().index_of(x)) points.push_back(x);
      }
      if (!points.empty()) write_table1_csv(dir / "table1.csv", {table1_row(*v0, r, points)}, points);
    }
  }
  j["warnings"] = r.warnings;
  write_summary(dir, j);
}

std::string cell_name(double a, const std::optional<double>& v0) {
  std::ostringstream s;
  s << "a" << a;
  if (v0) s << "_v0" << *v0;
  return s.str();
}

void run_sweep(const ExperimentSpec& spec) {
  struct Cell {
    double a;
    std::optional<double> v0;
    std::optional<SpectralResult> result;
  };
  std::vector<Cell> cells;
  for (double a : spec.sweep_a) {
    if (spec.sweep_v0.empty()) {
      cells.push_back({a, std::nullopt, std::nullopt});
    } else {
      for (double v : spec.sweep_v0) cells.push_back({a, v, std::nullopt});
    }
  }
  const std::size_t workers = std::min(spec.solver.threads, cells.size());
  const std::size_t inner = std::max<std::size_t>(1, spec.solver.threads / std::max<std::size_t>(1, workers));
  parallel_for(cells.size(), workers, [&](std::size_t i) {
    Cell& cell = cells[i];
    SolverConfig config = spec.solver;
    config.a = cell.a;
    config.threads = inner;
    const Potential potential = cell.v0 ? Potential::finite_well(*cell.v0) : Potential::harmonic();
    cell.result = solve(config, potential, spec.basis);
    write_state_files(spec.output_dir / cell_name(cell.a, cell.v0), *cell.result);
  });

  auto out = open_out(spec.output_dir / "table.csv");
  write_table_header(out, spec.basis.labels());
  ordered_json j;
  j["config"] = config_json(spec);
  ordered_json jcells = ordered_json::array();
  std::set<std::string> warnings;
  std::vector<Table1Row> table1;
  for (const auto& cell : cells) {
    write_table_row(out, cell.a, cell.v0, *cell.result);
    ordered_json c;
    c["a"] = cell.a;
    if (cell.v0) c["v0"] = *cell.v0;
    c["directory"] = cell_name(cell.a, cell.v0);
    c["iterations_used"] = cell.result->iterations_used;
    c["converged"] = cell.result->all_converged();
    c["eigenvalues"] = cell.result->eigenvalues;
    c["states"] = states_json(*cell.result, cell.v0);
    jcells.push_back(c);
    for (const auto& w : cell.result->warnings) warnings.insert(w);
  }
  j["cells"] = jcells;
  j["warnings"] = std::vector<std::string>(warnings.begin(), warnings.end());
  write_summary(spec.output_dir, j);
}

void run_reference(const ExperimentSpec& spec) {
  const ReferenceRequest& req = spec.reference;
  const fs::path& dir = spec.output_dir;
  {
    auto out = open_out(dir / "infwell_energies.csv");
    out << "n,E\n";
    for (int n : req.infwell_levels) out << n << ',' << reference::infwell_energy(n) << '\n';
  }
  {
    auto out = open_out(dir / "detuning.csv");
    out << "a,b,delta\n";
    const auto& cuts = req.detuning_cutoffs;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      const double b = i + 1 < cuts.size() ? cuts[i + 1] : std::numeric_limits<double>::infinity();
      out << cuts[i] << ',' << b << ',' << reference::detuning(cuts[i], b) << '\n';
    }
  }
  const Grid grid(req.psi1_half_width, req.psi1_spacing);
  write_csv((dir / "airy_psi1.csv").string(), reference::AiryGroundState().sample(grid));
  const Grid well_grid(1.5, 0.005);
  for (int n : req.infwell_psi_levels) {
    write_csv((dir / ("infwell_psi_" + std::to_string(n) + ".csv")).string(),
              GridFunction::sample(well_grid, [n](double x) { return reference::infwell_psi(n, x); }));
  }
  ordered_json j;
  j["config"] = {{"mode", "reference"},
                 {"infwell_levels", req.infwell_levels},
                 {"infwell_psi_levels", req.infwell_psi_levels},
                 {"detuning_cutoffs", req.detuning_cutoffs},
                 {"psi1_half_width", req.psi1_half_width},
                 {"psi1_spacing", req.psi1_spacing},
                 {"airy_e1", reference::AiryGroundState::kE1},
                 {"output_dir", dir.string()}};
  write_summary(dir, j);
}

void run_apply_op(const ExperimentSpec& spec) {
  const Grid grid(spec.solver.a, spec.solver.dx);
  const GridFunction f = spec.apply_op.input_csv
                             ? read_csv(*spec.apply_op.input_csv)
                             : make_trial({spec.basis.kind, {spec.basis.indices.front()}, {}}, grid).front();
  if (!(f.grid() == grid)) throw GridMismatch("input function is not on the --a/--dx grid");
  const CauchyKernel kernel(grid, spec.solver.kernel);
  const fs::path& dir = spec.output_dir;
  {
    auto out = open_out(dir / "kernel_weights.csv");
    kernel.write_weights_csv(out);
  }
  ordered_json j;
  j["config"] = config_json(spec);
  j["z_max"] = kernel.z_max();
  j["diagonal_term"] = kernel.diagonal_term();
  j["nyquist_symbol"] = kernel.nyquist_symbol();
  if (spec.apply_op.steps == 0) {
    const GridFunction g = apply_cauchy(kernel, f);
    write_csv((dir / "apply_op.csv").string(), g);
    j["inner_product_f_Tf"] = inner_product(f, g);
  } else {
    const StrangStep s(spec.solver.h, kernel, spec.potential(), spec.solver.step);
    std::vector<StepTelemetry> rows;
    const GridFunction g =
        evolve(s, f, spec.apply_op.steps, [&rows](const StepTelemetry& t) { rows.push_back(t); });
    write_csv((dir / "evolved.csv").string(), g);
    auto out = open_out(dir / "telemetry.csv");
    write_telemetry_csv(out, rows);
    j["steps"] = spec.apply_op.steps;
    j["warnings"] = s.warnings();
  }
  write_summary(dir, j);
}

}  // namespace

void run(const ExperimentSpec& spec) {
  spec.validate();
  fs::create_directories(spec.output_dir);
  switch (spec.mode) {
    case Mode::Oscillator:
    case Mode::Well: run_single(spec); break;
    case Mode::ConvergenceSweep: run_sweep(spec); break;
    case Mode::Reference: run_reference(spec); break;
    case Mode::ApplyOp: run_apply_op(spec); break;
  }
}

}  // namespace cauchy
