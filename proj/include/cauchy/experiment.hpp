#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cauchy/potential.hpp"
#include "cauchy/spectral.hpp"

namespace cauchy {

enum class Mode { Oscillator, Well, ConvergenceSweep, Reference, ApplyOp };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

/// Bad user input; the front end maps it to a usage exit status.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Which GridFunctions the reference subcommand tabulates.
struct ReferenceRequest {
  std::vector<int> infwell_levels{1, 2, 3, 4, 5, 6, 7, 8};
  std::vector<int> infwell_psi_levels{1, 2};
  std::vector<double> detuning_cutoffs{50, 100, 200, 500};
  double psi1_half_width = 10.0;
  double psi1_spacing = 0.01;
};

/// Single operator application (or a short propagation) for debugging.
struct ApplyOpRequest {
  std::optional<std::string> input_csv;  // otherwise the first trial function
  std::size_t steps = 0;                 // 0: apply T once; >0: evolve with telemetry
};

struct ExperimentSpec {
  Mode mode = Mode::Oscillator;
  SolverConfig solver;
  double v0 = 500.0;  // well depth; ignored by the oscillator
  TrialBasis basis{BasisKind::Hermite, {0}, {}};
  std::vector<double> sweep_a;
  std::vector<double> sweep_v0;  // empty: harmonic potential in sweeps
  ReferenceRequest reference;
  ApplyOpRequest apply_op;
  std::filesystem::path output_dir = "out";

  Potential potential() const;
  void validate() const;
};

/// Parses a state selection against a basis kind. "n" picks the n lowest
/// states, "i,j,k" or "i..j" lists energy labels (1-based).
TrialBasis parse_states(std::string_view text, BasisKind kind);

/// Gram-Schmidt order given as energy labels; returns slot indices.
std::vector<std::size_t> parse_gs_order(std::string_view text, const TrialBasis& basis);

/// "1..8" or "1,2,5".
std::vector<int> parse_int_list(std::string_view text);
std::vector<double> parse_real_list(std::string_view text);

/// |psi_1(x)| at the given points, one row per well depth.
struct Table1Row {
  double v0;
  std::vector<double> values;
};

inline const std::vector<double> kTable1Points{2.0, 10.0, 40.0, 50.0};

/// Requires labels to contain 1 and every point to lie on the grid.
Table1Row table1_row(double v0, const SpectralResult& result,
                     const std::vector<double>& points = kTable1Points);
void write_table1_csv(const std::filesystem::path& path, const std::vector<Table1Row>& rows,
                      const std::vector<double>& points = kTable1Points);

/// For wells: converged and below the depth.
std::vector<bool> bound_flags(const SpectralResult& result, double v0);

/// Runs the experiment and writes its artifacts under spec.output_dir.
void run(const ExperimentSpec& spec);

}  // namespace cauchy
