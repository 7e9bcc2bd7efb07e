#include "cauchy/potential.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cauchy {

std::string_view to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::Harmonic:
      return "harmonic";
    case PotentialKind::FiniteWell:
      return "finite_well";
    case PotentialKind::Tabulated:
      return "tabulated";
  }
  return "unknown";
}

Potential::Potential(PotentialKind kind, double depth, std::optional<GridFunction> table)
    : kind_(kind), depth_(depth), table_(std::move(table)) {}

Potential Potential::harmonic() { return Potential(PotentialKind::Harmonic, 0.0, std::nullopt); }

Potential Potential::finite_well(double depth) {
  if (!(depth > 0.0) || !std::isfinite(depth)) {
    throw std::invalid_argument("finite well depth V0 must be positive");
  }
  return Potential(PotentialKind::FiniteWell, depth, std::nullopt);
}

Potential Potential::tabulated(GridFunction samples) {
  return Potential(PotentialKind::Tabulated, 0.0, std::move(samples));
}

double Potential::operator()(double x) const noexcept {
  switch (kind_) {
    case PotentialKind::Harmonic:
      return x * x;
    case PotentialKind::FiniteWell:
      return std::abs(x) < 1.0 ? 0.0 : depth_;
    case PotentialKind::Tabulated:
      return table_->at(x);
  }
  return 0.0;
}

GridFunction Potential::sample(const Grid& grid) const {
  if (kind_ == PotentialKind::Tabulated) {
    if (!(table_->grid() == grid)) {
      throw GridMismatch("tabulated potential lives on a different grid");
    }
    return *table_;
  }
  return GridFunction::sample(grid, [this](double x) { return (*this)(x); });
}

double Potential::max_on(const Grid& grid) const {
  const GridFunction v = sample(grid);
  const auto s = v.values();
  return *std::max_element(s.begin(), s.end());
}

std::string Potential::describe() const {
  std::ostringstream out;
  out << to_string(kind_);
  if (kind_ == PotentialKind::FiniteWell) out << "(V0=" << depth_ << ")";
  return out.str();
}

GridFunction apply_potential(const Potential& v, const GridFunction& f) {
  const GridFunction samples = v.sample(f.grid());
  std::vector<double> out(f.size());
  const auto a = samples.values();
  const auto b = f.values();
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = a[j] * b[j];
  return GridFunction(f.grid(), std::move(out));
}

double expectation_energy(const CauchyKernel& kernel, const Potential& v,
                          const GridFunction& f) {
  const double n = norm(f);
  if (std::abs(n - 1.0) > 1e-6) {
    throw std::invalid_argument("expectation_energy needs a normalized state (norm = " +
                                std::to_string(n) + ")");
  }
  const GridFunction hf = axpy(kernel.apply(f), 1.0, apply_potential(v, f));
  return inner_product(f, hf);
}

}  // namespace cauchy
