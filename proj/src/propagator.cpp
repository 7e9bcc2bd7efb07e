#include "cauchy/propagator.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace cauchy {

StrangStep::StrangStep(double h, CauchyKernel kernel, Potential potential, StepOptions options)
    : h_(h), kernel_(std::move(kernel)), potential_(std::move(potential)), options_(options) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw std::invalid_argument("time step h must be positive");
  }
  precompute();
}

StrangStep::StrangStep(ZeroTimeTag, CauchyKernel kernel, Potential potential)
    : h_(0.0), kernel_(std::move(kernel)), potential_(std::move(potential)) {
  precompute();
}

StrangStep StrangStep::zero_time(CauchyKernel kernel, Potential potential) {
  return StrangStep(ZeroTimeTag{}, std::move(kernel), std::move(potential));
}

void StrangStep::precompute() {
  const GridFunction v = potential_.sample(kernel_.grid());
  half_exp_v_.resize(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) half_exp_v_[j] = std::exp(-0.5 * h_ * v[j]);

  if (potential_.kind() == PotentialKind::FiniteWell && h_ * potential_.depth() >= 0.5) {
    std::ostringstream msg;
    msg << "h*V0 = " << h_ * potential_.depth()
        << " >= 1/2: splitting error is not small for this well depth";
    warnings_.push_back(msg.str());
  }
  if (!options_.quadratic_kinetic && h_ * kernel_.nyquist_symbol() >= 2.0) {
    std::ostringstream msg;
    msg << "h*lambda_max = " << h_ * kernel_.nyquist_symbol()
        << " >= 2: the linear kinetic factor amplifies grid-scale modes";
    warnings_.push_back(msg.str());
  }
}

GridFunction StrangStep::apply(const GridFunction& f) const {
  if (!(f.grid() == grid())) {
    throw GridMismatch("state does not live on the step's grid");
  }
  const std::size_t n = f.size();
  const auto in = f.values();
  std::vector<double> g(n);
  for (std::size_t j = 0; j < n; ++j) g[j] = half_exp_v_[j] * in[j];
  const GridFunction gf(grid(), std::move(g));

  // the kernel refuses to build a non-finite result; report it as a step failure
  auto kinetic = [this](const GridFunction& u) {
    try {
      return kernel_.apply(u);
    } catch (const std::domain_error& e) {
      throw std::runtime_error(std::string("Strang step overflowed in T: ") + e.what());
    }
  };
  const GridFunction tg = kinetic(gf);
  std::vector<double> out(n);
  const auto gv = gf.values();
  const auto tv = tg.values();
  for (std::size_t j = 0; j < n; ++j) out[j] = gv[j] - h_ * tv[j];
  if (options_.quadratic_kinetic) {
    const GridFunction ttg = kinetic(tg);
    const auto t2 = ttg.values();
    for (std::size_t j = 0; j < n; ++j) out[j] += 0.5 * h_ * h_ * t2[j];
  }
  for (std::size_t j = 0; j < n; ++j) out[j] *= half_exp_v_[j];

  if (const auto bad = first_non_finite(out)) {
    std::ostringstream msg;
    msg << "Strang step produced a non-finite value at node " << *bad
        << " (x = " << grid().node(*bad) << "); h may be too large or the state corrupted";
    throw std::runtime_error(msg.str());
  }
  return GridFunction(grid(), std::move(out));
}

GridFunction step(const StrangStep& s, const GridFunction& f) { return s.apply(f); }

GridFunction evolve(const StrangStep& s, GridFunction f, std::size_t k,
                    const std::function<void(const StepTelemetry&)>& telemetry) {
  if (k == 0) throw std::invalid_argument("evolve needs at least one step");
  for (std::size_t i = 0; i < k; ++i) {
    GridFunction next = s.apply(f);
    if (telemetry) {
      StepTelemetry row;
      row.k = i;
      const double nn = inner_product(f, f);
      row.norm = std::sqrt(nn);
      const double ratio = inner_product(f, next) / nn;
      row.energy_estimate = ratio > 0.0 && s.h() > 0.0
                                ? -std::log(ratio) / s.h()
                                : std::numeric_limits<double>::quiet_NaN();
      telemetry(row);
    }
    f = std::move(next);
  }
  return f;
}

void write_telemetry_csv(std::ostream& out, std::span<const StepTelemetry> rows) {
  out << "k,norm,energy_estimate\n" << std::setprecision(17);
  for (const auto& r : rows) out << r.k << ',' << r.norm << ',' << r.energy_estimate << '\n';
}

}  // namespace cauchy
