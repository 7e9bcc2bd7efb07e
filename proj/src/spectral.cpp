#include "cauchy/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cauchy/parallel.hpp"

namespace cauchy {

std::size_t thread_cap() {
  if (const char* env = std::getenv("CAUCHY_SPECTRA_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string_view to_string(BasisKind kind) {
  return kind == BasisKind::Hermite ? "hermite" : "box_trig";
}

BasisKind parse_basis_kind(std::string_view text) {
  if (text == "hermite") return BasisKind::Hermite;
  if (text == "box_trig" || text == "box") return BasisKind::BoxTrig;
  throw std::invalid_argument("unknown trial basis kind '" + std::string(text) + "'");
}

namespace {

std::vector<std::size_t> validated_order(std::vector<std::size_t> order, std::size_t n) {
  if (order.empty()) {
    order.resize(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    return order;
  }
  if (order.size() != n) {
    throw std::invalid_argument("Gram-Schmidt order has " + std::to_string(order.size()) +
                                " entries for " + std::to_string(n) + " slots");
  }
  std::vector<bool> seen(n, false);
  for (std::size_t s : order) {
    if (s >= n || seen[s]) {
      throw std::invalid_argument("Gram-Schmidt order is not a permutation of the slots");
    }
    seen[s] = true;
  }
  return order;
}

}  // namespace

std::vector<std::size_t> TrialBasis::resolved_order() const {
  return validated_order(gs_order, indices.size());
}

std::vector<int> TrialBasis::labels() const {
  std::vector<int> out;
  out.reserve(indices.size());
  for (int i : indices) out.push_back(kind == BasisKind::Hermite ? i + 1 : i);
  return out;
}

double hermite_function(int degree, double x) {
  if (degree < 0) throw std::invalid_argument("Hermite degree must be >= 0");
  // psi_{i+1} = sqrt(2/(i+1)) x psi_i - sqrt(i/(i+1)) psi_{i-1}
  double prev = 0.0;
  double cur = std::exp(-0.5 * x * x) / std::sqrt(std::sqrt(std::numbers::pi));
  for (int i = 0; i < degree; ++i) {
    const double di = static_cast<double>(i);
    const double next = std::sqrt(2.0 / (di + 1.0)) * x * cur - std::sqrt(di / (di + 1.0)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double box_trig_function(int n, double x) {
  if (n < 1) throw std::invalid_argument("box trial index must be >= 1");
  if (std::abs(x) >= 1.0) return 0.0;
  const double arg = n * std::numbers::pi * x / 2.0;
  return n % 2 == 1 ? std::cos(arg) : std::sin(arg);
}

std::vector<GridFunction> make_trial(const TrialBasis& basis, const Grid& grid) {
  if (basis.indices.empty()) throw std::invalid_argument("trial basis is empty");
  std::set<int> distinct(basis.indices.begin(), basis.indices.end());
  if (distinct.size() != basis.indices.size()) {
    throw std::invalid_argument("trial basis indices must be distinct");
  }
  std::vector<GridFunction> out;
  out.reserve(basis.indices.size());
  for (int idx : basis.indices) {
    GridFunction f = basis.kind == BasisKind::Hermite
                         ? GridFunction::sample(grid, [idx](double x) { return hermite_function(idx, x); })
                         : GridFunction::sample(grid, [idx](double x) { return box_trig_function(idx, x); });
    out.push_back(normalize(f, SignConvention::Preserve));
  }
  return out;
}

std::vector<GridFunction> gram_schmidt_ordered(const std::vector<GridFunction>& fs,
                                               const std::vector<std::size_t>& order) {
  const auto resolved = validated_order(order, fs.size());
  std::vector<std::optional<GridFunction>> out(fs.size());
  std::vector<std::size_t> done;
  done.reserve(fs.size());
  for (std::size_t slot : resolved) {
    const double original = norm(fs[slot]);
    std::vector<double> v(fs[slot].values().begin(), fs[slot].values().end());
    for (std::size_t q : done) {
      const GridFunction current(fs[slot].grid(), v);
      const double c = inner_product(*out[q], current);
      const auto basis = out[q]->values();
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= c * basis[j];
    }
    GridFunction projected(fs[slot].grid(), std::move(v));
    const double remaining = norm(projected);
    if (!(remaining >= 1e-10 * std::max(original, 1e-300)) || !(remaining > 0.0)) {
      throw std::runtime_error("trial set degenerated: slot " + std::to_string(slot) +
                               " is linearly dependent on earlier slots");
    }
    out[slot] = scaled(projected, 1.0 / remaining);
    done.push_back(slot);
  }
  std::vector<GridFunction> result;
  result.reserve(fs.size());
  for (auto& f : out) result.push_back(std::move(*f));
  return result;
}

namespace {

double log_expectation(const StrangStep& s, const GridFunction& f, const GridFunction& sf) {
  const double e = inner_product(f, sf);
  if (!(e > 0.0)) {
    std::ostringstream msg;
    msg << "non-positive expectation <f, S f> = " << e
        << "; the iteration diverged or h*V is too large";
    throw std::runtime_error(msg.str());
  }
  return -std::log(e) / s.h();
}

}  // namespace

double energy_estimate(const StrangStep& s, const GridFunction& f) {
  const double n = norm(f);
  if (std::abs(n - 1.0) > 1e-6) {
    throw std::invalid_argument("energy_estimate needs a normalized state");
  }
  return log_expectation(s, f, s.apply(f));
}

void SolverConfig::validate() const {
  if (!(h > 0.0)) throw std::invalid_argument("h must be positive");
  if (!(a >= 1.0)) throw std::invalid_argument("a must be at least 1");
  if (!(dx > 0.0)) throw std::invalid_argument("dx must be positive");
  if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
  if (check_every < 1) throw std::invalid_argument("check_every must be at least 1");
  if (!(energy_tol > 0.0)) throw std::invalid_argument("energy_tol must be positive");
  Grid(a, dx);  // divisibility and size checks
}

std::vector<double> SpectralResult::sorted_eigenvalues() const {
  std::vector<double> out = eigenvalues;
  std::sort(out.begin(), out.end());
  return out;
}

bool SpectralResult::all_converged() const {
  return std::all_of(converged.begin(), converged.end(), [](bool b) { return b; });
}

SpectralResult solve(const SolverConfig& config, const Potential& potential,
                     const TrialBasis& basis) {
  config.validate();
  const Grid grid(config.a, config.dx);
  return solve(config, potential, make_trial(basis, grid), basis.resolved_order(),
               basis.labels());
}

SpectralResult solve(const SolverConfig& config, const Potential& potential,
                     std::vector<GridFunction> initial, std::vector<std::size_t> gs_order,
                     std::vector<int> labels) {
  config.validate();
  if (initial.empty()) throw std::invalid_argument("solve needs at least one trial function");
  const Grid grid(config.a, config.dx);
  for (const auto& f : initial) {
    if (!(f.grid() == grid)) throw GridMismatch("trial function is not on the solver grid");
  }
  const std::size_t n = initial.size();
  const auto order = validated_order(std::move(gs_order), n);
  if (labels.empty()) {
    labels.resize(n);
    std::iota(labels.begin(), labels.end(), 1);
  }

  const StrangStep s(config.h, CauchyKernel(grid, config.kernel), potential, config.step);

  SpectralResult result;
  result.labels = std::move(labels);
  result.warnings = s.warnings();
  result.energy_history.assign(n, {});
  for (auto& h : result.energy_history) h.reserve(config.k_max + 1);
  result.converged.assign(n, false);

  std::vector<GridFunction> phi = gram_schmidt_ordered(initial, order);
  std::vector<std::optional<GridFunction>> psi(n);
  std::vector<double> energies(n, 0.0);
  const std::size_t workers = std::min(config.threads, n);

  for (std::size_t k = 0;; ++k) {
    parallel_for(n, workers, [&](std::size_t i) {
      psi[i] = s.apply(phi[i]);
      energies[i] = log_expectation(s, phi[i], *psi[i]);
    });
    for (std::size_t i = 0; i < n; ++i) result.energy_history[i].push_back(energies[i]);

    bool stop = k >= config.k_max;
    if (k >= config.check_every && k % config.check_every == 0) {
      bool all = true;
      for (std::size_t i = 0; i < n; ++i) {
        const auto& hist = result.energy_history[i];
        const bool ok = std::abs(hist[k] - hist[k - config.check_every]) < config.energy_tol;
        result.converged[i] = ok;
        all = all && ok;
      }
      stop = stop || all;
    }
    if (stop) {
      result.iterations_used = k;
      break;
    }
    std::vector<GridFunction> next;
    next.reserve(n);
    for (auto& p : psi) next.push_back(std::move(*p));
    phi = gram_schmidt_ordered(next, order);
  }

  result.eigenvalues = energies;
  result.eigenfunctions.reserve(n);
  for (const auto& f : phi) result.eigenfunctions.push_back(orient(f));
  return result;
}

int count_nodes(const GridFunction& f, double lo, double hi, double node_eps) {
  if (!(lo < hi)) return 0;
  const Grid& g = f.grid();
  int changes = 0;
  int last_sign = 0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double x = g.node(j);
    if (x < lo || x > hi) continue;
    const double v = f[j];
    if (std::abs(v) <= node_eps) continue;
    const int sign = v > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++changes;
    last_sign = sign;
  }
  return changes;
}

}  // namespace cauchy
