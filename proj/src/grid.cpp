#include "cauchy/grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace cauchy {

Grid::Grid(double half_width, double spacing)
    : half_width_(half_width), spacing_(spacing), size_(0), centre_(0.0) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw std::invalid_argument("grid half-width must be positive");
  }
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw std::invalid_argument("grid spacing must be positive");
  }
  const double intervals = 2.0 * half_width / spacing;
  const double rounded = std::round(intervals);
  if (std::abs(intervals - rounded) > 1e-9 * std::max(1.0, intervals)) {
    throw std::invalid_argument("grid spacing must divide the interval [-a, a]");
  }
  if (rounded < 2.0) {
    throw std::invalid_argument("grid needs at least 3 nodes");
  }
  size_ = static_cast<std::size_t>(rounded) + 1;
  centre_ = 0.5 * static_cast<double>(size_ - 1);
}

bool operator==(const Grid& l, const Grid& r) noexcept {
  const auto close = [](double p, double q) {
    return std::abs(p - q) <= 1e-12 * std::max(std::abs(p), std::abs(q));
  };
  return l.size_ == r.size_ && close(l.spacing_, r.spacing_) &&
         close(l.half_width_, r.half_width_);
}

std::optional<std::size_t> Grid::index_of(double x) const noexcept {
  const double pos = x / spacing_ + centre_;
  const double r = std::round(pos);
  if (r < 0.0 || r > static_cast<double>(size_ - 1)) return std::nullopt;
  if (std::abs(pos - r) > 1e-9) return std::nullopt;
  return static_cast<std::size_t>(r);
}

std::size_t Grid::nearest_index(double x) const noexcept {
  const double pos = std::round(x / spacing_ + centre_);
  if (pos <= 0.0) return 0;
  if (pos >= static_cast<double>(size_ - 1)) return size_ - 1;
  return static_cast<std::size_t>(pos);
}

bool Grid::contains(double x) const noexcept {
  const double edge = centre_ * spacing_;
  return x >= -edge && x <= edge;
}

std::optional<std::size_t> first_non_finite(std::span<const double> values) {
  const auto it = std::find_if(values.begin(), values.end(),
                               [](double v) { return !std::isfinite(v); });
  if (it == values.end()) return std::nullopt;
  return static_cast<std::size_t>(it - values.begin());
}

GridFunction::GridFunction(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("sample count " + std::to_string(values_.size()) +
                                " does not match grid size " +
                                std::to_string(grid_.size()));
  }
  if (const auto bad = first_non_finite(values_)) {
    std::ostringstream msg;
    msg << "non-finite sample at node " << *bad << " (x = " << grid_.node(*bad)
        << ")";
    throw std::domain_error(msg.str());
  }
}

GridFunction GridFunction::zeros(const Grid& grid) {
  return GridFunction(grid, std::vector<double>(grid.size(), 0.0));
}

GridFunction GridFunction::sample(const Grid& grid,
                                  const std::function<double(double)>& fn) {
  std::vector<double> values(grid.size());
  for (std::size_t j = 0; j < values.size(); ++j) values[j] = fn(grid.node(j));
  return GridFunction(grid, std::move(values));
}

double GridFunction::at(double x) const noexcept {
  if (!grid_.contains(x)) return 0.0;
  const double pos = x / grid_.spacing() + 0.5 * static_cast<double>(size() - 1);
  const auto lo = std::min(static_cast<std::size_t>(std::floor(pos)), size() - 2);
  const double t = pos - static_cast<double>(lo);
  return (1.0 - t) * values_[lo] + t * values_[lo + 1];
}

namespace {

void require_same_grid(const GridFunction& f, const GridFunction& g) {
  if (!(f.grid() == g.grid())) {
    throw GridMismatch("grid functions live on different grids");
  }
}

}  // namespace

double inner_product(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f, g);
  const auto a = f.values();
  const auto b = g.values();
  const std::size_t n = a.size();
  double interior = 0.0;
  for (std::size_t j = 1; j + 1 < n; ++j) interior += a[j] * b[j];
  const double ends = 0.5 * (a[0] * b[0] + a[n - 1] * b[n - 1]);
  return f.grid().spacing() * (interior + ends);
}

double norm(const GridFunction& f) { return std::sqrt(inner_product(f, f)); }

GridFunction scaled(const GridFunction& f, double factor) {
  std::vector<double> out(f.values().begin(), f.values().end());
  for (double& v : out) v *= factor;
  return GridFunction(f.grid(), std::move(out));
}

GridFunction axpy(const GridFunction& f, double factor, const GridFunction& g) {
  require_same_grid(f, g);
  std::vector<double> out(f.values().begin(), f.values().end());
  const auto b = g.values();
  for (std::size_t j = 0; j < out.size(); ++j) out[j] += factor * b[j];
  return GridFunction(f.grid(), std::move(out));
}

namespace {

double largest_magnitude_sample(const GridFunction& f) {
  const auto v = f.values();
  const auto it = std::max_element(v.begin(), v.end(), [](double l, double r) {
    return std::abs(l) < std::abs(r);
  });
  return *it;
}

}  // namespace

GridFunction orient(const GridFunction& f) {
  return largest_magnitude_sample(f) < 0.0 ? scaled(f, -1.0) : f;
}

GridFunction normalize(const GridFunction& f, SignConvention sign) {
  const double n = norm(f);
  if (!(n > 0.0)) throw std::domain_error("cannot normalize null vector");
  double factor = 1.0 / n;
  if (sign == SignConvention::LargestPositive && largest_magnitude_sample(f) < 0.0) {
    factor = -factor;
  }
  return scaled(f, factor);
}

GridFunction restrict_or_embed(const GridFunction& f, const Grid& target) {
  const Grid& source = f.grid();
  if (std::abs(source.spacing() - target.spacing()) > 1e-12 * target.spacing()) {
    throw GridMismatch("restrict_or_embed requires equal grid spacing");
  }
  const auto ns = static_cast<long long>(source.size());
  const auto nt = static_cast<long long>(target.size());
  if ((nt - ns) % 2 != 0) {
    throw GridMismatch("grids are not node-aligned");
  }
  const long long shift = (nt - ns) / 2;
  std::vector<double> out(target.size(), 0.0);
  const auto v = f.values();
  for (long long j = 0; j < ns; ++j) {
    const long long t = j + shift;
    if (t >= 0 && t < nt) out[static_cast<std::size_t>(t)] = v[static_cast<std::size_t>(j)];
  }
  return GridFunction(target, std::move(out));
}

void write_csv(std::ostream& out, const GridFunction& f) {
  out << "x,value\n";
  out << std::setprecision(17);
  const auto v = f.values();
  for (std::size_t j = 0; j < v.size(); ++j) {
    out << f.grid().node(j) << ',' << v[j] << '\n';
  }
}

void write_csv(const std::string& path, const GridFunction& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_csv(out, f);
  if (!out) throw std::runtime_error("failed writing " + path);
}

GridFunction read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("x,value", 0) != 0) {
    throw std::invalid_argument("grid function CSV must start with header x,value");
  }
  std::vector<double> xs;
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("malformed CSV row: " + line);
    }
    xs.push_back(std::stod(line.substr(0, comma)));
    values.push_back(std::stod(line.substr(comma + 1)));
  }
  if (xs.size() < 3) throw std::invalid_argument("grid function CSV needs >= 3 rows");
  const double a = xs.back();
  const double dx = 2.0 * a / static_cast<double>(xs.size() - 1);
  Grid grid(a, dx);
  if (std::abs(xs.front() + a) > 1e-9 * std::max(1.0, a)) {
    throw std::invalid_argument("CSV nodes are not symmetric about 0");
  }
  return GridFunction(grid, std::move(values));
}

GridFunction read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_csv(in);
}

}  // namespace cauchy
