#include "cauchy/cauchy_kernel.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <mutex>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace cauchy {

std::string_view to_string(ZMaxMode mode) {
  return mode == ZMaxMode::HalfWidth ? "a" : "2a";
}

ZMaxMode parse_z_max_mode(std::string_view text) {
  if (text == "a") return ZMaxMode::HalfWidth;
  if (text == "2a") return ZMaxMode::TwiceHalfWidth;
  throw std::invalid_argument("z_max_mode must be 'a' or '2a', got '" +
                              std::string(text) + "'");
}

namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};
using RealBuffer = std::unique_ptr<double[], FftwFree>;
using ComplexBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

RealBuffer alloc_real(std::size_t n) {
  auto* p = static_cast<double*>(fftw_malloc(sizeof(double) * n));
  if (p == nullptr) throw std::bad_alloc();
  return RealBuffer(p);
}

ComplexBuffer alloc_complex(std::size_t n) {
  auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (p == nullptr) throw std::bad_alloc();
  return ComplexBuffer(p);
}

bool is_smooth(std::size_t n) {
  for (std::size_t p : {2u, 3u, 5u, 7u}) {
    while (n % p == 0) n /= p;
  }
  return n == 1;
}

std::size_t smooth_length_at_least(std::size_t n) {
  while (!is_smooth(n)) ++n;
  return n;
}

constexpr double kPi = std::numbers::pi;

}  // namespace

struct CauchyKernel::State {
  Grid grid;
  KernelOptions options;
  double z_max = 0.0;
  std::size_t max_offset = 0;     // largest |m| with w_m != 0
  std::size_t reach = 0;          // min(max_offset, N - 1): offsets that matter on-grid
  std::vector<double> weights;    // w_0 .. w_reach, w_0 = 0
  double diagonal = 0.0;
  double nyquist = 0.0;

  std::size_t fft_length = 0;
  std::vector<std::complex<double>> kernel_hat;  // already scaled by 1/L
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  explicit State(const Grid& g, KernelOptions opt) : grid(g), options(opt) {}
  State(const State&) = delete;
  State& operator=(const State&) = delete;
  ~State() {
    std::lock_guard lock(planner_mutex());
    if (forward != nullptr) fftw_destroy_plan(forward);
    if (backward != nullptr) fftw_destroy_plan(backward);
  }

  double raw_weight(std::size_t m) const {
    const double dx = grid.spacing();
    double w = 0.0;
    if (m == 0) return 0.0;
    if (static_cast<double>(m) * dx <= z_max * (1.0 + 1e-12)) {
      w += 1.0 / (kPi * static_cast<double>(m * m) * dx);
    }
    // inner-cell PV term -f''(x) dx/(2 pi) with f'' from the 2dx central difference
    if (m == 2) w += 1.0 / (8.0 * kPi * dx);
    return w;
  }
};

CauchyKernel::CauchyKernel(const Grid& grid, KernelOptions options) {
  auto st = std::make_shared<State>(grid, options);
  const double a = grid.half_width();
  const double dx = grid.spacing();
  const std::size_t n = grid.size();

  st->z_max = options.z_max_mode == ZMaxMode::HalfWidth ? a : 2.0 * a;
  const auto pv_offsets = static_cast<std::size_t>(std::floor(st->z_max / dx + 1e-9));
  st->max_offset = std::max<std::size_t>(pv_offsets, 2);
  st->reach = std::min(st->max_offset, n - 1);

  st->weights.resize(st->reach + 1);
  for (std::size_t m = 0; m <= st->reach; ++m) st->weights[m] = st->raw_weight(m);

  // c = sum over all offsets out to z_max, smallest terms first
  double diag = 0.0;
  for (std::size_t m = st->max_offset; m >= 1; --m) diag += 2.0 * st->raw_weight(m);
  if (options.tail_compensation) diag += 2.0 / (kPi * st->z_max);
  st->diagonal = diag;

  double alternating = 0.0;
  for (std::size_t m = st->max_offset; m >= 1; --m) {
    alternating += (m % 2 == 1 ? 2.0 : -2.0) * st->raw_weight(m);
  }
  st->nyquist = diag + alternating;

  const std::size_t len = smooth_length_at_least(n + st->reach);
  st->fft_length = len;
  const std::size_t spectrum = len / 2 + 1;
  auto in = alloc_real(len);
  auto out = alloc_complex(spectrum);
  {
    std::lock_guard lock(planner_mutex());
    st->forward = fftw_plan_dft_r2c_1d(static_cast<int>(len), in.get(), out.get(),
                                       FFTW_ESTIMATE);
    st->backward = fftw_plan_dft_c2r_1d(static_cast<int>(len), out.get(), in.get(),
                                        FFTW_ESTIMATE);
  }
  if (st->forward == nullptr || st->backward == nullptr) {
    throw std::runtime_error("FFTW planning failed");
  }

  std::fill(in.get(), in.get() + len, 0.0);
  for (std::size_t m = 1; m <= st->reach; ++m) {
    in[m] = st->weights[m];
    in[len - m] = st->weights[m];
  }
  fftw_execute_dft_r2c(st->forward, in.get(), out.get());
  st->kernel_hat.resize(spectrum);
  const double scale = 1.0 / static_cast<double>(len);
  for (std::size_t k = 0; k < spectrum; ++k) {
    st->kernel_hat[k] = std::complex<double>(out[k][0], out[k][1]) * scale;
  }
  state_ = std::move(st);
}

const Grid& CauchyKernel::grid() const noexcept { return state_->grid; }
const KernelOptions& CauchyKernel::options() const noexcept { return state_->options; }
double CauchyKernel::z_max() const noexcept { return state_->z_max; }
std::size_t CauchyKernel::max_offset() const noexcept { return state_->max_offset; }
double CauchyKernel::diagonal_term() const noexcept { return state_->diagonal; }
double CauchyKernel::nyquist_symbol() const noexcept { return state_->nyquist; }

double CauchyKernel::weight(long long offset) const noexcept {
  const auto m = static_cast<std::size_t>(offset < 0 ? -offset : offset);
  if (m > state_->max_offset) return 0.0;
  return state_->raw_weight(m);
}

namespace {

void require_grid(const CauchyKernel& k, const GridFunction& f) {
  if (!(k.grid() == f.grid())) {
    throw GridMismatch("function grid does not match the kernel grid");
  }
}

}  // namespace

GridFunction CauchyKernel::apply(const GridFunction& f) const {
  require_grid(*this, f);
  const State& st = *state_;
  const std::size_t n = f.size();
  const std::size_t len = st.fft_length;
  const std::size_t spectrum = len / 2 + 1;

  auto buf = alloc_real(len);
  auto hat = alloc_complex(spectrum);
  const auto v = f.values();
  std::copy(v.begin(), v.end(), buf.get());
  std::fill(buf.get() + n, buf.get() + len, 0.0);

  fftw_execute_dft_r2c(st.forward, buf.get(), hat.get());
  for (std::size_t k = 0; k < spectrum; ++k) {
    const std::complex<double> z(hat[k][0], hat[k][1]);
    const std::complex<double> p = z * st.kernel_hat[k];
    hat[k][0] = p.real();
    hat[k][1] = p.imag();
  }
  fftw_execute_dft_c2r(st.backward, hat.get(), buf.get());

  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = st.diagonal * v[i] - buf[i];
  return GridFunction(f.grid(), std::move(out));
}

GridFunction CauchyKernel::apply_direct(const GridFunction& f) const {
  require_grid(*this, f);
  const State& st = *state_;
  const auto v = f.values();
  const std::size_t n = v.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    const std::size_t lo = i > st.reach ? i - st.reach : 0;
    const std::size_t hi = std::min(n - 1, i + st.reach);
    for (std::size_t j = lo; j <= hi; ++j) {
      if (j == i) continue;
      acc += st.weights[j > i ? j - i : i - j] * v[j];
    }
    out[i] = st.diagonal * v[i] - acc;
  }
  return GridFunction(f.grid(), std::move(out));
}

void CauchyKernel::write_weights_csv(std::ostream& out) const {
  out << "offset,weight\n" << std::setprecision(17);
  out << 0 << ',' << state_->diagonal << '\n';
  for (std::size_t m = 1; m <= state_->max_offset; ++m) {
    out << m << ',' << -state_->raw_weight(m) << '\n';
  }
}

GridFunction apply_cauchy(const CauchyKernel& kernel, const GridFunction& f) {
  return kernel.apply(f);
}

}  // namespace cauchy
