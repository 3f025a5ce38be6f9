#include "twistconv/conv_inverse.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "twistconv/errors.hpp"

namespace twistconv {

namespace {

// Total FFT points are capped so a buffer never exceeds ~256 MB.
constexpr std::int64_t kMaxGridPoints = std::int64_t{1} << 24;

std::int64_t next_pow2(std::int64_t v) {
  std::int64_t m = 1;
  while (m < v) m <<= 1;
  return m;
}

std::int64_t grid_points(std::int64_t m, int rank) {
  std::int64_t pts = 1;
  for (int t = 0; t < rank; ++t) {
    if (pts > kMaxGridPoints / m) return kMaxGridPoints + 1;
    pts *= m;
  }
  return pts;
}

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// FFTW plan creation/destruction is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void run_fft(std::vector<Complex>& buf, std::int64_t m, int rank, int sign) {
  std::vector<int> dims(static_cast<std::size_t>(rank), static_cast<int>(m));
  auto* data = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_plan plan = nullptr;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft(rank, dims.data(), data, data, sign, FFTW_ESTIMATE);
  }
  if (plan == nullptr) {
    throw std::runtime_error("conv_inverse: FFT planning failed");
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
}

// Embed the 2d-indexed coefficients into the rank-2d cube, indices mod m.
// With m >= 2*(radius+1) distinct support points cannot collide.
void embed(const Sequence& c, std::int64_t m, std::vector<Complex>& buf) {
  const int d = c.dim();
  const int rank = 2 * d;
  for (const auto& [kl, v] : c.entries()) {
    std::int64_t flat = 0;
    for (int t = 0; t < rank; ++t) {
      const auto u = static_cast<std::size_t>(t < d ? t : t - d);
      const std::int64_t comp = t < d ? kl.first[u] : kl.second[u];
      std::int64_t g = comp % m;
      if (g < 0) g += m;
      flat = flat * m + g;
    }
    buf[static_cast<std::size_t>(flat)] += v;
  }
}

void validate_dim(const Sequence& c, const char* who) {
  if (c.dim() < 1 || c.dim() > 2) {
    throw std::invalid_argument(std::string(who) + ": only d = 1 or 2 is supported");
  }
}

}  // namespace

double symbol_min_modulus(const Sequence& c, std::int64_t grid_size) {
  validate_dim(c, "symbol_min_modulus");
  const std::int64_t min_m = 2 * (c.support_radius() + 1);
  if (grid_size < min_m) {
    throw std::invalid_argument("symbol_min_modulus: grid of " + std::to_string(grid_size) +
                                " cannot separate support radius " +
                                std::to_string(c.support_radius()));
  }
  const int rank = 2 * c.dim();
  const std::int64_t pts = grid_points(grid_size, rank);
  if (pts > kMaxGridPoints) {
    throw std::invalid_argument("symbol_min_modulus: grid exceeds the memory cap");
  }
  std::vector<Complex> buf(static_cast<std::size_t>(pts), Complex{0.0, 0.0});
  embed(c, grid_size, buf);
  run_fft(buf, grid_size, rank, FFTW_FORWARD);
  double mn = std::numeric_limits<double>::infinity();
  for (const Complex& z : buf) mn = std::min(mn, std::abs(z));
  return mn;
}

ConvInverseResult invert_convolution_detailed(const Sequence& c, const InversionConfig& cfg,
                                              std::optional<int> coset_p) {
  validate_dim(c, "invert_convolution");
  if (cfg.symbol_floor <= 0.0 || cfg.tail_tol <= 0.0 || cfg.residual_tol <= 0.0) {
    throw std::invalid_argument("invert_convolution: tolerances must be positive");
  }
  if (cfg.grid_size < 2 || cfg.max_refine < 0) {
    throw std::invalid_argument("invert_convolution: bad grid configuration");
  }
  if (c.empty()) {
    throw NotInvertibleError("invert_convolution: the zero sequence is not invertible");
  }

  const int d = c.dim();
  const int rank = 2 * d;
  const std::int64_t min_m = next_pow2(2 * (c.support_radius() + 1));
  std::int64_t m = std::max(next_pow2(cfg.grid_size), min_m);
  // A start grid too large for the cap falls back to the largest feasible cube.
  while (m > min_m && grid_points(m, rank) > kMaxGridPoints) m >>= 1;
  if (grid_points(m, rank) > kMaxGridPoints) {
    throw std::invalid_argument("invert_convolution: support too large for the FFT memory cap");
  }

  double symbol_min = 0.0;
  for (int attempt = 0; attempt <= cfg.max_refine; ++attempt) {
    if (attempt > 0) {
      if (grid_points(m * 2, rank) > kMaxGridPoints) break;
      m *= 2;
    }
    const std::int64_t pts = grid_points(m, rank);
    std::vector<Complex> buf(static_cast<std::size_t>(pts), Complex{0.0, 0.0});
    embed(c, m, buf);
    run_fft(buf, m, rank, FFTW_FORWARD);
    symbol_min = std::numeric_limits<double>::infinity();
    for (const Complex& z : buf) symbol_min = std::min(symbol_min, std::abs(z));
    if (symbol_min < cfg.symbol_floor) continue;  // refining can only confirm the verdict

    for (Complex& z : buf) z = 1.0 / z;
    run_fft(buf, m, rank, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(pts);

    // Unwrap to the centered window [-m/2, m/2)^{2d}; the outermost shell
    // (coordinates -m/2 and m/2-1) measures the aliasing tail.
    Sequence e(d);
    double boundary_max = 0.0;
    std::vector<std::int64_t> coord(static_cast<std::size_t>(rank), 0);
    const std::int64_t half = m / 2;
    for (std::int64_t flat = 0; flat < pts; ++flat) {
      const Complex v = buf[static_cast<std::size_t>(flat)] * scale;
      const double mag = std::abs(v);
      bool on_boundary = false;
      for (int t = 0; t < rank; ++t) {
        const std::int64_t g = coord[static_cast<std::size_t>(t)];
        if (g == half || g == half - 1) on_boundary = true;
      }
      if (on_boundary) boundary_max = std::max(boundary_max, mag);
      if (mag > cfg.tail_tol) {
        Index k(static_cast<std::size_t>(d)), l(static_cast<std::size_t>(d));
        for (int t = 0; t < rank; ++t) {
          const std::int64_t g = coord[static_cast<std::size_t>(t)];
          const std::int64_t signed_g = g < half ? g : g - m;
          if (t < d) {
            k[static_cast<std::size_t>(t)] = signed_g;
          } else {
            l[static_cast<std::size_t>(t - d)] = signed_g;
          }
        }
        e.set(std::move(k), std::move(l), v);
      }
      for (int t = rank - 1; t >= 0; --t) {
        auto& g = coord[static_cast<std::size_t>(t)];
        if (++g < m) break;
        g = 0;
      }
    }

    if (coset_p && *coset_p > 1) {
      const int p = *coset_p;
      Sequence kept(d);
      double off_mass = 0.0;
      for (const auto& [kl, v] : e.entries()) {
        bool off = false;
        for (std::int64_t comp : kl.second) {
          if (comp % p != 0) off = true;
        }
        if (off) {
          off_mass = std::max(off_mass, std::abs(v));
        } else {
          kept.set(kl.first, kl.second, v);
        }
      }
      if (off_mass > cfg.tail_tol) continue;  // roundoff left the coset: refine
      e = std::move(kept);
    }

    const double residual = conv_residual(c, e);
    if (boundary_max < cfg.tail_tol && residual <= cfg.residual_tol) {
      return ConvInverseResult{std::move(e), symbol_min, m, attempt};
    }
  }

  if (symbol_min < cfg.symbol_floor) {
    throw NotInvertibleError("invert_convolution: symbol modulus " + fmt_g(symbol_min) +
                             " below floor " + fmt_g(cfg.symbol_floor));
  }
  throw TruncationNotConvergedError(
      "invert_convolution: tail/residual criteria unmet at maximum refinement");
}

Sequence invert_convolution(const Sequence& c, const InversionConfig& cfg) {
  return invert_convolution_detailed(c, cfg).inverse;
}

double conv_residual(const Sequence& c, const Sequence& e) {
  Sequence r = convolve(c, e);
  const Index zero(static_cast<std::size_t>(c.dim()), 0);
  r.accumulate(zero, zero, Complex{-1.0, 0.0});
  return l1_norm(r);
}

}  // namespace twistconv
