#include "minkflow/spectral.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <unsupported/Eigen/FFT>

namespace minkflow {

namespace {

using Complex = std::complex<double>;

Eigen::FFT<double>& fft_engine() {
  thread_local Eigen::FFT<double> engine;
  return engine;
}

std::vector<Complex> forward(std::span<const double> samples) {
  if (samples.size() < 4 || samples.size() % 2 != 0) {
    throw std::invalid_argument("periodic samples need an even count >= 4");
  }
  std::vector<double> in(samples.begin(), samples.end());
  std::vector<Complex> out;
  fft_engine().fwd(out, in);
  return out;
}

}  // namespace

PeriodicInterpolant::PeriodicInterpolant(std::span<const double> samples)
    : n_(static_cast<int>(samples.size())) {
  const auto spectrum = forward(samples);
  coefs_.resize(n_ / 2 + 1);
  for (int m = 0; m <= n_ / 2; ++m) coefs_[m] = spectrum[m] / static_cast<double>(n_);
}

double PeriodicInterpolant::operator()(double theta) const {
  const int half = n_ / 2;
  const Complex step = std::polar(1.0, theta);
  Complex rot = step;
  double sum = coefs_[0].real();
  for (int m = 1; m < half; ++m) {
    sum += 2.0 * (coefs_[m] * rot).real();
    rot *= step;
  }
  sum += coefs_[half].real() * std::cos(half * theta);
  return sum;
}

double PeriodicInterpolant::integral_from_zero(double theta) const {
  const int half = n_ / 2;
  const Complex step = std::polar(1.0, theta);
  Complex rot = step;
  double sum = coefs_[0].real() * theta;
  for (int m = 1; m < half; ++m) {
    // 2 Re[c_m (e^{i m theta} - 1) / (i m)]
    sum += 2.0 * (coefs_[m] * (rot - 1.0) / Complex(0.0, m)).real();
    rot *= step;
  }
  sum += coefs_[half].real() * std::sin(half * theta) / half;
  return sum;
}

PeriodicInterpolant PeriodicInterpolant::shifted(double c) const {
  PeriodicInterpolant out = *this;
  if (!out.coefs_.empty()) out.coefs_[0] += c;
  return out;
}

PeriodicPrimitive periodic_primitive(std::span<const double> samples) {
  const int n = static_cast<int>(samples.size());
  auto spectrum = forward(samples);
  PeriodicPrimitive out;
  out.mean = spectrum[0].real() / n;
  spectrum[0] = 0.0;
  spectrum[n / 2] = 0.0;
  for (int m = 1; m < n / 2; ++m) {
    spectrum[m] /= Complex(0.0, m);
    spectrum[n - m] = std::conj(spectrum[m]);
  }
  std::vector<Complex> back;
  fft_engine().inv(back, spectrum);
  out.values.resize(n);
  const double origin = back[0].real();
  for (int j = 0; j < n; ++j) out.values[j] = back[j].real() - origin;

  out.interpolant.n_ = n;
  out.interpolant.coefs_.resize(n / 2 + 1);
  out.interpolant.coefs_[0] = -origin;
  for (int m = 1; m <= n / 2; ++m) out.interpolant.coefs_[m] = spectrum[m] / static_cast<double>(n);
  return out;
}

std::pair<PeriodicPrimitive, PeriodicPrimitive> periodic_primitive_pair(std::span<const double> u,
                                                                         std::span<const double> v) {
  const int n = static_cast<int>(u.size());
  if (n < 4 || n % 2 != 0 || v.size() != u.size()) {
    throw std::invalid_argument("periodic samples need matching even counts >= 4");
  }
  std::vector<Complex> z(n);
  for (int j = 0; j < n; ++j) z[j] = Complex(u[j], v[j]);
  std::vector<Complex> spec;
  fft_engine().fwd(spec, z);

  std::pair<PeriodicPrimitive, PeriodicPrimitive> out;
  auto& [pu, pv] = out;
  pu.mean = spec[0].real() / n;
  pv.mean = spec[0].imag() / n;
  pu.interpolant.n_ = pv.interpolant.n_ = n;
  pu.interpolant.coefs_.assign(n / 2 + 1, Complex{});
  pv.interpolant.coefs_.assign(n / 2 + 1, Complex{});
  spec[0] = 0.0;
  spec[n / 2] = 0.0;
  for (int m = 1; m < n / 2; ++m) {
    const Complex zp = spec[m];
    const Complex zm = std::conj(spec[n - m]);
    const Complex um = 0.5 * (zp + zm) / Complex(0.0, m);
    const Complex vm = Complex(0.0, -0.5) * (zp - zm) / Complex(0.0, m);
    pu.interpolant.coefs_[m] = um / static_cast<double>(n);
    pv.interpolant.coefs_[m] = vm / static_cast<double>(n);
    spec[m] /= Complex(0.0, m);
    spec[n - m] /= Complex(0.0, -m);
  }
  std::vector<Complex> back;
  fft_engine().inv(back, spec);
  const Complex origin = back[0];
  pu.values.resize(n);
  pv.values.resize(n);
  for (int j = 0; j < n; ++j) {
    pu.values[j] = back[j].real() - origin.real();
    pv.values[j] = back[j].imag() - origin.imag();
  }
  pu.interpolant.coefs_[0] = -origin.real();
  pv.interpolant.coefs_[0] = -origin.imag();
  return out;
}

std::vector<double> periodic_antiderivative(std::span<const double> samples, double* mean_out) {
  auto prim = periodic_primitive(samples);
  if (mean_out) *mean_out = prim.mean;
  return std::move(prim.values);
}

double periodic_integral(std::span<const double> samples) {
  const double h = 2.0 * std::numbers::pi / static_cast<double>(samples.size());
  return std::accumulate(samples.begin(), samples.end(), 0.0) * h;
}

}  // namespace minkflow
