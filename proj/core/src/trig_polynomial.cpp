#include "minkflow/trig_polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace minkflow {

namespace {

using Complex = std::complex<double>;

// Two-sided coefficients z_m, m in [-M, M], stored at index m + M.
std::vector<Complex> to_complex(const TrigPolynomial& p) {
  const int m_max = p.degree();
  std::vector<Complex> z(2 * m_max + 1);
  z[m_max] = p.cos_coef(0);
  for (int m = 1; m <= m_max; ++m) {
    z[m_max + m] = Complex(p.cos_coef(m), -p.sin_coef(m)) * 0.5;
    z[m_max - m] = Complex(p.cos_coef(m), p.sin_coef(m)) * 0.5;
  }
  return z;
}

}  // namespace

TrigPolynomial::TrigPolynomial(std::vector<double> cos_coefs, std::vector<double> sin_coefs)
    : cos_(std::move(cos_coefs)), sin_(std::move(sin_coefs)) {
  if (cos_.empty()) cos_.push_back(0.0);
  const std::size_t n = std::max(cos_.size(), sin_.size());
  cos_.resize(n, 0.0);
  sin_.resize(n, 0.0);
  sin_[0] = 0.0;
}

double TrigPolynomial::operator()(double t) const { return derivative(t, 0); }

double TrigPolynomial::derivative(double t, int n) const {
  if (n < 0) throw std::invalid_argument("negative derivative order");
  double sum = n == 0 ? cos_[0] : 0.0;
  for (int m = 1; m <= degree(); ++m) {
    if (cos_[m] == 0.0 && sin_[m] == 0.0) continue;
    // d^n/dt^n of cos(mt) is m^n cos(mt + n pi/2); likewise for sin.
    const double phase = m * t + n * std::numbers::pi / 2.0;
    const double scale = std::pow(static_cast<double>(m), n);
    sum += scale * (cos_[m] * std::cos(phase) + sin_[m] * std::sin(phase));
  }
  return sum;
}

TrigPolynomial TrigPolynomial::differentiated(int n) const {
  TrigPolynomial out = *this;
  for (int k = 0; k < n; ++k) {
    TrigPolynomial next;
    next.cos_.assign(out.cos_.size(), 0.0);
    next.sin_.assign(out.sin_.size(), 0.0);
    for (int m = 1; m <= out.degree(); ++m) {
      next.cos_[m] = m * out.sin_[m];
      next.sin_[m] = -m * out.cos_[m];
    }
    out = std::move(next);
  }
  return out;
}

double TrigPolynomial::integrate(double t0, double t1) const {
  double sum = cos_[0] * (t1 - t0);
  for (int m = 1; m <= degree(); ++m) {
    sum += (cos_[m] * (std::sin(m * t1) - std::sin(m * t0)) -
            sin_[m] * (std::cos(m * t1) - std::cos(m * t0))) /
           m;
  }
  return sum;
}

TrigPolynomial operator+(const TrigPolynomial& a, const TrigPolynomial& b) {
  const int deg = std::max(a.degree(), b.degree());
  std::vector<double> c(deg + 1), s(deg + 1);
  for (int m = 0; m <= deg; ++m) {
    c[m] = a.cos_coef(m) + b.cos_coef(m);
    s[m] = a.sin_coef(m) + b.sin_coef(m);
  }
  return {std::move(c), std::move(s)};
}

TrigPolynomial operator*(double s, const TrigPolynomial& a) {
  TrigPolynomial out = a;
  for (auto& v : out.cos_) v *= s;
  for (auto& v : out.sin_) v *= s;
  return out;
}

TrigPolynomial operator*(const TrigPolynomial& a, const TrigPolynomial& b) {
  const auto za = to_complex(a);
  const auto zb = to_complex(b);
  const int ma = a.degree();
  const int mb = b.degree();
  const int deg = ma + mb;
  std::vector<Complex> z(2 * deg + 1);
  for (int i = -ma; i <= ma; ++i) {
    for (int j = -mb; j <= mb; ++j) {
      z[deg + i + j] += za[ma + i] * zb[mb + j];
    }
  }
  std::vector<double> c(deg + 1), s(deg + 1);
  c[0] = z[deg].real();
  for (int m = 1; m <= deg; ++m) {
    c[m] = 2.0 * z[deg + m].real();
    s[m] = -2.0 * z[deg + m].imag();
  }
  return {std::move(c), std::move(s)};
}

}  // namespace minkflow
