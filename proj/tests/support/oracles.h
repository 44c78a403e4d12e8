// tests/support/oracles.h

// Copyright 2026 mcse authors
// Apache 2.0

// Independent reference implementations used only to check the library:
// everything here favors directness over speed and shares no code with the
// paths it verifies.

#ifndef MCSE_TESTS_SUPPORT_ORACLES_H_
#define MCSE_TESTS_SUPPORT_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "mcse/types.h"

namespace mcse::test {

// ----- dense complex helpers -----

inline std::vector<cd> MatMul(const std::vector<cd>& A, const std::vector<cd>& B,
                              std::size_t n, std::size_t m, std::size_t p) {
  std::vector<cd> C(n * p, cd{0.0, 0.0});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t j = 0; j < p; ++j) C[i * p + j] += A[i * m + k] * B[k * p + j];
  return C;
}

// Gaussian elimination without pivoting, the most literal possible solve.
inline std::vector<cd> NaiveGaussianSolve(std::vector<cd> A, std::vector<cd> b,
                                          std::size_t k) {
  for (std::size_t col = 0; col < k; ++col) {
    for (std::size_t r = col + 1; r < k; ++r) {
      const cd f = A[r * k + col] / A[col * k + col];
      for (std::size_t c = col; c < k; ++c) A[r * k + c] -= f * A[col * k + c];
      b[r] -= f * b[col];
    }
  }
  std::vector<cd> x(k);
  for (std::size_t r = k; r-- > 0;) {
    cd acc = b[r];
    for (std::size_t c = r + 1; c < k; ++c) acc -= A[r * k + c] * x[c];
    x[r] = acc / A[r * k + r];
  }
  return x;
}

// Gauss-Jordan inverse (partial pivoting), for inverse-times-column oracles.
inline std::vector<cd> DenseInverse(std::vector<cd> A, std::size_t k) {
  std::vector<cd> inv(k * k, cd{0.0, 0.0});
  for (std::size_t i = 0; i < k; ++i) inv[i * k + i] = cd{1.0, 0.0};
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < k; ++r) {
      if (std::abs(A[r * k + col]) > std::abs(A[pivot * k + col])) pivot = r;
    }
    for (std::size_t c = 0; c < k; ++c) {
      std::swap(A[col * k + c], A[pivot * k + c]);
      std::swap(inv[col * k + c], inv[pivot * k + c]);
    }
    const cd d = A[col * k + col];
    for (std::size_t c = 0; c < k; ++c) {
      A[col * k + c] /= d;
      inv[col * k + c] /= d;
    }
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col) continue;
      const cd f = A[r * k + col];
      if (f == cd{0.0, 0.0}) continue;
      for (std::size_t c = 0; c < k; ++c) {
        A[r * k + c] -= f * A[col * k + c];
        inv[r * k + c] -= f * inv[col * k + c];
      }
    }
  }
  return inv;
}

// ----- cyclic Jacobi eigensolver for Hermitian matrices -----

struct EigenDecomposition {
  std::vector<double> values;   // descending
  std::vector<cd> vectors;      // column i is the eigenvector of values[i]
};

inline EigenDecomposition JacobiEigen(std::vector<cd> A, std::size_t k) {
  std::vector<cd> V(k * k, cd{0.0, 0.0});
  for (std::size_t i = 0; i < k; ++i) V[i * k + i] = cd{1.0, 0.0};

  double fro = 0.0;
  for (const cd& v : A) fro += std::norm(v);
  fro = std::sqrt(fro);
  const double tol = std::max(fro, 1e-300) * 1e-14;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < k; ++p)
      for (std::size_t q = p + 1; q < k; ++q) off += std::norm(A[p * k + q]);
    if (std::sqrt(2.0 * off) < tol) break;

    for (std::size_t p = 0; p < k; ++p) {
      for (std::size_t q = p + 1; q < k; ++q) {
        const cd z = A[p * k + q];
        const double zmag = std::abs(z);
        if (zmag < tol * 1e-2) continue;
        const cd u = z / zmag;  // phase of the off-diagonal entry
        const double a = A[p * k + p].real();
        const double b = A[q * k + q].real();
        const double tau = (b - a) / (2.0 * zmag);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        for (std::size_t i = 0; i < k; ++i) {
          const cd aip = A[i * k + p];
          const cd aiq = A[i * k + q];
          A[i * k + p] = c * aip - s * std::conj(u) * aiq;
          A[i * k + q] = s * u * aip + c * aiq;
        }
        for (std::size_t j = 0; j < k; ++j) {
          const cd apj = A[p * k + j];
          const cd aqj = A[q * k + j];
          A[p * k + j] = c * apj - s * u * aqj;
          A[q * k + j] = s * std::conj(u) * apj + c * aqj;
        }
        for (std::size_t i = 0; i < k; ++i) {
          const cd vip = V[i * k + p];
          const cd viq = V[i * k + q];
          V[i * k + p] = c * vip - s * std::conj(u) * viq;
          V[i * k + q] = s * u * vip + c * viq;
        }
      }
    }
  }

  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return A[i * k + i].real() > A[j * k + j].real();
  });

  EigenDecomposition out;
  out.values.resize(k);
  out.vectors.resize(k * k);
  for (std::size_t idx = 0; idx < k; ++idx) {
    out.values[idx] = A[order[idx] * k + order[idx]].real();
    for (std::size_t i = 0; i < k; ++i) out.vectors[i * k + idx] = V[i * k + order[idx]];
  }
  return out;
}

// ----- signal oracles -----

inline std::vector<double> NaiveConvolve(const std::vector<double>& x,
                                         const std::vector<double>& h) {
  std::vector<double> y(x.size() + h.size() - 1, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < h.size(); ++j) y[i + j] += x[i] * h[j];
  return y;
}

// Direct DFT of one windowed frame, one-sided.
inline std::vector<cd> DirectWindowedDft(const std::vector<double>& frame) {
  const std::size_t n = frame.size();
  std::vector<cd> out(n / 2 + 1);
  for (std::size_t f = 0; f <= n / 2; ++f) {
    cd acc{0.0, 0.0};
    for (std::size_t t = 0; t < n; ++t) {
      const double ang = -2.0 * M_PI * static_cast<double>(f) * static_cast<double>(t) /
                         static_cast<double>(n);
      acc += frame[t] * cd{std::cos(ang), std::sin(ang)};
    }
    out[f] = acc;
  }
  return out;
}

// Schroeder backward integration; RT60 from a least-squares line fit of the
// decay curve between -5 dB and -25 dB.
inline double SchroederRt60(const double* h, std::size_t n, double fs) {
  std::vector<double> energy(n);
  double acc = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    acc += h[i] * h[i];
    energy[i] = acc;
  }
  const double total = energy[0];
  std::vector<double> db(n);
  for (std::size_t i = 0; i < n; ++i) {
    db[i] = 10.0 * std::log10(std::max(energy[i] / total, 1e-30));
  }
  std::size_t i5 = 0, i25 = 0;
  while (i5 < n && db[i5] > -5.0) ++i5;
  i25 = i5;
  while (i25 < n && db[i25] > -25.0) ++i25;
  if (i25 >= n || i25 <= i5 + 1) return 0.0;

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double count = static_cast<double>(i25 - i5);
  for (std::size_t i = i5; i < i25; ++i) {
    const double x = static_cast<double>(i) / fs;
    sx += x;
    sy += db[i];
    sxx += x * x;
    sxy += x * db[i];
  }
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);  // dB per second
  return slope < 0.0 ? -60.0 / slope : 0.0;
}

inline bool SchroederCurveMonotone(const double* h, std::size_t n) {
  double acc = 0.0;
  std::vector<double> energy(n);
  for (std::size_t i = n; i-- > 0;) {
    acc += h[i] * h[i];
    energy[i] = acc;
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (energy[i] > energy[i - 1] + 1e-12 * energy[0]) return false;
  }
  return true;
}

}  // namespace mcse::test

#endif  // MCSE_TESTS_SUPPORT_ORACLES_H_
