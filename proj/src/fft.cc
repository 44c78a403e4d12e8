// src/fft.cc

// Copyright 2026 mcse authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "mcse/fft.h"

#include <cmath>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace mcse {

namespace {

bool IsPowerOfTwo(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

struct Radix2Plan {
  std::vector<std::size_t> bitrev;
  std::vector<cd> twiddles;  // e^{-2 pi i k / n}, k < n/2

  explicit Radix2Plan(std::size_t n) : bitrev(n), twiddles(n / 2) {
    std::size_t log2n = 0;
    while ((std::size_t{1} << log2n) < n) ++log2n;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t r = 0;
      for (std::size_t b = 0; b < log2n; ++b) r |= ((i >> b) & 1u) << (log2n - 1 - b);
      bitrev[i] = r;
    }
    for (std::size_t k = 0; k < n / 2; ++k) {
      const double ang = -2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n);
      twiddles[k] = cd{std::cos(ang), std::sin(ang)};
    }
  }
};

const Radix2Plan& PlanFor(std::size_t n) {
  static std::mutex mu;
  static std::unordered_map<std::size_t, std::unique_ptr<Radix2Plan>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Radix2Plan>(n);
  return *slot;
}

void Radix2(std::vector<cd>* data, bool inverse) {
  std::vector<cd>& x = *data;
  const std::size_t n = x.size();
  const Radix2Plan& plan = PlanFor(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = plan.bitrev[i];
    if (i < j) std::swap(x[i], x[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t step = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        cd w = plan.twiddles[k * step];
        if (inverse) w = std::conj(w);
        const cd odd = x[start + k + half] * w;
        const cd even = x[start + k];
        x[start + k] = even + odd;
        x[start + k + half] = even - odd;
      }
    }
  }
}

void DirectDft(std::vector<cd>* data, bool inverse) {
  const std::vector<cd> x = *data;
  const std::size_t n = x.size();
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t k = 0; k < n; ++k) {
    cd acc{0.0, 0.0};
    for (std::size_t t = 0; t < n; ++t) {
      const double ang = sign * 2.0 * M_PI * static_cast<double>(k * t % n) /
                         static_cast<double>(n);
      acc += x[t] * cd{std::cos(ang), std::sin(ang)};
    }
    (*data)[k] = acc;
  }
}

void Transform(std::vector<cd>* x, bool inverse) {
  if (x->empty()) return;
  if (IsPowerOfTwo(x->size())) {
    Radix2(x, inverse);
  } else {
    DirectDft(x, inverse);
  }
  if (inverse) {
    const double scale = 1.0 / static_cast<double>(x->size());
    for (cd& v : *x) v *= scale;
  }
}

}  // namespace

void Fft(std::vector<cd>* x) { Transform(x, false); }

void InverseFft(std::vector<cd>* x) { Transform(x, true); }

void RealFft(const double* x, std::size_t n, cd* out) {
  std::vector<cd> buf(n);
  for (std::size_t i = 0; i < n; ++i) buf[i] = cd{x[i], 0.0};
  Fft(&buf);
  for (std::size_t f = 0; f <= n / 2; ++f) out[f] = buf[f];
}

void InverseRealFft(const cd* in, std::size_t n, double* out) {
  std::vector<cd> buf(n);
  for (std::size_t f = 0; f <= n / 2; ++f) buf[f] = in[f];
  for (std::size_t f = n / 2 + 1; f < n; ++f) buf[f] = std::conj(in[n - f]);
  InverseFft(&buf);
  for (std::size_t i = 0; i < n; ++i) out[i] = buf[i].real();
}

}  // namespace mcse
