// src/linalg.cc

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

#include "mcse/linalg.h"

#include <algorithm>
#include <cmath>

namespace mcse {

namespace {

void MatVec(const cd* A, std::size_t k, const cd* v, cd* out) {
  for (std::size_t i = 0; i < k; ++i) {
    cd acc{0.0, 0.0};
    const cd* row = A + i * k;
    for (std::size_t j = 0; j < k; ++j) acc += row[j] * v[j];
    out[i] = acc;
  }
}

double Norm(const cd* v, std::size_t k) {
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) s += std::norm(v[i]);
  return std::sqrt(s);
}

// v^H A v for a Hermitian A; the imaginary part is discarded.
double RayleighQuotient(const cd* A, std::size_t k, const cd* v, cd* scratch) {
  MatVec(A, k, v, scratch);
  cd acc{0.0, 0.0};
  for (std::size_t i = 0; i < k; ++i) acc += std::conj(v[i]) * scratch[i];
  return acc.real();
}

void FixPhase(std::vector<cd>* v) {
  double max_abs = 0.0;
  for (const cd& x : *v) max_abs = std::max(max_abs, std::abs(x));
  if (max_abs == 0.0) return;
  for (const cd& x : *v) {
    if (std::abs(x) > 1e-8 * max_abs) {
      const cd rot = std::conj(x) / std::abs(x);
      for (cd& y : *v) y *= rot;
      return;
    }
  }
}

}  // namespace

void HermitianSolve(const cd* A, std::size_t k, const cd* B, std::size_t m,
                    double loading, cd* X) {
  if (loading < 0.0) throw Error("hermitian_solve: negative diagonal loading");
  std::vector<cd> lu(A, A + k * k);
  double trace = 0.0;
  for (std::size_t i = 0; i < k; ++i) trace += lu[i * k + i].real();
  const double shift = loading * trace / static_cast<double>(k);
  for (std::size_t i = 0; i < k; ++i) lu[i * k + i] += shift;

  std::vector<cd> rhs(B, B + k * m);
  std::vector<std::size_t> perm(k);
  for (std::size_t i = 0; i < k; ++i) perm[i] = i;

  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    double best = std::abs(lu[perm[col] * k + col]);
    for (std::size_t r = col + 1; r < k; ++r) {
      const double mag = std::abs(lu[perm[r] * k + col]);
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (best == 0.0) {
      throw SingularSystemError("hermitian_solve: singular system (zero pivot)");
    }
    std::swap(perm[col], perm[pivot]);
    const cd diag = lu[perm[col] * k + col];
    for (std::size_t r = col + 1; r < k; ++r) {
      const cd factor = lu[perm[r] * k + col] / diag;
      lu[perm[r] * k + col] = factor;
      for (std::size_t c = col + 1; c < k; ++c) {
        lu[perm[r] * k + c] -= factor * lu[perm[col] * k + c];
      }
      for (std::size_t c = 0; c < m; ++c) {
        rhs[perm[r] * m + c] -= factor * rhs[perm[col] * m + c];
      }
    }
  }

  for (std::size_t rr = k; rr-- > 0;) {
    for (std::size_t c = 0; c < m; ++c) {
      cd acc = rhs[perm[rr] * m + c];
      for (std::size_t j = rr + 1; j < k; ++j) acc -= lu[perm[rr] * k + j] * X[j * m + c];
      X[rr * m + c] = acc / lu[perm[rr] * k + rr];
    }
  }
}

std::vector<cd> HermitianSolve(const std::vector<cd>& A, std::size_t k,
                               const std::vector<cd>& B, std::size_t m,
                               double loading) {
  if (A.size() != k * k || B.size() != k * m) {
    throw Error("hermitian_solve: shape mismatch");
  }
  std::vector<cd> X(k * m);
  HermitianSolve(A.data(), k, B.data(), m, loading, X.data());
  return X;
}

EigPair PrincipalEigpair(const cd* A, std::size_t k, double tol, int max_iterations) {
  EigPair out;
  out.vector.assign(k, cd{0.0, 0.0});

  double scale = 0.0;
  for (std::size_t i = 0; i < k * k; ++i) scale = std::max(scale, std::abs(A[i]));
  if (scale == 0.0) {
    out.vector[0] = cd{1.0, 0.0};
    out.converged = true;
    return out;
  }

  // Fixed pseudo-random start so ties break deterministically and the start
  // is essentially never orthogonal to the dominant eigenvector.
  std::vector<cd> v(k);
  std::uint64_t state = 0x6d63736565696731ULL;
  for (std::size_t i = 0; i < k; ++i) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    const double re = 0.5 + static_cast<double>(state >> 40) / double(1ULL << 25);
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    const double im = static_cast<double>(state >> 40) / double(1ULL << 25) - 0.5;
    v[i] = cd{re, im};
  }
  double nv = Norm(v.data(), k);
  for (cd& x : v) x /= nv;

  std::vector<cd> w(k);
  double lambda = RayleighQuotient(A, k, v.data(), w.data());
  int it = 0;
  for (; it < max_iterations; ++it) {
    MatVec(A, k, v.data(), w.data());
    const double nw = Norm(w.data(), k);
    if (nw == 0.0) {  // v in the null space; for PSD A that means lambda = 0
      lambda = 0.0;
      out.converged = true;
      break;
    }
    for (std::size_t i = 0; i < k; ++i) v[i] = w[i] / nw;
    const double next = RayleighQuotient(A, k, v.data(), w.data());
    if (std::abs(next - lambda) <= tol * std::max(std::abs(next), scale * 1e-3)) {
      lambda = next;
      out.converged = true;
      ++it;
      break;
    }
    lambda = next;
  }

  // Rayleigh-quotient inverse iteration sharpens near-degenerate cases where
  // plain power iteration stalls. No-op cost when already converged.
  std::vector<cd> shifted(k * k);
  std::vector<cd> x(k);
  for (int polish = 0; polish < 3; ++polish) {
    std::copy(A, A + k * k, shifted.begin());
    const double shift = lambda * (1.0 + 1e-10) + scale * 1e-300;
    for (std::size_t i = 0; i < k; ++i) shifted[i * k + i] -= shift;
    try {
      HermitianSolve(shifted.data(), k, v.data(), 1, 0.0, x.data());
    } catch (const SingularSystemError&) {
      break;  // shift equals an exact eigenvalue; v is already exact
    }
    const double nx = Norm(x.data(), k);
    if (!std::isfinite(nx) || nx == 0.0) break;
    for (std::size_t i = 0; i < k; ++i) v[i] = x[i] / nx;
    const double next = RayleighQuotient(A, k, v.data(), w.data());
    if (std::abs(next - lambda) <= tol * std::max(std::abs(next), scale * 1e-3)) {
      lambda = next;
      out.converged = true;
      break;
    }
    lambda = next;
  }

  out.value = std::max(lambda, 0.0);
  out.vector = std::move(v);
  out.iterations = it;
  FixPhase(&out.vector);
  return out;
}

EigPair PrincipalEigpair(const std::vector<cd>& A, std::size_t k, double tol,
                         int max_iterations) {
  if (A.size() != k * k) throw Error("principal_eigpair: shape mismatch");
  return PrincipalEigpair(A.data(), k, tol, max_iterations);
}

}  // namespace mcse
