// include/mcse/linalg.h

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

#ifndef MCSE_LINALG_H_
#define MCSE_LINALG_H_

#include <cstddef>
#include <vector>

#include "mcse/types.h"

namespace mcse {

inline constexpr double kDefaultDiagonalLoading = 1e-10;

// Solves (A + loading * trace(A)/k * I) X = B for X, with A Hermitian k x k
// and B, X k x m, all row-major. LU with partial pivoting. Throws
// SingularSystemError when no usable pivot remains (e.g. A == 0, loading == 0).
void HermitianSolve(const cd* A, std::size_t k, const cd* B, std::size_t m,
                    double loading, cd* X);

std::vector<cd> HermitianSolve(const std::vector<cd>& A, std::size_t k,
                               const std::vector<cd>& B, std::size_t m,
                               double loading = kDefaultDiagonalLoading);

struct EigPair {
  double value = 0.0;
  std::vector<cd> vector;
  bool converged = false;
  int iterations = 0;
};

// Dominant eigenpair of a Hermitian PSD matrix by power iteration (relative
// eigenvalue tolerance, capped iteration count), then a few Rayleigh-quotient
// inverse-iteration polish steps. The eigenvector phase is fixed so its first
// entry of non-negligible magnitude is real positive. When the power stage
// stalls on a near-degenerate spectrum the best iterate is still returned,
// with converged = false if the polish did not settle either.
EigPair PrincipalEigpair(const cd* A, std::size_t k, double tol = 1e-12,
                         int max_iterations = 500);

EigPair PrincipalEigpair(const std::vector<cd>& A, std::size_t k, double tol = 1e-12,
                         int max_iterations = 500);

}  // namespace mcse

#endif  // MCSE_LINALG_H_
