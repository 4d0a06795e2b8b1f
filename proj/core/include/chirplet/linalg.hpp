#pragma once

#include <span>
#include <vector>

namespace chirplet {

// Dense symmetric matrix stored row-major, n x n. The solvers below target
// the small Gram systems of this project (n rarely above ~100), so plain
// O(n^3) loops without blocking are fine.
struct SymmetricMatrix {
  std::size_t n = 0;
  std::vector<double> a;  // row-major, size n*n

  double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }

  static SymmetricMatrix zeros(std::size_t n) {
    return SymmetricMatrix{n, std::vector<double>(n * n, 0.0)};
  }
};

// Solves A x = b for symmetric positive-definite A by Cholesky (LL^T).
// Throws ill_conditioned_error when a pivot collapses; the carried estimate
// is max(diag A) / pivot, a cheap proxy for the condition number.
std::vector<double> cholesky_solve(const SymmetricMatrix& a,
                                   std::span<const double> b);

// Lower-triangular Cholesky factor; returns false (and stops) on failure.
// Used by tests to probe numerical positive-definiteness.
bool cholesky_factor(const SymmetricMatrix& a, SymmetricMatrix& l);

// Least-squares solution of the (rows x cols, rows >= cols) dense system by
// Householder QR. `a` is row-major.
std::vector<double> qr_least_squares(std::size_t rows, std::size_t cols,
                                     std::vector<double> a,
                                     std::vector<double> b);

}  // namespace chirplet
