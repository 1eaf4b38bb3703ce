#pragma once
// Data-parallel inner loops behind the solver and the circle-rule reductions.
// A scalar reference implementation always exists; an AVX2+FMA variant is
// compiled when the toolchain supports it and selected at runtime when the
// host CPU does.  Selection can be forced through the environment variable
// FBLAB_KERNELS = auto | scalar | avx2 (read once, at first use).
//
// The two paths are equivalence-tested, not bit-identical: vectorization
// reorders sums and contracts multiply-adds, so results agree to roundoff
// (~1e-13 relative), and a fixed machine always takes the same path, which
// keeps artifact bytes reproducible run to run.

#include <cstddef>

namespace fblab::kernels {

struct Table {
  const char* name;

  // sum_i w[i] * f[i]
  double (*weighted_sum)(const double* w, const double* f, std::size_t n);

  // sum_i w[i] * f[i] * g[i]
  double (*weighted_dot)(const double* w, const double* f, const double* g, std::size_t n);

  // One projected SOR pass over the interior nodes of one checkerboard color
  // ((i + j) & 1 == color):  u <- max(0, (1-omega) u + omega (avg4 - qrhs)),
  // qrhs = h^2/4.  Row-major layout, boundary ring untouched.
  void (*sor_sweep_color)(double* u, int nx, int ny, double omega, double qrhs, int color);

  // Complementarity residual in the Laplacian scale: at interior nodes with
  // u > thr it is |lap - 1|, elsewhere max(0, lap - 1), lap = (sum4 - 4u)/h^2.
  // Returns the maximum over the interior.
  double (*complementarity_residual)(const double* u, int nx, int ny, double h, double thr);
};

// Active table (selected once; stable for the process lifetime).
const Table& active();

// Named tables for equivalence tests.  avx2() returns nullptr when the build
// or the host cannot run it.
const Table* scalar();
const Table* avx2();

}  // namespace fblab::kernels
