// AVX2+FMA kernel variants.  Compiled only when the toolchain accepts
// -mavx2 -mfma; chosen at runtime only on hosts that report both features.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "fblab/kernels.hpp"

namespace fblab::kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_hadd_pd(lo, lo));
}

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  const __m128d sw = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_max_sd(lo, sw));
}

// (p[0], p[2], p[4], p[6]) from eight consecutive doubles at p.
inline __m256d load_even(const double* p) {
  const __m256d a = _mm256_loadu_pd(p);
  const __m256d b = _mm256_loadu_pd(p + 4);
  return _mm256_permute4x64_pd(_mm256_unpacklo_pd(a, b), _MM_SHUFFLE(3, 1, 2, 0));
}

double weighted_sum_avx2(const double* w, const double* f, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(f + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(w + i + 4), _mm256_loadu_pd(f + i + 4), acc1);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += w[i] * f[i];
  return acc;
}

double weighted_dot_avx2(const double* w, const double* f, const double* g, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d fg0 = _mm256_mul_pd(_mm256_loadu_pd(f + i), _mm256_loadu_pd(g + i));
    const __m256d fg1 = _mm256_mul_pd(_mm256_loadu_pd(f + i + 4), _mm256_loadu_pd(g + i + 4));
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), fg0, acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(w + i + 4), fg1, acc1);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += w[i] * f[i] * g[i];
  return acc;
}

void sor_sweep_color_avx2(double* u, int nx, int ny, double omega, double qrhs, int color) {
  const __m256d vomega = _mm256_set1_pd(omega);
  const __m256d vkeep = _mm256_set1_pd(1.0 - omega);
  const __m256d vquarter = _mm256_set1_pd(0.25);
  const __m256d vqrhs = _mm256_set1_pd(qrhs);
  const __m256d vzero = _mm256_setzero_pd();
  alignas(32) double out[4];
  for (int j = 1; j < ny - 1; ++j) {
    double* row = u + static_cast<std::size_t>(j) * nx;
    const double* up = row + nx;
    const double* dn = row - nx;
    const int i0 = 1 + ((1 + j + color) & 1);
    int i = i0;
    // Four same-color nodes per step span eight columns; updated nodes only
    // read opposite-color neighbors, so in-place stores stay race-free.
    for (; i + 6 < nx - 1; i += 8) {
      const __m256d c = load_even(row + i);
      const __m256d l = load_even(row + i - 1);
      const __m256d r = load_even(row + i + 1);
      const __m256d a = load_even(up + i);
      const __m256d b = load_even(dn + i);
      const __m256d avg =
          _mm256_mul_pd(vquarter, _mm256_add_pd(_mm256_add_pd(l, r), _mm256_add_pd(a, b)));
      const __m256d cand =
          _mm256_fmadd_pd(vkeep, c, _mm256_mul_pd(vomega, _mm256_sub_pd(avg, vqrhs)));
      const __m256d proj = _mm256_max_pd(cand, vzero);
      _mm256_store_pd(out, proj);
      row[i] = out[0];
      row[i + 2] = out[1];
      row[i + 4] = out[2];
      row[i + 6] = out[3];
    }
    for (; i < nx - 1; i += 2) {
      const double avg = 0.25 * (row[i - 1] + row[i + 1] + up[i] + dn[i]);
      const double cand = (1.0 - omega) * row[i] + omega * (avg - qrhs);
      row[i] = cand > 0.0 ? cand : 0.0;
    }
  }
}

double complementarity_residual_avx2(const double* u, int nx, int ny, double h, double thr) {
  const double inv_h2 = 1.0 / (h * h);
  const __m256d vinv = _mm256_set1_pd(inv_h2);
  const __m256d vthr = _mm256_set1_pd(thr);
  const __m256d vone = _mm256_set1_pd(1.0);
  const __m256d vfour = _mm256_set1_pd(4.0);
  const __m256d vzero = _mm256_setzero_pd();
  const __m256d vabsmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d vworst = _mm256_setzero_pd();
  double worst = 0.0;
  for (int j = 1; j < ny - 1; ++j) {
    const double* row = u + static_cast<std::size_t>(j) * nx;
    const double* up = row + nx;
    const double* dn = row - nx;
    int i = 1;
    for (; i + 3 < nx - 1; i += 4) {
      const __m256d c = _mm256_loadu_pd(row + i);
      const __m256d sum = _mm256_add_pd(
          _mm256_add_pd(_mm256_loadu_pd(row + i - 1), _mm256_loadu_pd(row + i + 1)),
          _mm256_add_pd(_mm256_loadu_pd(up + i), _mm256_loadu_pd(dn + i)));
      const __m256d lap = _mm256_mul_pd(_mm256_fnmadd_pd(vfour, c, sum), vinv);
      const __m256d dev = _mm256_sub_pd(lap, vone);
      const __m256d active = _mm256_and_pd(dev, vabsmask);        // |lap - 1|
      const __m256d inactive = _mm256_max_pd(dev, vzero);         // max(0, lap - 1)
      const __m256d mask = _mm256_cmp_pd(c, vthr, _CMP_GT_OQ);
      vworst = _mm256_max_pd(vworst, _mm256_blendv_pd(inactive, active, mask));
    }
    for (; i < nx - 1; ++i) {
      const double lap = (row[i - 1] + row[i + 1] + up[i] + dn[i] - 4.0 * row[i]) * inv_h2;
      const double res = row[i] > thr ? std::abs(lap - 1.0) : std::max(0.0, lap - 1.0);
      worst = std::max(worst, res);
    }
  }
  return std::max(worst, hmax(vworst));
}

const Table kAvx2Table = {
    "avx2",
    weighted_sum_avx2,
    weighted_dot_avx2,
    sor_sweep_color_avx2,
    complementarity_residual_avx2,
};

}  // namespace

const Table* avx2_compiled() { return &kAvx2Table; }

}  // namespace fblab::kernels
