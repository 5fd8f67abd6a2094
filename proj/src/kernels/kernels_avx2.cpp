// SPDX-License-Identifier: Apache-2.0
// AVX2/FMA variants of the bath kernels. Four modes per register, tails fall
// back to the scalar loop body. Compiled with -mavx2 -mfma; only reached after
// the runtime CPU check in dispatch.cpp.
#include <immintrin.h>

#include "kernels_impl.hpp"

namespace vacfric::kernels {

namespace {

constexpr std::size_t lanes = 4;

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// (ar + i ai)(br + i bi)
inline void cmul(__m256d ar, __m256d ai, __m256d br, __m256d bi, __m256d& outr, __m256d& outi) {
  outr = _mm256_fmsub_pd(ar, br, _mm256_mul_pd(ai, bi));
  outi = _mm256_fmadd_pd(ar, bi, _mm256_mul_pd(ai, br));
}

struct Accum {
  __m256d sr = _mm256_setzero_pd(), si = _mm256_setzero_pd();
  __m256d hr = _mm256_setzero_pd(), hi = _mm256_setzero_pd();
  __m256d er = _mm256_setzero_pd(), ei = _mm256_setzero_pd();

  // a c conj(phi): re = ar*pr + ai*pi, im = ai*pr - ar*pi
  static inline void conj_acc(__m256d ar, __m256d ai, __m256d pr, __m256d pi, __m256d& accr,
                              __m256d& acci) {
    accr = _mm256_add_pd(accr, _mm256_fmadd_pd(ar, pr, _mm256_mul_pd(ai, pi)));
    acci = _mm256_add_pd(acci, _mm256_fmsub_pd(ai, pr, _mm256_mul_pd(ar, pi)));
  }

  void add(__m256d a, __m256d cr, __m256d ci, __m256d pr, __m256d pi, __m256d hr_, __m256d hi_,
           __m256d er_, __m256d ei_) {
    const __m256d ar = _mm256_mul_pd(a, cr);
    const __m256d ai = _mm256_mul_pd(a, ci);
    conj_acc(ar, ai, pr, pi, sr, si);
    conj_acc(ar, ai, hr_, hi_, hr, hi);
    conj_acc(ar, ai, er_, ei_, er, ei);
  }

  PhaseSums result() const {
    return {{hsum(sr), hsum(si)}, {hsum(hr), hsum(hi)}, {hsum(er), hsum(ei)}};
  }
};

inline std::size_t vector_end(std::size_t n) { return n - n % lanes; }

PhaseSums phase_sums_avx2(const BathView& bath, const StateView& st) {
  const std::size_t n = bath.size();
  const std::size_t nv = vector_end(n);
  Accum acc;
  for (std::size_t k = 0; k < nv; k += lanes) {
    const __m256d a = _mm256_loadu_pd(&bath.coupling[k]);
    const __m256d rr = _mm256_loadu_pd(&bath.rot_re[k]);
    const __m256d ri = _mm256_loadu_pd(&bath.rot_im[k]);
    const __m256d pr = _mm256_loadu_pd(&st.ph_re[k]);
    const __m256d pi = _mm256_loadu_pd(&st.ph_im[k]);
    __m256d hr, hi, er, ei;
    cmul(pr, pi, rr, ri, hr, hi);
    cmul(hr, hi, rr, ri, er, ei);
    acc.add(a, _mm256_loadu_pd(&st.c_re[k]), _mm256_loadu_pd(&st.c_im[k]), pr, pi, hr, hi, er, ei);
  }
  PhaseSums out = acc.result();
  if (nv < n) {
    const BathView tail_bath = tail(bath, nv);
    const StateView tail_st = tail(st, nv);
    const PhaseSums t = phase_sums_scalar(tail_bath, tail_st);
    out.at_start += t.at_start;
    out.at_half += t.at_half;
    out.at_end += t.at_end;
  }
  return out;
}

PhaseSums update_avx2(const BathView& bath, const StateView& st, const UpdateWeights& w) {
  const std::size_t n = bath.size();
  const std::size_t nv = vector_end(n);
  const __m256d w0r = _mm256_set1_pd(w.w_start.real()), w0i = _mm256_set1_pd(w.w_start.imag());
  const __m256d whr = _mm256_set1_pd(w.w_half.real()), whi = _mm256_set1_pd(w.w_half.imag());
  const __m256d w1r = _mm256_set1_pd(w.w_end.real()), w1i = _mm256_set1_pd(w.w_end.imag());
  Accum acc;
  for (std::size_t k = 0; k < nv; k += lanes) {
    const __m256d a = _mm256_loadu_pd(&bath.coupling[k]);
    const __m256d rr = _mm256_loadu_pd(&bath.rot_re[k]);
    const __m256d ri = _mm256_loadu_pd(&bath.rot_im[k]);
    const __m256d pr = _mm256_loadu_pd(&st.ph_re[k]);
    const __m256d pi = _mm256_loadu_pd(&st.ph_im[k]);
    __m256d hr, hi, er, ei;
    cmul(pr, pi, rr, ri, hr, hi);
    cmul(hr, hi, rr, ri, er, ei);

    __m256d t0r, t0i, thr, thi, t1r, t1i;
    cmul(w0r, w0i, pr, pi, t0r, t0i);
    cmul(whr, whi, hr, hi, thr, thi);
    cmul(w1r, w1i, er, ei, t1r, t1i);
    const __m256d dr = _mm256_add_pd(_mm256_add_pd(t0r, thr), t1r);
    const __m256d di = _mm256_add_pd(_mm256_add_pd(t0i, thi), t1i);

    const __m256d cr = _mm256_fmadd_pd(a, dr, _mm256_loadu_pd(&st.c_re[k]));
    const __m256d ci = _mm256_fmadd_pd(a, di, _mm256_loadu_pd(&st.c_im[k]));
    _mm256_storeu_pd(&st.c_re[k], cr);
    _mm256_storeu_pd(&st.c_im[k], ci);
    _mm256_storeu_pd(&st.ph_re[k], er);
    _mm256_storeu_pd(&st.ph_im[k], ei);

    // Sums for the next step start at phi H^2.
    __m256d nhr, nhi, ner, nei;
    cmul(er, ei, rr, ri, nhr, nhi);
    cmul(nhr, nhi, rr, ri, ner, nei);
    acc.add(a, cr, ci, er, ei, nhr, nhi, ner, nei);
  }
  PhaseSums out = acc.result();
  if (nv < n) {
    const BathView tail_bath = tail(bath, nv);
    const StateView tail_st = tail(st, nv);
    const PhaseSums t = update_scalar(tail_bath, tail_st, w);
    out.at_start += t.at_start;
    out.at_half += t.at_half;
    out.at_end += t.at_end;
  }
  return out;
}

Moments moments_avx2(const BathView& bath, const StateView& st) {
  const std::size_t n = bath.size();
  const std::size_t nv = vector_end(n);
  __m256d pop = _mm256_setzero_pd();
  __m256d p[3] = {_mm256_setzero_pd(), _mm256_setzero_pd(), _mm256_setzero_pd()};
  __m256d zr[3] = {_mm256_setzero_pd(), _mm256_setzero_pd(), _mm256_setzero_pd()};
  __m256d zi[3] = {_mm256_setzero_pd(), _mm256_setzero_pd(), _mm256_setzero_pd()};
  const double* kk[3] = {bath.kx.data(), bath.ky.data(), bath.kz.data()};
  const double* bb[3] = {bath.bx.data(), bath.by.data(), bath.bz.data()};
  for (std::size_t k = 0; k < nv; k += lanes) {
    const __m256d cr = _mm256_loadu_pd(&st.c_re[k]);
    const __m256d ci = _mm256_loadu_pd(&st.c_im[k]);
    const __m256d pr = _mm256_loadu_pd(&st.ph_re[k]);
    const __m256d pi = _mm256_loadu_pd(&st.ph_im[k]);
    const __m256d nrm = _mm256_fmadd_pd(cr, cr, _mm256_mul_pd(ci, ci));
    pop = _mm256_add_pd(pop, nrm);
    const __m256d qr = _mm256_fmadd_pd(cr, pr, _mm256_mul_pd(ci, pi));
    const __m256d qi = _mm256_fmsub_pd(cr, pi, _mm256_mul_pd(ci, pr));
    for (int j = 0; j < 3; ++j) {
      p[j] = _mm256_fmadd_pd(_mm256_loadu_pd(kk[j] + k), nrm, p[j]);
      const __m256d b = _mm256_loadu_pd(bb[j] + k);
      zr[j] = _mm256_fmadd_pd(b, qr, zr[j]);
      zi[j] = _mm256_fmadd_pd(b, qi, zi[j]);
    }
  }
  Moments m;
  m.population = hsum(pop);
  for (int j = 0; j < 3; ++j) {
    m.photon_momentum[j] = hsum(p[j]);
    m.roentgen[j] = {hsum(zr[j]), hsum(zi[j])};
  }
  if (nv < n) {
    const BathView tail_bath = tail(bath, nv);
    const StateView tail_st = tail(st, nv);
    const Moments t = moments_scalar(tail_bath, tail_st);
    m.population += t.population;
    for (int j = 0; j < 3; ++j) {
      m.photon_momentum[j] += t.photon_momentum[j];
      m.roentgen[j] += t.roentgen[j];
    }
  }
  return m;
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{"avx2", &phase_sums_avx2, &update_avx2, &moments_avx2};
  return table;
}

}  // namespace vacfric::kernels
