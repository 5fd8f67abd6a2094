// SPDX-License-Identifier: Apache-2.0
#include "kernels_impl.hpp"

namespace vacfric::kernels {

namespace {

struct Accum {
  double sr = 0, si = 0, hr = 0, hi = 0, er = 0, ei = 0;

  // Adds a c conj(phi) at phi, phi H, phi H^2.
  void add(double a, double cr, double ci, double pr, double pi, double rr, double ri) {
    const double hr_ = pr * rr - pi * ri;
    const double hi_ = pr * ri + pi * rr;
    const double er_ = hr_ * rr - hi_ * ri;
    const double ei_ = hr_ * ri + hi_ * rr;
    const double ar = a * cr;
    const double ai = a * ci;
    sr += ar * pr + ai * pi;
    si += ai * pr - ar * pi;
    hr += ar * hr_ + ai * hi_;
    hi += ai * hr_ - ar * hi_;
    er += ar * er_ + ai * ei_;
    ei += ai * er_ - ar * ei_;
  }

  PhaseSums result() const { return {{sr, si}, {hr, hi}, {er, ei}}; }
};

}  // namespace

PhaseSums phase_sums_scalar(const BathView& bath, const StateView& st) {
  Accum acc;
  for (std::size_t k = 0; k < bath.size(); ++k) {
    acc.add(bath.coupling[k], st.c_re[k], st.c_im[k], st.ph_re[k], st.ph_im[k], bath.rot_re[k],
            bath.rot_im[k]);
  }
  return acc.result();
}

PhaseSums update_scalar(const BathView& bath, const StateView& st, const UpdateWeights& w) {
  Accum acc;
  for (std::size_t k = 0; k < bath.size(); ++k) {
    const double a = bath.coupling[k];
    const double rr = bath.rot_re[k];
    const double ri = bath.rot_im[k];
    const double pr = st.ph_re[k];
    const double pi = st.ph_im[k];
    const double hr = pr * rr - pi * ri;
    const double hi = pr * ri + pi * rr;
    const double er = hr * rr - hi * ri;
    const double ei = hr * ri + hi * rr;
    const double dr = w.w_start.real() * pr - w.w_start.imag() * pi + w.w_half.real() * hr -
                      w.w_half.imag() * hi + w.w_end.real() * er - w.w_end.imag() * ei;
    const double di = w.w_start.real() * pi + w.w_start.imag() * pr + w.w_half.real() * hi +
                      w.w_half.imag() * hr + w.w_end.real() * ei + w.w_end.imag() * er;
    const double cr = st.c_re[k] + a * dr;
    const double ci = st.c_im[k] + a * di;
    st.c_re[k] = cr;
    st.c_im[k] = ci;
    st.ph_re[k] = er;
    st.ph_im[k] = ei;
    acc.add(a, cr, ci, er, ei, rr, ri);
  }
  return acc.result();
}

Moments moments_scalar(const BathView& bath, const StateView& st) {
  double pop = 0, px = 0, py = 0, pz = 0;
  double zr[3] = {0, 0, 0}, zi[3] = {0, 0, 0};
  for (std::size_t k = 0; k < bath.size(); ++k) {
    const double cr = st.c_re[k];
    const double ci = st.c_im[k];
    const double n = cr * cr + ci * ci;
    pop += n;
    px += bath.kx[k] * n;
    py += bath.ky[k] * n;
    pz += bath.kz[k] * n;
    // conj(c) phi
    const double qr = cr * st.ph_re[k] + ci * st.ph_im[k];
    const double qi = cr * st.ph_im[k] - ci * st.ph_re[k];
    const double b[3] = {bath.bx[k], bath.by[k], bath.bz[k]};
    for (int j = 0; j < 3; ++j) {
      zr[j] += b[j] * qr;
      zi[j] += b[j] * qi;
    }
  }
  Moments m;
  m.population = pop;
  m.photon_momentum[0] = px;
  m.photon_momentum[1] = py;
  m.photon_momentum[2] = pz;
  for (int j = 0; j < 3; ++j) m.roentgen[j] = {zr[j], zi[j]};
  return m;
}

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", &phase_sums_scalar, &update_scalar, &moments_scalar};
  return table;
}

}  // namespace vacfric::kernels
