// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "vacfric/kernels.hpp"

namespace vacfric::kernels {

inline BathView tail(const BathView& b, std::size_t from) {
  return {b.coupling.subspan(from), b.rot_re.subspan(from), b.rot_im.subspan(from),
          b.kx.subspan(from),       b.ky.subspan(from),     b.kz.subspan(from),
          b.bx.subspan(from),       b.by.subspan(from),     b.bz.subspan(from)};
}

inline StateView tail(const StateView& s, std::size_t from) {
  return {s.c_re.subspan(from), s.c_im.subspan(from), s.ph_re.subspan(from),
          s.ph_im.subspan(from)};
}

PhaseSums phase_sums_scalar(const BathView& bath, const StateView& st);
PhaseSums update_scalar(const BathView& bath, const StateView& st, const UpdateWeights& w);
Moments moments_scalar(const BathView& bath, const StateView& st);

#if defined(VACFRIC_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

}  // namespace vacfric::kernels
