// SPDX-License-Identifier: Apache-2.0
#pragma once

// Inner loops of the mode-bath integrator over structure-of-arrays data.
//
// Every kernel has a scalar reference implementation and, where the CPU
// supports it, an AVX2/FMA variant. The variant is chosen once at runtime;
// setting VACFRIC_KERNELS=scalar forces the reference path.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace vacfric::kernels {

using cplx = std::complex<double>;

/// Immutable per-mode data. All spans have the same length.
struct BathView {
  std::span<const double> coupling;  // a_k = Omega_k g_k
  std::span<const double> rot_re;    // H_k = exp(-i detuning_k dt / 2)
  std::span<const double> rot_im;
  std::span<const double> kx, ky, kz;  // photon momentum hbar k
  std::span<const double> bx, by, bz;  // Omega_k b_k

  std::size_t size() const { return coupling.size(); }
};

/// Mutable per-mode state: amplitudes c_k and phases phi_k = exp(-i detuning_k t).
struct StateView {
  std::span<double> c_re, c_im;
  std::span<double> ph_re, ph_im;
};

/// S(phi) = sum_k a_k c_k conj(phi_k) at phi, phi H and phi H^2.
struct PhaseSums {
  cplx at_start;
  cplx at_half;
  cplx at_end;
};

/// Reductions needed for observables at a sample time.
struct Moments {
  double population = 0.0;       // sum |c_k|^2
  double photon_momentum[3]{};   // sum hbar k |c_k|^2
  cplx roentgen[3];              // sum Omega_k b_k conj(c_k) phi_k
};

/// Weights for one RK4 update: c_k += a_k (w_start phi + w_half phi H + w_end phi H^2).
struct UpdateWeights {
  cplx w_start;
  cplx w_half;
  cplx w_end;
};

struct KernelTable {
  std::string_view name;
  PhaseSums (*phase_sums)(const BathView&, const StateView&);
  /// Applies the update, advances phi by H^2 and returns the sums for the new state.
  PhaseSums (*update)(const BathView&, const StateView&, const UpdateWeights&);
  Moments (*moments)(const BathView&, const StateView&);
};

const KernelTable& scalar_kernels();
/// nullptr when not compiled in or not supported by this CPU.
const KernelTable* avx2_kernels();
/// The table used by the integrator.
const KernelTable& active_kernels();

}  // namespace vacfric::kernels
