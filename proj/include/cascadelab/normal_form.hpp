#pragma once

#include <vector>

#include "cascadelab/galerkin.hpp"
#include "cascadelab/lattice.hpp"
#include "cascadelab/types.hpp"

namespace casclab {

// Coefficient of the quartic generating Hamiltonian
//   F = 1/4 sum F_{n1 n2 n3 n4} a_{n1} conj(a_{n2}) a_{n3} conj(a_{n4}):
// F = -i / (|n1|^2 - |n2|^2 + |n3|^2 - |n4|^2) when n1 - n2 + n3 - n4 = 0 and
// the divisor is nonzero, and 0 otherwise (divisor in exact integers).
cplx generator_coefficient(const LatticePoint& n1, const LatticePoint& n2,
                           const LatticePoint& n3, const LatticePoint& n4);

// n1 - n2 + n3 - n4 = 0 and |n1|^2 - |n2|^2 + |n3|^2 - |n4|^2 = 0, exactly.
bool is_resonant(const LatticePoint& n1, const LatticePoint& n2,
                 const LatticePoint& n3, const LatticePoint& n4);

// Truncation of the normal-form machinery to a fixed finite mode set: the
// one-step convolution closure of a seed support.  All Hamiltonians (full
// H = D + G, resonant D + G~, generator F) keep exactly the monomials whose
// four frequencies lie in the closure, so the homological identity
// G + {D, F} = G~ holds exactly for the truncated system.  Built once and
// read-only afterwards; lookups go through a dense grid over the closure's
// bounding box.
class NormalFormSystem {
 public:
  explicit NormalFormSystem(const std::vector<LatticePoint>& seed_support);

  const std::vector<LatticePoint>& support() const { return support_; }
  int find(const LatticePoint& n) const;  // index in support, or -1

  // Vector fields in the 2i dH/d(conj a) convention, amplitudes parallel to
  // support().  `hamiltonian_field` is the full truncated flow (linear +
  // all cubic terms), `resonant_field` keeps the resonant cubic terms only,
  // `generator_field` is X_F (no linear part, coefficients 1/divisor).
  std::vector<cplx> hamiltonian_field(const std::vector<cplx>& a) const;
  std::vector<cplx> resonant_field(const std::vector<cplx>& a) const;
  std::vector<cplx> generator_field(const std::vector<cplx>& a) const;

  // X_F at `a` together with its exact linearization applied to `v`.
  void generator_tangent(const std::vector<cplx>& a,
                         const std::vector<cplx>& v,
                         std::vector<cplx>& rate,
                         std::vector<cplx>& tangent_rate) const;

  // Scalar Hamiltonians on the truncation.
  double hamiltonian_value(const std::vector<cplx>& a) const;        // D + G
  double resonant_hamiltonian_value(const std::vector<cplx>& a) const;  // D+G~

 private:
  enum class FieldKind { Generator, Full, Resonant };
  std::vector<cplx> apply_field(const std::vector<cplx>& a,
                                FieldKind kind) const;
  double quartic_value(const std::vector<cplx>& a, bool resonant_only) const;

  std::vector<LatticePoint> support_;
  long long x0_ = 0, y0_ = 0, width_ = 0, height_ = 0;
  std::vector<int> grid_;  // dense index lookup, -1 when absent
};

// Time-(direction) flow of X_F on the truncation determined by the one-step
// closure of alpha's support; direction must be +1 or -1.  The returned state
// lives on the closure support.  ||Gamma(alpha) - alpha||_{l1} = O(eps^3).
GalerkinState gamma_truncated(const GalerkinState& alpha, int direction);

// Same flow on an already-built system (alpha's support must be contained in
// the system support).
GalerkinState gamma_flow(const NormalFormSystem& sys, const GalerkinState& alpha,
                         int direction);

// l1 norm of  X_H(Gamma(alpha)) - DGamma(alpha) X_{D+G~}(alpha), the
// push-forward of the remainder vector field X_R; scales like the fifth
// power of the amplitude.  The Jacobian action is computed by integrating
// the variational equations alongside the flow, not by differencing.
double remainder_field_norm(const NormalFormSystem& sys,
                            const GalerkinState& alpha);

}  // namespace casclab
