#pragma once

#include <cstdint>
#include <vector>

#include "hhj/klein_gordon.hpp"

namespace hhj {

/// Per-point exclusion flags (1 = excluded).
using Mask = std::vector<std::uint8_t>;

/// Psi = sqrt(rho) exp(i S / hbar) with derived momenta.
struct MadelungState {
  ScalarField rho;
  /// Unwrapped phase times hbar.
  ScalarField S;
  /// k_mu = -d_mu S - (q/c) A_mu, lower indices.
  VectorField k;
  /// omega_mu, lower indices; zero until solve_omega runs.
  VectorField omega;
  /// External potential copied from the input field.
  VectorField potential;

  /// Density below the floor or an ambiguous phase jump.
  Mask nodes;
  /// Excluded from quantities built from first and second derivatives of
  /// S and sqrt(rho).
  Mask mask;
  /// Excluded from quantities built from omega (adds k.k <= 0 points once
  /// solve_omega has run).
  Mask omega_mask;

  const Grid& grid() const { return rho.grid(); }
};

/// Relative density floor used for the node mask.
inline constexpr double kDensityFloor = 1e-12;

MadelungState madelung(const ComplexField& f, const PhysicalConstants& pc);

/// sqrt(rho) exp(i S / hbar) back on the grid.
ComplexField reconstruct(const MadelungState& st, const PhysicalConstants& pc);

/// d_mu (rho k^mu). Zero at masked points.
ScalarField continuity_residual(const MadelungState& st, const PhysicalConstants& pc);

/// m^2 c^2 - k.k + hbar^2 (box sqrt(rho)) / sqrt(rho). Zero at masked points.
ScalarField quantum_hj_residual(const MadelungState& st, const PhysicalConstants& pc);

/// omega = alpha k with alpha = m c / sqrt(k.k) - 1, the smaller root of
/// (1 + alpha)^2 k.k = m^2 c^2. Points with k.k <= 0 get omega = 0 and are
/// added to st.omega_mask. Stores and returns st.omega.
const VectorField& solve_omega(MadelungState& st, const PhysicalConstants& pc);

/// (k + omega).(k + omega) - m^2 c^2. Zero at omega-masked points.
ScalarField normalization_residual(const MadelungState& st, const PhysicalConstants& pc);

/// p^mu (d_mu omega_nu - d_nu omega_mu) for nu = 0, 1 with p = k + omega.
VectorField vorticity_orthogonality_residual(const MadelungState& st,
                                             const PhysicalConstants& pc);

/// d_mu omega^mu.
ScalarField omega_divergence(const MadelungState& st, const PhysicalConstants& pc);

/// d_mu (rho omega^mu).
ScalarField creation_rate(const MadelungState& st, const PhysicalConstants& pc);

/// j^mu = rho (k^mu + omega^mu), upper indices.
VectorField current(const MadelungState& st);

/// u^j d_j u_i - u^j (d_j u_i - d_i u_j) with u = (k + omega) / (m c).
VectorField four_velocity_identity_residual(const MadelungState& st,
                                            const PhysicalConstants& pc);

/// Largest |value| over points where the mask is clear.
double masked_max(const ScalarField& s, const Mask& mask);
double masked_max(const VectorField& v, const Mask& mask);
double masked_fraction(const Mask& mask);

}  // namespace hhj
