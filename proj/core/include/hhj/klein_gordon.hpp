#pragma once

#include <complex>
#include <vector>

#include "hhj/field.hpp"
#include "hhj/field_io.hpp"

namespace hhj {

// Space-time conventions for the 1+1 dimensional module:
//   grid axis 0 is t, axis 1 is x; x^0 = c t, x^1 = x;
//   metric diag(+1, -1), so a^0 = a_0 and a^1 = -a_1;
//   d_0 = (1/c) d/dt, d_1 = d/dx.

struct PhysicalConstants {
  double mass = 1.0;
  double c = 1.0;
  double charge = 0.0;
  double hbar = 1.0;

  void validate() const;
};

/// Raise (or lower) a two-vector index with diag(+1, -1).
inline std::array<double, 2> raise(const std::array<double, 2>& a) { return {a[0], -a[1]}; }
/// a^mu b_mu with both arguments given with lower indices.
inline double minkowski_dot(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  return a[0] * b[0] - a[1] * b[1];
}

/// Psi sampled on a 1+1 space-time grid, with an external potential A_mu
/// (lower indices, two components) that defaults to zero.
struct ComplexField {
  ComplexField(ScalarField re, ScalarField im);
  ComplexField(ScalarField re, ScalarField im, VectorField potential);

  const Grid& grid() const { return re.grid(); }
  std::complex<double> operator[](std::size_t k) const { return {re[k], im[k]}; }

  ScalarField re;
  ScalarField im;
  VectorField potential;
};

/// Field-file round trip: components (re, im, A_0, A_1).
FieldData to_field_data(const ComplexField& f);
ComplexField complex_from_field_data(const FieldData& d);

/// Omega(k) = c sqrt(k^2 + m^2 c^2 / hbar^2).
double plane_wave_frequency(double wavenumber, const PhysicalConstants& pc);

/// amplitude * exp(i (k x - Omega t)) on a 2D (t, x) grid, A = 0.
ComplexField make_plane_wave(double wavenumber, const PhysicalConstants& pc, const Grid& grid,
                             std::complex<double> amplitude = 1.0);

struct WaveComponent {
  std::complex<double> amplitude;
  double wavenumber;
};

/// Sum of positive-frequency plane waves. Rejects an empty list.
ComplexField make_superposition(const std::vector<WaveComponent>& waves,
                                const PhysicalConstants& pc, const Grid& grid);

enum class KGStencil {
  /// Residual assembled from the Madelung variables: exact for plane waves;
  /// falls back to the Cartesian stencil at node-masked points.
  polar,
  /// Second differences of (re, im) directly.
  cartesian,
};

/// |D^mu D_mu Psi - m^2 c^2 Psi| with D_mu = i hbar d_mu - (q/c) A_mu.
ScalarField kg_residual(const ComplexField& f, const PhysicalConstants& pc,
                        KGStencil stencil = KGStencil::polar);

}  // namespace hhj
