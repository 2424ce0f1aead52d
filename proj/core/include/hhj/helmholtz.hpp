#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hhj/field.hpp"
#include "hhj/poisson.hpp"

namespace hhj {

struct DecompositionDiagnostics {
  /// ||grad(phi) + t - f|| / ||f||.
  double reconstruction_error = 0.0;
  /// ||grad(phi) + curl(lambda) - f|| / ||f||, the vector-potential route.
  double potential_reconstruction_error = 0.0;
  /// max |div t|.
  double divergence_defect = 0.0;
  /// max |t . n| over the boundary.
  double boundary_normal_defect = 0.0;
  /// max |curl t - curl f| over interior samples.
  double curl_defect = 0.0;
  /// Relative compatibility defect of div(f) against f . n before the
  /// source shift.
  double compatibility_defect = 0.0;
  SolveReport scalar_report;
  SolveReport vector_report;
};

/// f = grad(phi) + t with t = curl(lambda) solenoidal.
struct Decomposition {
  ScalarField phi;
  /// 3D: three components. 2D: the single stream-function component.
  VectorField lambda;
  VectorField t;
  DecompositionDiagnostics diagnostics;

  /// The stream function of a 2D decomposition.
  ScalarField stream_function() const;
};

/// Split f (2D or 3D, components == dim) into gradient and solenoidal parts.
///
/// phi solves the Neumann problem with source div(f) and data f . n. The
/// discrete Gauss theorem holds only up to truncation error for general f,
/// so the measured defect is recorded in the diagnostics and removed from
/// the source before the solve.
Decomposition decompose(const VectorField& f, const SolverConfig& cfg);

/// 1/2 integral |grad(phi) - f|^2 dV.
double best_approximation_error(const VectorField& f, const ScalarField& phi);

/// |<t, grad(psi)>| for each probe.
std::vector<double> verify_orthogonality(const Decomposition& dec,
                                         const std::vector<ScalarField>& probes);

/// Random trigonometric polynomial: sum of `terms` products of cosines
/// with integer wavenumbers in [1, max_wavenumber] (in units of pi over the
/// box side), random phases, amplitudes in [-1, 1] / terms.
ScalarField random_trig_probe(const Grid& grid, std::mt19937_64& rng, int terms = 3,
                              int max_wavenumber = 2);

/// Phi_ij = Lambda_ij + delta_ij phi with Lambda antisymmetric, so that
/// f_i = d_j Phi_ij.
class TensorPotential {
 public:
  /// 2D: lambda has one component (Lambda_01 = stream function).
  /// 3D: Lambda_ij = eps_ijk lambda_k.
  TensorPotential(ScalarField phi, VectorField lambda);

  const Grid& grid() const { return phi_.grid(); }
  int dim() const { return phi_.grid().dim(); }
  const ScalarField& phi() const { return phi_; }
  /// Antisymmetric part Lambda_ij.
  ScalarField antisymmetric(int i, int j) const;
  /// Assembled Phi_ij.
  ScalarField component(int i, int j) const;
  /// d_j Phi_ij.
  VectorField divergence() const;

 private:
  ScalarField phi_;
  VectorField lambda_;
};

/// Tensor potential of a 2D field (rejects dim 1).
TensorPotential tensor_potential(const VectorField& f, const SolverConfig& cfg);
/// Tensor potential assembled from an existing decomposition (2D or 3D).
TensorPotential tensor_potential(const Decomposition& dec);

}  // namespace hhj
