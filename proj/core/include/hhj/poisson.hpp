#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "hhj/errors.hpp"
#include "hhj/field.hpp"

namespace hhj {

enum class SolverMethod { conjugate_gradient, successive_over_relaxation };

std::string to_string(SolverMethod m);

struct SolverConfig {
  /// Target for ||b - A x|| / ||b|| of the assembled linear system.
  double tolerance = 1e-8;
  std::size_t max_iterations = 100'000;
  SolverMethod method = SolverMethod::conjugate_gradient;

  void validate() const;
};

struct SolveReport {
  SolverMethod method = SolverMethod::conjugate_gradient;
  bool converged = false;
  std::size_t iterations = 0;
  double final_residual = 0.0;
  /// |int source dV - surface flux| relative to the data scale, measured
  /// before the source is mean-shifted. Zero for problems with a Dirichlet
  /// face (no compatibility condition).
  double compatibility_defect = 0.0;
  std::vector<double> residual_history;
  /// Quadratic energy 1/2 x.Ax - b.x after each iteration (CG only).
  std::vector<double> energy_history;

  // Vector problem only.
  /// max |div lambda| after gauge projection.
  double divergence_defect = 0.0;
  /// max |(curl lambda - t) x n| over the boundary.
  double boundary_defect = 0.0;
};

/// Iteration limit reached without meeting the tolerance.
class ConvergenceFailure : public Error {
 public:
  explicit ConvergenceFailure(SolveReport report);
  const SolveReport& report() const noexcept { return report_; }

 private:
  SolveReport report_;
};

/// Neumann data inconsistent with the source (compatibility defect above
/// ten times the solver tolerance).
class IncompatibleProblem : public InvalidInput {
 public:
  explicit IncompatibleProblem(double defect);
  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

enum class FaceCondition { neumann, dirichlet };

/// Boundary condition per face: faces[axis][0] is the low face,
/// faces[axis][1] the high face. Dirichlet data is always zero.
struct BoundarySpec {
  std::array<std::array<FaceCondition, 2>, Grid::kMaxDim> faces{};

  static BoundarySpec all(FaceCondition c);
  bool has_dirichlet(int dim) const;
};

struct ScalarSolution {
  ScalarField field;
  SolveReport report;
};

struct VectorSolution {
  VectorField field;
  SolveReport report;
};

/// Relative compatibility defect of a Neumann problem.
double compatibility_defect(const ScalarField& source, const BoundaryField& neumann);

/// Laplacian(phi) = source with d(phi)/dn = neumann on every face.
/// Returns the zero-mean solution. When the compatibility defect is at most
/// 10 * tolerance the source is shifted by its mean defect; above that the
/// problem is rejected with IncompatibleProblem.
ScalarSolution solve_scalar_neumann(const ScalarField& source,
                                    const BoundaryField& neumann,
                                    const SolverConfig& cfg);

/// Mixed homogeneous problem: Neumann faces take their data from `neumann`
/// (entries on Dirichlet faces are ignored; pass nullptr for zero data).
/// Pure-Neumann specs get the same compatibility handling and zero-mean
/// gauge as solve_scalar_neumann.
ScalarSolution solve_poisson(const ScalarField& source, const BoundarySpec& bc,
                             const BoundaryField* neumann, const SolverConfig& cfg);

/// Laplacian(lambda) = -curl_source with div(lambda) = 0.
///
/// 3D: components solved independently, each with zero tangential values
/// and zero normal derivative on the faces, then the divergence is removed
/// by lambda += grad(psi) with Laplacian(psi) = -div(lambda). 2D: a single
/// stream-function component with zero boundary values. `target_curl_field`
/// is the field curl(lambda) should reproduce; it is only used to report
/// the tangential boundary defect.
VectorSolution solve_vector_poisson(const VectorField& curl_source,
                                    const VectorField& target_curl_field,
                                    const SolverConfig& cfg);

/// One gauge projection lambda -> lambda + grad(psi) (3D only).
VectorSolution project_gauge(const VectorField& lambda, const SolverConfig& cfg);

}  // namespace hhj
