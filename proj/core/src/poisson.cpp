#include "hhj/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

#include "hhj/operators.hpp"

namespace hhj {

std::string to_string(SolverMethod m) {
  return m == SolverMethod::conjugate_gradient ? "conjugate-gradient"
                                               : "successive-over-relaxation";
}

void SolverConfig::validate() const {
  if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
    throw InvalidInput("solver tolerance must be positive");
  }
  if (max_iterations == 0) throw InvalidInput("max_iterations must be positive");
}

ConvergenceFailure::ConvergenceFailure(SolveReport report)
    : Error("solver did not converge in " + std::to_string(report.iterations) +
            " iterations (residual " + std::to_string(report.final_residual) + ")"),
      report_(std::move(report)) {}

IncompatibleProblem::IncompatibleProblem(double defect)
    : InvalidInput("Neumann data incompatible with source (relative defect " +
                   std::to_string(defect) + ")"),
      defect_(defect) {}

BoundarySpec BoundarySpec::all(FaceCondition c) {
  BoundarySpec s;
  for (auto& f : s.faces) f = {c, c};
  return s;
}

bool BoundarySpec::has_dirichlet(int dim) const {
  for (int a = 0; a < dim; ++a) {
    if (faces[a][0] == FaceCondition::dirichlet ||
        faces[a][1] == FaceCondition::dirichlet) {
      return true;
    }
  }
  return false;
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Position of a node along one axis.
enum : std::uint8_t { kInterior = 0, kLow = 1, kHigh = 2 };

// Symmetric form A = -W L of the ghost-point Laplacian on the unknowns,
// where W holds trapezoidal weights. Dirichlet nodes are fixed at zero and
// excluded; Neumann boundary rows use the reflected stencil 2(u1 - u0)/h^2.
class PoissonSystem {
 public:
  PoissonSystem(const Grid& g, const BoundarySpec& bc)
      : grid_(g), n_(g.size()), dim_(g.dim()) {
    pos_.assign(n_, 0);
    unknown_.assign(n_, 1);
    weight_ = quadrature_weights(g);
    for (int a = 0; a < dim_; ++a) {
      stride_[a] = g.stride(a);
      inv_h2_[a] = 1.0 / (g.spacing(a) * g.spacing(a));
    }
    for (std::size_t k = 0; k < n_; ++k) {
      for (int a = 0; a < dim_; ++a) {
        const std::size_t i = g.axis_index(k, a);
        std::uint8_t code = kInterior;
        if (i == 0) code = kLow;
        if (i + 1 == g.count(a)) code = kHigh;
        pos_[k] |= static_cast<std::uint8_t>(code << (2 * a));
        if (code != kInterior &&
            bc.faces[a][code == kLow ? 0 : 1] == FaceCondition::dirichlet) {
          unknown_[k] = 0;
        }
      }
    }
    diag_.assign(n_, 1.0);
    double d = 0.0;
    for (int a = 0; a < dim_; ++a) d += 2.0 * inv_h2_[a];
    for (std::size_t k = 0; k < n_; ++k) {
      if (unknown_[k]) diag_[k] = weight_[k] * d;
    }
  }

  std::size_t size() const { return n_; }
  bool unknown(std::size_t k) const { return unknown_[k] != 0; }
  double weight(std::size_t k) const { return weight_[k]; }
  double diag(std::size_t k) const { return diag_[k]; }

  // Unweighted stencil L x at node k (Dirichlet neighbours read as zero
  // because their entries are kept at zero).
  double stencil(const std::vector<double>& x, std::size_t k) const {
    double lx = 0.0;
    const std::uint8_t p = pos_[k];
    for (int a = 0; a < dim_; ++a) {
      const std::size_t s = stride_[a];
      switch ((p >> (2 * a)) & 3) {
        case kInterior:
          lx += (x[k + s] + x[k - s] - 2.0 * x[k]) * inv_h2_[a];
          break;
        case kLow:
          lx += 2.0 * (x[k + s] - x[k]) * inv_h2_[a];
          break;
        default:
          lx += 2.0 * (x[k - s] - x[k]) * inv_h2_[a];
          break;
      }
    }
    return lx;
  }

  // Off-diagonal part of the stencil (the stencil with x[k] treated as 0).
  double off_diagonal(const std::vector<double>& x, std::size_t k) const {
    double lx = 0.0;
    const std::uint8_t p = pos_[k];
    for (int a = 0; a < dim_; ++a) {
      const std::size_t s = stride_[a];
      switch ((p >> (2 * a)) & 3) {
        case kInterior:
          lx += (x[k + s] + x[k - s]) * inv_h2_[a];
          break;
        case kLow:
          lx += 2.0 * x[k + s] * inv_h2_[a];
          break;
        default:
          lx += 2.0 * x[k - s] * inv_h2_[a];
          break;
      }
    }
    return lx;
  }

  void apply(const std::vector<double>& x, std::vector<double>& y) const {
    for (std::size_t k = 0; k < n_; ++k) {
      y[k] = unknown_[k] ? -weight_[k] * stencil(x, k) : 0.0;
    }
  }

  // b = -W (source - sum over Neumann faces of 2 g / h).
  std::vector<double> rhs(std::span<const double> source,
                          const BoundaryField* neumann) const {
    std::vector<double> f(source.begin(), source.end());
    if (neumann) {
      auto pts = neumann->points();
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& fp = pts[i];
        if (!unknown_[fp.index]) continue;
        f[fp.index] -= 2.0 * neumann->values()[i] / grid_.spacing(fp.axis);
      }
    }
    std::vector<double> b(n_, 0.0);
    for (std::size_t k = 0; k < n_; ++k) {
      if (unknown_[k]) b[k] = -weight_[k] * f[k];
    }
    return b;
  }

  // Stencil diagonal: -sum 2/h^2 (same for every unknown).
  double stencil_diag() const {
    double d = 0.0;
    for (int a = 0; a < dim_; ++a) d -= 2.0 * inv_h2_[a];
    return d;
  }

 private:
  const Grid& grid_;
  std::size_t n_;
  int dim_;
  std::array<std::size_t, Grid::kMaxDim> stride_{};
  std::array<double, Grid::kMaxDim> inv_h2_{};
  std::vector<std::uint8_t> pos_;
  std::vector<std::uint8_t> unknown_;
  std::vector<double> weight_;
  std::vector<double> diag_;
};

void remove_plain_mean(std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  for (double& x : v) x -= m;
}

void solve_cg(const PoissonSystem& sys, const std::vector<double>& b,
              std::vector<double>& x, bool singular, const SolverConfig& cfg,
              SolveReport& rep) {
  const std::size_t n = sys.size();
  const double bnorm = std::sqrt(dot(b, b));
  std::vector<double> r = b, z(n), p(n), ap(n);
  std::fill(x.begin(), x.end(), 0.0);
  for (std::size_t k = 0; k < n; ++k) z[k] = sys.unknown(k) ? r[k] / sys.diag(k) : 0.0;
  p = z;
  double rz = dot(r, z);
  for (std::size_t it = 1; it <= cfg.max_iterations; ++it) {
    sys.apply(p, ap);
    const double pap = dot(p, ap);
    if (!(pap > 0.0)) break;  // breakdown: residual already at rounding level
    const double alpha = rz / pap;
    for (std::size_t k = 0; k < n; ++k) {
      x[k] += alpha * p[k];
      r[k] -= alpha * ap[k];
    }
    if (singular) remove_plain_mean(r);
    const double res = std::sqrt(dot(r, r)) / bnorm;
    rep.iterations = it;
    rep.final_residual = res;
    rep.residual_history.push_back(res);
    double e = 0.0;  // 1/2 x.Ax - b.x = -1/2 x.(b + r)
    for (std::size_t k = 0; k < n; ++k) e -= 0.5 * x[k] * (b[k] + r[k]);
    rep.energy_history.push_back(e);
    if (!std::isfinite(res)) throw NumericalError("conjugate gradient diverged");
    if (res <= cfg.tolerance) {
      rep.converged = true;
      return;
    }
    for (std::size_t k = 0; k < n; ++k) z[k] = sys.unknown(k) ? r[k] / sys.diag(k) : 0.0;
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t k = 0; k < n; ++k) p[k] = z[k] + beta * p[k];
  }
}

void solve_sor(const PoissonSystem& sys, const Grid& g, const std::vector<double>& b,
               std::vector<double>& x, const SolverConfig& cfg, SolveReport& rep) {
  const std::size_t n = sys.size();
  const double bnorm = std::sqrt(dot(b, b));
  std::size_t nmax = 0;
  for (int a = 0; a < g.dim(); ++a) nmax = std::max(nmax, g.count(a));
  const double omega =
      2.0 / (1.0 + std::sin(std::numbers::pi / static_cast<double>(nmax - 1)));
  const double d = sys.stencil_diag();
  // Row form of A x = b: L x = -b / w.
  std::vector<double> rhs(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    if (sys.unknown(k)) rhs[k] = -b[k] / sys.weight(k);
  }
  std::fill(x.begin(), x.end(), 0.0);
  std::vector<double> ax(n);
  for (std::size_t it = 1; it <= cfg.max_iterations; ++it) {
    for (std::size_t k = 0; k < n; ++k) {
      if (!sys.unknown(k)) continue;
      const double gs = (rhs[k] - sys.off_diagonal(x, k)) / d;
      x[k] += omega * (gs - x[k]);
    }
    sys.apply(x, ax);
    double rr = 0.0;
    for (std::size_t k = 0; k < n; ++k) rr += (b[k] - ax[k]) * (b[k] - ax[k]);
    const double res = std::sqrt(rr) / bnorm;
    rep.iterations = it;
    rep.final_residual = res;
    rep.residual_history.push_back(res);
    if (!std::isfinite(res)) throw NumericalError("SOR diverged");
    if (res <= cfg.tolerance) {
      rep.converged = true;
      return;
    }
  }
}

double total_weight(const Grid& g) {
  double v = 1.0;
  for (int a = 0; a < g.dim(); ++a) v *= g.hi(a) - g.lo(a);
  return v;
}

}  // namespace

double compatibility_defect(const ScalarField& source, const BoundaryField& neumann) {
  require_same_grid(source.grid(), neumann.grid(), "compatibility_defect");
  const auto w = quadrature_weights(source.grid());
  double vol = 0.0, vol_abs = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    vol += w[k] * source[k];
    vol_abs += w[k] * std::abs(source[k]);
  }
  double flux = 0.0, flux_abs = 0.0;
  for (std::size_t i = 0; i < neumann.size(); ++i) {
    const double a = neumann.area_weight(i);
    flux += a * neumann.values()[i];
    flux_abs += a * std::abs(neumann.values()[i]);
  }
  const double scale = vol_abs + flux_abs;
  return scale > 0.0 ? std::abs(vol - flux) / scale : 0.0;
}

ScalarSolution solve_poisson(const ScalarField& source, const BoundarySpec& bc,
                             const BoundaryField* neumann, const SolverConfig& cfg) {
  cfg.validate();
  const Grid& g = source.grid();
  if (neumann) require_same_grid(g, neumann->grid(), "solve_poisson");
  const bool singular = !bc.has_dirichlet(g.dim());

  SolveReport rep;
  rep.method = cfg.method;
  std::vector<double> src(source.values().begin(), source.values().end());
  if (singular) {
    const BoundaryField zero(g);
    const BoundaryField& data = neumann ? *neumann : zero;
    rep.compatibility_defect = compatibility_defect(source, data);
    if (rep.compatibility_defect > 10.0 * cfg.tolerance) {
      throw IncompatibleProblem(rep.compatibility_defect);
    }
    const double shift = (integral(source) - surface_integral(data)) / total_weight(g);
    for (double& s : src) s -= shift;
  }

  const PoissonSystem sys(g, bc);
  std::vector<double> b = sys.rhs(src, neumann);
  if (singular) remove_plain_mean(b);
  std::vector<double> x(g.size(), 0.0);
  if (std::sqrt(dot(b, b)) == 0.0) {
    rep.converged = true;
    return {ScalarField(g, std::move(x)), rep};
  }
  if (cfg.method == SolverMethod::conjugate_gradient) {
    solve_cg(sys, b, x, singular, cfg, rep);
  } else {
    solve_sor(sys, g, b, x, cfg, rep);
  }
  if (!rep.converged) throw ConvergenceFailure(rep);

  if (singular) {
    const auto w = quadrature_weights(g);
    double mean = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) mean += w[k] * x[k];
    mean /= total_weight(g);
    for (double& v : x) v -= mean;
  }
  return {ScalarField(g, std::move(x)), std::move(rep)};
}

ScalarSolution solve_scalar_neumann(const ScalarField& source,
                                    const BoundaryField& neumann,
                                    const SolverConfig& cfg) {
  return solve_poisson(source, BoundarySpec::all(FaceCondition::neumann), &neumann,
                       cfg);
}

namespace {

void merge(SolveReport& total, const SolveReport& part) {
  total.iterations += part.iterations;
  total.final_residual = std::max(total.final_residual, part.final_residual);
  total.residual_history.insert(total.residual_history.end(),
                                part.residual_history.begin(),
                                part.residual_history.end());
  total.converged = total.converged && part.converged;
}

// max |(w x n)| over boundary entries, w = curl(lambda) - t.
double tangential_defect(const VectorField& lambda, const VectorField& target) {
  const Grid& g = lambda.grid();
  VectorField w = [&] {
    if (g.dim() == 3) return curl(lambda) - target;
    // 2D: curl of psi z-hat is (d_y psi, -d_x psi).
    const auto dpsi_dx = derivative(g, lambda.component(0), 0);
    auto dpsi_dy = derivative(g, lambda.component(0), 1);
    std::vector<double> wy(dpsi_dx.size());
    for (std::size_t k = 0; k < wy.size(); ++k) wy[k] = -dpsi_dx[k];
    return VectorField(g, {std::move(dpsi_dy), std::move(wy)}) - target;
  }();
  double m = 0.0;
  for (const FacePoint& fp : boundary_points(g)) {
    Point n{0, 0, 0};
    n[fp.axis] = fp.side;
    Point wv{0, 0, 0};
    for (int c = 0; c < w.components(); ++c) wv[c] = w.component(c)[fp.index];
    const Point cx{wv[1] * n[2] - wv[2] * n[1], wv[2] * n[0] - wv[0] * n[2],
                   wv[0] * n[1] - wv[1] * n[0]};
    m = std::max(m, std::sqrt(cx[0] * cx[0] + cx[1] * cx[1] + cx[2] * cx[2]));
  }
  return m;
}

}  // namespace

VectorSolution project_gauge(const VectorField& lambda, const SolverConfig& cfg) {
  const Grid& g = lambda.grid();
  if (g.dim() != 3 || lambda.components() != 3) {
    throw InvalidInput("project_gauge: needs a 3D vector field");
  }
  const ScalarField src = -1.0 * divergence(lambda);
  auto psi = solve_poisson(src, BoundarySpec::all(FaceCondition::dirichlet), nullptr, cfg);
  VectorField out = lambda + gradient(psi.field);
  psi.report.divergence_defect = max_abs(divergence(out));
  return {std::move(out), std::move(psi.report)};
}

VectorSolution solve_vector_poisson(const VectorField& curl_source,
                                    const VectorField& target_curl_field,
                                    const SolverConfig& cfg) {
  cfg.validate();
  const Grid& g = curl_source.grid();
  require_same_grid(g, target_curl_field.grid(), "solve_vector_poisson");
  if (target_curl_field.components() != g.dim()) {
    throw InvalidInput("solve_vector_poisson: target must have grid.dim() components");
  }
  SolveReport total;
  total.method = cfg.method;
  total.converged = true;

  if (g.dim() == 2) {
    if (curl_source.components() != 1) {
      throw InvalidInput("solve_vector_poisson: 2D curl source has one component");
    }
    const ScalarField src = -1.0 * curl_source.component_field(0);
    auto s = solve_poisson(src, BoundarySpec::all(FaceCondition::dirichlet), nullptr, cfg);
    merge(total, s.report);
    VectorField lambda(g, 1);
    lambda.set_component(0, s.field);
    total.boundary_defect = tangential_defect(lambda, target_curl_field);
    return {std::move(lambda), std::move(total)};
  }
  if (g.dim() != 3 || curl_source.components() != 3) {
    throw InvalidInput("solve_vector_poisson: needs a 2D or 3D grid");
  }

  VectorField lambda(g, 3);
  for (int c = 0; c < 3; ++c) {
    BoundarySpec bc = BoundarySpec::all(FaceCondition::dirichlet);
    bc.faces[c] = {FaceCondition::neumann, FaceCondition::neumann};
    const ScalarField src = -1.0 * curl_source.component_field(c);
    auto s = solve_poisson(src, bc, nullptr, cfg);
    merge(total, s.report);
    lambda.set_component(c, s.field);
  }
  auto projected = project_gauge(lambda, cfg);
  merge(total, projected.report);
  total.divergence_defect = projected.report.divergence_defect;
  total.boundary_defect = tangential_defect(projected.field, target_curl_field);
  return {std::move(projected.field), std::move(total)};
}

}  // namespace hhj
