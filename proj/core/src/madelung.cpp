#include "hhj/madelung.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hhj/errors.hpp"
#include "hhj/operators.hpp"

namespace hhj {

namespace {

constexpr double kPi = std::numbers::pi;
// Phase steps larger than this between neighbours cannot be assigned a
// branch reliably.
constexpr double kAmbiguousJump = 0.75 * kPi;
// Reach of the widest stencil (4-point one-sided second difference).
constexpr std::size_t kStencilReach = 3;

double wrap(double a) { return std::remainder(a, 2.0 * kPi); }

// Unwrap `theta` along every line of `axis`, starting each line at index
// `start` along that axis. Ambiguous steps mark both ends in `nodes`.
std::vector<double> unwrap_lines(const Grid& g, const std::vector<double>& theta, int axis,
                                 std::size_t start, Mask& nodes) {
  std::vector<double> u = theta;
  const std::size_t n = g.count(axis), s = g.stride(axis);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g.axis_index(k, axis) != 0) continue;
    const std::size_t base = k;
    auto step = [&](std::size_t from, std::size_t to) {
      const std::size_t a = base + from * s, b = base + to * s;
      const double d = wrap(theta[b] - theta[a]);
      if (std::abs(d) > kAmbiguousJump) nodes[a] = nodes[b] = 1;
      u[b] = u[a] + d;
    };
    for (std::size_t i = start + 1; i < n; ++i) step(i - 1, i);
    for (std::size_t i = start; i-- > 0;) step(i + 1, i);
  }
  return u;
}

Mask dilate(const Grid& g, const Mask& m, std::size_t r) {
  Mask out = m;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!m[k]) continue;
    for (int a = 0; a < g.dim(); ++a) {
      const std::size_t i = g.axis_index(k, a), n = g.count(a), s = g.stride(a);
      const std::size_t lo = i >= r ? i - r : 0, hi = std::min(n - 1, i + r);
      for (std::size_t j = lo; j <= hi; ++j) out[k - i * s + j * s] = 1;
    }
  }
  for (auto& v : out) v = v ? 1 : 0;
  return out;
}

void require_state(const MadelungState& st) {
  if (st.grid().dim() != 2) throw InvalidInput("Madelung state needs a 2D (t, x) grid");
}

std::vector<double> d_t(const Grid& g, std::span<const double> v, double c) {
  auto d = derivative(g, v, 0);
  for (double& x : d) x /= c;
  return d;
}

std::vector<double> d_x(const Grid& g, std::span<const double> v) { return derivative(g, v, 1); }

}  // namespace

MadelungState madelung(const ComplexField& f, const PhysicalConstants& pc) {
  pc.validate();
  const Grid& g = f.grid();
  const std::size_t n = g.size();
  const std::size_t nt = g.count(0), nx = g.count(1);

  ScalarField rho(g);
  std::vector<double> theta(n);
  double rmax = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    rho[k] = f.re[k] * f.re[k] + f.im[k] * f.im[k];
    theta[k] = std::atan2(f.im[k], f.re[k]);
    rmax = std::max(rmax, rho[k]);
  }
  Mask nodes(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    if (!(rho[k] > kDensityFloor * rmax)) nodes[k] = 1;
  }

  // Reference column: the one whose smallest density is largest.
  std::size_t jref = 0;
  double best = -1.0;
  for (std::size_t j = 0; j < nx; ++j) {
    double mn = rho[j];
    for (std::size_t i = 0; i < nt; ++i) mn = std::min(mn, rho[i * nx + j]);
    if (mn > best) {
      best = mn;
      jref = j;
    }
  }

  const std::vector<double> ux = unwrap_lines(g, theta, 1, jref, nodes);
  const std::vector<double> ut = unwrap_lines(g, theta, 0, 0, nodes);

  // Global phase: rows unwrapped in x, shifted by whole turns so the
  // reference column follows its t-unwrapped values.
  ScalarField S(g);
  for (std::size_t i = 0; i < nt; ++i) {
    const double shift = ut[i * nx + jref] - ux[i * nx + jref];
    const double turns = 2.0 * kPi * std::round(shift / (2.0 * kPi));
    for (std::size_t j = 0; j < nx; ++j) S[i * nx + j] = pc.hbar * (ux[i * nx + j] + turns);
  }

  MadelungState st{std::move(rho), std::move(S), VectorField(g, 2), VectorField(g, 2),
                   f.potential, {}, {}, {}};
  st.nodes = nodes;
  st.mask = dilate(g, nodes, kStencilReach);
  st.omega_mask = dilate(g, st.mask, kStencilReach);

  const auto st_t = derivative(g, ut, 0);
  const auto st_x = derivative(g, ux, 1);
  const double qc = pc.charge / pc.c;
  for (std::size_t k = 0; k < n; ++k) {
    if (st.mask[k]) continue;
    st.k.component(0)[k] = -pc.hbar * st_t[k] / pc.c - qc * f.potential.component(0)[k];
    st.k.component(1)[k] = -pc.hbar * st_x[k] - qc * f.potential.component(1)[k];
  }
  return st;
}

ComplexField reconstruct(const MadelungState& st, const PhysicalConstants& pc) {
  pc.validate();
  require_state(st);
  const Grid& g = st.grid();
  ScalarField re(g), im(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double r = std::sqrt(st.rho[k]);
    re[k] = r * std::cos(st.S[k] / pc.hbar);
    im[k] = r * std::sin(st.S[k] / pc.hbar);
  }
  return ComplexField(std::move(re), std::move(im), st.potential);
}

ScalarField continuity_residual(const MadelungState& st, const PhysicalConstants& pc) {
  pc.validate();
  require_state(st);
  const Grid& g = st.grid();
  const double c = pc.c, qc = pc.charge / pc.c;
  // d_mu k^mu = -box S - (q/c) d_mu A^mu, with box S from second differences
  // of the phase unwrapped along each axis.
  std::vector<double> theta(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) theta[k] = st.S[k] / pc.hbar;
  Mask scratch(g.size(), 0);
  const auto ut = unwrap_lines(g, theta, 0, 0, scratch);
  const auto ux = unwrap_lines(g, theta, 1, 0, scratch);
  const auto s_tt = second_derivative(g, ut, 0);
  const auto s_xx = second_derivative(g, ux, 1);
  const auto a0_t = d_t(g, st.potential.component(0), c);
  const auto a1_x = d_x(g, st.potential.component(1));
  const auto r_t = d_t(g, st.rho.values(), c);
  const auto r_x = d_x(g, st.rho.values());
  ScalarField out(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (st.mask[k]) continue;
    const double box_s = pc.hbar * (s_tt[k] / (c * c) - s_xx[k]);
    const double div_k = -box_s - qc * (a0_t[k] - a1_x[k]);
    const double k0 = st.k.component(0)[k], k1 = st.k.component(1)[k];
    out[k] = k0 * r_t[k] - k1 * r_x[k] + st.rho[k] * div_k;
  }
  return out;
}

ScalarField quantum_hj_residual(const MadelungState& st, const PhysicalConstants& pc) {
  pc.validate();
  require_state(st);
  const Grid& g = st.grid();
  std::vector<double> r(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) r[k] = std::sqrt(st.rho[k]);
  const auto r_tt = second_derivative(g, r, 0);
  const auto r_xx = second_derivative(g, r, 1);
  const double c = pc.c, mc2 = pc.mass * pc.mass * c * c;
  ScalarField out(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (st.mask[k]) continue;
    const std::array<double, 2> kv{st.k.component(0)[k], st.k.component(1)[k]};
    const double box_r = r_tt[k] / (c * c) - r_xx[k];
    out[k] = mc2 - minkowski_dot(kv, kv) + pc.hbar * pc.hbar * box_r / r[k];
  }
  return out;
}

const VectorField& solve_omega(MadelungState& st, const PhysicalConstants& pc) {
  pc.validate();
  require_state(st);
  const Grid& g = st.grid();
  const double mc = pc.mass * pc.c;
  Mask bad(g.size(), 0);
  st.omega = VectorField(g, 2);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (st.mask[k]) continue;
    const std::array<double, 2> kv{st.k.component(0)[k], st.k.component(1)[k]};
    const double kk = minkowski_dot(kv, kv);
    if (!(kk > 0.0)) {
      bad[k] = 1;
      continue;
    }
    const double alpha = mc / std::sqrt(kk) - 1.0;
    st.omega.component(0)[k] = alpha * kv[0];
    st.omega.component(1)[k] = alpha * kv[1];
  }
  const Mask grown = dilate(g, bad, kStencilReach);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (grown[k]) st.omega_mask[k] = 1;
  }
  return st.omega;
}

ScalarField normalization_residual(const MadelungState& st, const PhysicalConstants& pc) {
  pc.validate();
  require_state(st);
  const Grid& g = st.grid();
  const double mc2 = pc.mass * pc.mass * pc.c * pc.c;
  ScalarField out(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (st.mask[k] || st.omega_mask[k]) continue;
    const std::array<double, 2> p{st.k.component(0)[k] + st.omega.component(0)[k],
                                  st.k.component(1)[k] + st.omega.component(1)[k]};
    out[k] = minkowski_dot(p, p) - mc2;
  }
  return out;
}

VectorField vorticity_orthogonality_residual(const MadelungState& st,
                                             const PhysicalConstants& pc) {
  pc.validate();
  require_state(st);
  const Grid& g = st.grid();
  const auto w1_t = d_t(g, st.omega.component(1), pc.c);
  const auto w0_x = d_x(g, st.omega.component(0));
  VectorField out(g, 2);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (st.omega_mask[k]) continue;
    const double f = w1_t[k] - w0_x[k];
    const double p0 = st.k.component(0)[k] + st.omega.component(0)[k];
    const double p1 = st.k.component(1)[k] + st.omega.component(1)[k];
    // p^1 = -p_1, so -p^1 F = p_1 F.
    out.component(0)[k] = p1 * f;
    out.component(1)[k] = p0 * f;
  }
  return out;
}

ScalarField omega_divergence(const MadelungState& st, const PhysicalConstants& pc) {
  pc.validate();
  require_state(st);
  const Grid& g = st.grid();
  const auto w0_t = d_t(g, st.omega.component(0), pc.c);
  const auto w1_x = d_x(g, st.omega.component(1));
  ScalarField out(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!st.omega_mask[k]) out[k] = w0_t[k] - w1_x[k];
  }
  return out;
}

ScalarField creation_rate(const MadelungState& st, const PhysicalConstants& pc) {
  pc.validate();
  require_state(st);
  const Grid& g = st.grid();
  std::vector<double> j0(g.size()), j1(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    j0[k] = st.rho[k] * st.omega.component(0)[k];
    j1[k] = st.rho[k] * st.omega.component(1)[k];
  }
  const auto d0 = d_t(g, j0, pc.c);
  const auto d1 = d_x(g, j1);
  ScalarField out(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!st.omega_mask[k]) out[k] = d0[k] - d1[k];
  }
  return out;
}

VectorField current(const MadelungState& st) {
  require_state(st);
  const Grid& g = st.grid();
  VectorField out(g, 2);
  for (std::size_t k = 0; k < g.size(); ++k) {
    out.component(0)[k] = st.rho[k] * (st.k.component(0)[k] + st.omega.component(0)[k]);
    out.component(1)[k] = -st.rho[k] * (st.k.component(1)[k] + st.omega.component(1)[k]);
  }
  return out;
}

VectorField four_velocity_identity_residual(const MadelungState& st,
                                            const PhysicalConstants& pc) {
  pc.validate();
  require_state(st);
  const Grid& g = st.grid();
  const double mc = pc.mass * pc.c;
  std::vector<std::vector<double>> u(2, std::vector<double>(g.size()));
  for (std::size_t k = 0; k < g.size(); ++k) {
    for (int i = 0; i < 2; ++i) {
      u[i][k] = (st.k.component(i)[k] + st.omega.component(i)[k]) / mc;
    }
  }
  // du[i][mu] = d_mu u_i
  const std::vector<double> du[2][2] = {{d_t(g, u[0], pc.c), d_x(g, u[0])},
                                        {d_t(g, u[1], pc.c), d_x(g, u[1])}};
  VectorField out(g, 2);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (st.omega_mask[k]) continue;
    const std::array<double, 2> up = raise({u[0][k], u[1][k]});
    for (int i = 0; i < 2; ++i) {
      double lhs = 0.0, rhs = 0.0;
      for (int j = 0; j < 2; ++j) {
        lhs += up[j] * du[i][j][k];
        rhs += up[j] * (du[i][j][k] - du[j][i][k]);
      }
      out.component(i)[k] = lhs - rhs;
    }
  }
  return out;
}

double masked_max(const ScalarField& s, const Mask& mask) {
  double m = 0.0;
  for (std::size_t k = 0; k < s.grid().size(); ++k) {
    if (!mask[k]) m = std::max(m, std::abs(s[k]));
  }
  return m;
}

double masked_max(const VectorField& v, const Mask& mask) {
  double m = 0.0;
  for (std::size_t k = 0; k < v.grid().size(); ++k) {
    if (mask[k]) continue;
    double s = 0.0;
    for (int c = 0; c < v.components(); ++c) s += v.component(c)[k] * v.component(c)[k];
    m = std::max(m, std::sqrt(s));
  }
  return m;
}

double masked_fraction(const Mask& mask) {
  if (mask.empty()) return 0.0;
  std::size_t n = 0;
  for (auto v : mask) n += v ? 1 : 0;
  return static_cast<double>(n) / static_cast<double>(mask.size());
}

}  // namespace hhj
