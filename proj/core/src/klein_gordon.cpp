#include "hhj/klein_gordon.hpp"

#include <cmath>

#include "hhj/errors.hpp"
#include "hhj/madelung.hpp"
#include "hhj/operators.hpp"

namespace hhj {

namespace {

void require_spacetime(const Grid& g, const char* what) {
  if (g.dim() != 2) {
    throw InvalidInput(std::string(what) + ": needs a 2D (t, x) grid");
  }
}

using cplx = std::complex<double>;

// Cartesian residual at every point.
std::vector<cplx> cartesian_residual(const ComplexField& f, const PhysicalConstants& pc) {
  const Grid& g = f.grid();
  const double c = pc.c, hb = pc.hbar, qc = pc.charge / pc.c;
  const auto re_tt = second_derivative(g, f.re.values(), 0);
  const auto im_tt = second_derivative(g, f.im.values(), 0);
  const auto re_xx = second_derivative(g, f.re.values(), 1);
  const auto im_xx = second_derivative(g, f.im.values(), 1);
  const auto re_t = derivative(g, f.re.values(), 0);
  const auto im_t = derivative(g, f.im.values(), 0);
  const auto re_x = derivative(g, f.re.values(), 1);
  const auto im_x = derivative(g, f.im.values(), 1);
  const auto a0 = f.potential.component(0);
  const auto a1 = f.potential.component(1);
  const auto da0 = derivative(g, a0, 0);
  const auto da1 = derivative(g, a1, 1);

  std::vector<cplx> out(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const cplx psi = f[k];
    const cplx box = cplx(re_tt[k], im_tt[k]) / (c * c) - cplx(re_xx[k], im_xx[k]);
    const cplx d0 = cplx(re_t[k], im_t[k]) / c;
    const cplx d1(re_x[k], im_x[k]);
    // A^mu d_mu Psi and d_mu A^mu with A^0 = A_0, A^1 = -A_1.
    const cplx a_dpsi = a0[k] * d0 - a1[k] * d1;
    const double div_a = da0[k] / c - da1[k];
    const double a2 = a0[k] * a0[k] - a1[k] * a1[k];
    const cplx i(0.0, 1.0);
    out[k] = -hb * hb * box - i * hb * qc * (div_a * psi + 2.0 * a_dpsi) + qc * qc * a2 * psi -
             pc.mass * pc.mass * c * c * psi;
  }
  return out;
}

}  // namespace

void PhysicalConstants::validate() const {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw InvalidInput("mass must be positive");
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidInput("c must be positive");
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw InvalidInput("hbar must be positive");
  if (!std::isfinite(charge)) throw InvalidInput("charge must be finite");
}

ComplexField::ComplexField(ScalarField r, ScalarField i)
    : re(std::move(r)), im(std::move(i)), potential(re.grid(), 2) {
  require_same_grid(re.grid(), im.grid(), "ComplexField");
  require_spacetime(re.grid(), "ComplexField");
}

ComplexField::ComplexField(ScalarField r, ScalarField i, VectorField a)
    : re(std::move(r)), im(std::move(i)), potential(std::move(a)) {
  require_same_grid(re.grid(), im.grid(), "ComplexField");
  require_same_grid(re.grid(), potential.grid(), "ComplexField");
  require_spacetime(re.grid(), "ComplexField");
  if (potential.components() != 2) throw InvalidInput("ComplexField: potential needs two components");
}

FieldData to_field_data(const ComplexField& f) {
  FieldData d = FieldData::from(f.potential);
  d.components.insert(d.components.begin(),
                      std::vector<double>(f.im.values().begin(), f.im.values().end()));
  d.components.insert(d.components.begin(),
                      std::vector<double>(f.re.values().begin(), f.re.values().end()));
  return d;
}

ComplexField complex_from_field_data(const FieldData& d) {
  if (d.components.size() != 2 && d.components.size() != 4) {
    throw InvalidInput("complex field needs 2 (re, im) or 4 (re, im, A_0, A_1) components");
  }
  ScalarField re(d.grid, d.components[0]);
  ScalarField im(d.grid, d.components[1]);
  if (d.components.size() == 2) return ComplexField(std::move(re), std::move(im));
  return ComplexField(std::move(re), std::move(im),
                      VectorField(d.grid, {d.components[2], d.components[3]}));
}

double plane_wave_frequency(double wavenumber, const PhysicalConstants& pc) {
  pc.validate();
  const double mc = pc.mass * pc.c / pc.hbar;
  return pc.c * std::sqrt(wavenumber * wavenumber + mc * mc);
}

ComplexField make_plane_wave(double wavenumber, const PhysicalConstants& pc, const Grid& grid,
                             std::complex<double> amplitude) {
  return make_superposition({{amplitude, wavenumber}}, pc, grid);
}

ComplexField make_superposition(const std::vector<WaveComponent>& waves,
                                const PhysicalConstants& pc, const Grid& grid) {
  pc.validate();
  require_spacetime(grid, "make_superposition");
  if (waves.empty()) throw InvalidInput("make_superposition: no wave components");
  std::vector<double> freq;
  for (const auto& w : waves) {
    if (!std::isfinite(w.wavenumber) || !std::isfinite(w.amplitude.real()) ||
        !std::isfinite(w.amplitude.imag())) {
      throw InvalidInput("make_superposition: non-finite wave component");
    }
    freq.push_back(plane_wave_frequency(w.wavenumber, pc));
  }
  ScalarField re(grid), im(grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Point p = grid.point(k);
    cplx s = 0.0;
    for (std::size_t j = 0; j < waves.size(); ++j) {
      s += waves[j].amplitude * std::polar(1.0, waves[j].wavenumber * p[1] - freq[j] * p[0]);
    }
    re[k] = s.real();
    im[k] = s.imag();
  }
  return ComplexField(std::move(re), std::move(im));
}

ScalarField kg_residual(const ComplexField& f, const PhysicalConstants& pc, KGStencil stencil) {
  pc.validate();
  const Grid& g = f.grid();
  const std::vector<cplx> cart = cartesian_residual(f, pc);
  ScalarField out(g);
  if (stencil == KGStencil::cartesian) {
    for (std::size_t k = 0; k < g.size(); ++k) out[k] = std::abs(cart[k]);
    return out;
  }

  // R (k.k - m^2c^2) - hbar^2 box R + (i hbar / R) d_mu(rho k^mu), times the phase.
  const MadelungState st = madelung(f, pc);
  const double c = pc.c, hb = pc.hbar, mc2 = pc.mass * pc.mass * c * c;
  std::vector<double> r(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) r[k] = std::sqrt(st.rho[k]);
  const auto r_tt = second_derivative(g, r, 0);
  const auto r_xx = second_derivative(g, r, 1);
  const ScalarField cont = continuity_residual(st, pc);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (st.mask[k]) {
      out[k] = std::abs(cart[k]);
      continue;
    }
    const std::array<double, 2> kv{st.k.component(0)[k], st.k.component(1)[k]};
    const double box_r = r_tt[k] / (c * c) - r_xx[k];
    const double real = r[k] * (minkowski_dot(kv, kv) - mc2) - hb * hb * box_r;
    const double imag = hb * cont[k] / r[k];
    out[k] = std::hypot(real, imag);
  }
  return out;
}

}  // namespace hhj
