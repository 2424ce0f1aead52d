#include "hhj/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hhj/errors.hpp"

namespace hhj {

Grid::Grid(std::vector<std::size_t> counts, std::vector<double> lo,
           std::vector<double> hi)
    : dim_(static_cast<int>(counts.size())), size_(1) {
  if (dim_ < 1 || dim_ > kMaxDim) {
    throw InvalidInput("grid dimension must be 1-3, got " +
                       std::to_string(dim_));
  }
  if (lo.size() != counts.size() || hi.size() != counts.size()) {
    throw InvalidInput("grid extents do not match the number of axes");
  }
  for (int a = 0; a < dim_; ++a) {
    if (counts[a] < 3) {
      throw InvalidInput("grid axis " + std::to_string(a) +
                         " needs at least 3 samples");
    }
    if (!std::isfinite(lo[a]) || !std::isfinite(hi[a]) || !(hi[a] > lo[a])) {
      throw InvalidInput("grid axis " + std::to_string(a) +
                         " needs finite lo < hi");
    }
    counts_[a] = counts[a];
    lo_[a] = lo[a];
    hi_[a] = hi[a];
    spacing_[a] = (hi[a] - lo[a]) / static_cast<double>(counts[a] - 1);
    if (size_ > kMaxPoints / counts[a]) {
      throw InvalidInput("grid exceeds the supported point count");
    }
    size_ *= counts[a];
  }
  if (size_ > kMaxPoints) {
    throw InvalidInput("grid exceeds the supported point count");
  }
  std::size_t s = 1;
  for (int a = dim_ - 1; a >= 0; --a) {
    strides_[a] = s;
    s *= counts_[a];
  }
}

Grid Grid::cube(int dim, std::size_t count, double lo, double hi) {
  return Grid(std::vector<std::size_t>(dim, count), std::vector<double>(dim, lo),
              std::vector<double>(dim, hi));
}

double Grid::max_spacing() const {
  return *std::max_element(spacing_.begin(), spacing_.begin() + dim_);
}

std::size_t Grid::index(const std::array<std::size_t, kMaxDim>& multi) const {
  std::size_t flat = 0;
  for (int a = 0; a < dim_; ++a) flat += multi[a] * strides_[a];
  return flat;
}

std::array<std::size_t, Grid::kMaxDim> Grid::unravel(std::size_t flat) const {
  std::array<std::size_t, kMaxDim> m{0, 0, 0};
  for (int a = 0; a < dim_; ++a) m[a] = axis_index(flat, a);
  return m;
}

std::array<double, Grid::kMaxDim> Grid::point(std::size_t flat) const {
  std::array<double, kMaxDim> p{0, 0, 0};
  for (int a = 0; a < dim_; ++a) p[a] = coordinate(a, axis_index(flat, a));
  return p;
}

bool Grid::on_boundary(std::size_t flat) const {
  for (int a = 0; a < dim_; ++a) {
    const std::size_t i = axis_index(flat, a);
    if (i == 0 || i + 1 == counts_[a]) return true;
  }
  return false;
}

Grid Grid::refined() const {
  std::vector<std::size_t> c = counts();
  for (auto& n : c) n = 2 * n - 1;
  return Grid(c, lows(), highs());
}

std::vector<std::size_t> Grid::counts() const {
  return {counts_.begin(), counts_.begin() + dim_};
}
std::vector<double> Grid::lows() const { return {lo_.begin(), lo_.begin() + dim_}; }
std::vector<double> Grid::highs() const {
  return {hi_.begin(), hi_.begin() + dim_};
}

bool operator==(const Grid& a, const Grid& b) {
  return a.dim_ == b.dim_ && a.counts_ == b.counts_ && a.lo_ == b.lo_ &&
         a.hi_ == b.hi_;
}

std::vector<double> quadrature_weights(const Grid& g) {
  std::vector<double> w(g.size(), 1.0);
  for (std::size_t k = 0; k < g.size(); ++k) {
    for (int a = 0; a < g.dim(); ++a) {
      const std::size_t i = g.axis_index(k, a);
      const bool edge = (i == 0 || i + 1 == g.count(a));
      w[k] *= edge ? 0.5 * g.spacing(a) : g.spacing(a);
    }
  }
  return w;
}

}  // namespace hhj
