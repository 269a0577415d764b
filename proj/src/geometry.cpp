#include "duelli/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace duelli {

double radius(int depth) {
  if (depth < 0) throw std::invalid_argument("radius: depth must be >= 0");
  return std::ldexp(1.0, -depth);
}

double linf_distance(const Point& p, const Point& q) {
  if (p.size() != q.size())
    throw std::invalid_argument("linf_distance: dimension mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    d = std::max(d, std::fabs(p[i] - q[i]));
  return d;
}

double Cube::low(int axis) const {
  return static_cast<double>(index[axis]) * radius(depth);
}

double Cube::high(int axis) const {
  return static_cast<double>(index[axis] + 1) * radius(depth);
}

bool Cube::contains(const Point& p) const {
  if (static_cast<int>(p.size()) != dim())
    throw std::invalid_argument("Cube::contains: dimension mismatch");
  for (int i = 0; i < dim(); ++i)
    if (p[i] < low(i) || p[i] > high(i)) return false;
  return true;
}

bool Cube::owns(const Point& p) const {
  if (static_cast<int>(p.size()) != dim())
    throw std::invalid_argument("Cube::owns: dimension mismatch");
  const std::uint32_t last = (1u << depth) - 1;
  for (int i = 0; i < dim(); ++i) {
    if (p[i] < low(i)) return false;
    if (index[i] == last ? p[i] > high(i) : p[i] >= high(i)) return false;
  }
  return true;
}

std::vector<Cube> Cube::children() const {
  const int d = dim();
  std::vector<Cube> out;
  out.reserve(std::size_t{1} << d);
  Cube child;
  child.depth = depth + 1;
  child.index.assign(d, 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
    for (int i = 0; i < d; ++i) {
      const std::uint32_t bit = (mask >> (d - 1 - i)) & 1u;
      child.index[i] = 2 * index[i] + bit;
    }
    out.push_back(child);
  }
  return out;
}

Point Cube::sample_uniform(Rng& rng) const {
  const double r = radius(depth);
  Point p(dim());
  for (int i = 0; i < dim(); ++i) p[i] = low(i) + rng.uniform01() * r;
  return p;
}

std::string Cube::id() const {
  std::string s = std::to_string(depth) + ":";
  for (int i = 0; i < dim(); ++i) {
    if (i > 0) s += '.';
    s += std::to_string(index[i]);
  }
  return s;
}

std::vector<Cube> root_cubes(int d) {
  if (d < 1 || d > kMaxDimension)
    throw std::invalid_argument("root_cubes: dimension must be in [1, 8]");
  Cube unit;
  unit.depth = 0;
  unit.index.assign(d, 0);
  return unit.children();
}

}  // namespace duelli
