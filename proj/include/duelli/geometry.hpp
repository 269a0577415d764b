#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "duelli/rng.hpp"

namespace duelli {

// A location in [0,1]^d.
using Point = std::vector<double>;

// 2^d subcube fan-out makes higher dimensions infeasible at desk scale.
inline constexpr int kMaxDimension = 8;

// Edge length r_h = 2^-h of a depth-h cube; r_0 = 1.
double radius(int depth);

// max_i |p_i - q_i|. Throws on dimension mismatch.
double linf_distance(const Point& p, const Point& q);

// Axis-aligned cube of the dyadic multiscale partition of [0,1]^d.
// Covers [index_i * r_h, (index_i + 1) * r_h] on each axis.
struct Cube {
  int depth = 1;
  std::vector<std::uint32_t> index;

  int dim() const { return static_cast<int>(index.size()); }
  double low(int axis) const;
  double high(int axis) const;

  // Closed-cube membership; boundary points may satisfy this for several
  // adjacent cubes.
  bool contains(const Point& p) const;

  // Ownership rule: half-open [low, high) per axis, closed for cubes touching
  // coordinate 1. Every point of [0,1]^d is owned by exactly one cube per depth.
  bool owns(const Point& p) const;

  // The 2^d depth-(h+1) subcubes, lexicographic index order.
  std::vector<Cube> children() const;

  // Uniform point in the cube; consumes exactly dim() draws from rng.
  Point sample_uniform(Rng& rng) const;

  // "h:i1.i2.....id"
  std::string id() const;

  bool operator==(const Cube&) const = default;
};

// The 2^d depth-1 cubes tiling [0,1]^d, lexicographic index order.
std::vector<Cube> root_cubes(int d);

}  // namespace duelli
