// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "vacfric/vec3.hpp"

namespace vacfric {

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1]. Nodes are
/// ascending and exactly antisymmetric (x[n-1-i] == -x[i]).
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(std::size_t n);

/// Transverse polarization pair completing kappa to a right-handed triad.
struct PolarizationBasis {
  Vec3 eps1;
  Vec3 eps2;

  const Vec3& operator[](int lambda) const { return lambda == 1 ? eps1 : eps2; }
};

/// eps1 is along z x kappa (x-hat at the poles), eps2 = kappa x eps1.
PolarizationBasis polarization_basis(const Vec3& kappa);

struct DirectionNode {
  Vec3 kappa;
  double weight;
};

/// Weighted set of propagation directions covering the unit sphere.
class DirectionGrid {
 public:
  DirectionGrid() = default;
  /// Arbitrary node set; no antipode table.
  explicit DirectionGrid(std::vector<DirectionNode> nodes);

  std::span<const DirectionNode> nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  const DirectionNode& operator[](std::size_t i) const { return nodes_[i]; }

  /// Index of the node at -kappa, if the grid is point-symmetric. When present
  /// the antipode's kappa is the exact negation of node i.
  std::optional<std::size_t> antipode(std::size_t i) const;
  bool point_symmetric() const { return !antipodes_.empty(); }

  double total_weight() const;

 private:
  friend DirectionGrid direction_grid(std::size_t n_polar, std::size_t n_azimuth);

  std::vector<DirectionNode> nodes_;
  std::vector<std::size_t> antipodes_;
};

/// Product rule: Gauss-Legendre in cos(theta) times uniform midpoints in phi.
/// Integrates polynomials in kappa exactly up to degree min(2 n_polar - 1, n_azimuth - 1).
/// Requires n_polar >= 2 and n_azimuth >= 4.
DirectionGrid direction_grid(std::size_t n_polar, std::size_t n_azimuth);

struct FrequencyNode {
  double omega;
  double weight;
};

/// Gauss-Legendre nodes on [center - halfwidth, center + halfwidth].
std::vector<FrequencyNode> frequency_grid(double center, double halfwidth, std::size_t n);

/// One discrete field mode and the quadrature weights it stands in for.
struct Mode {
  Vec3 kappa;
  double omega = 0.0;
  int lambda = 1;
  Vec3 eps;
  double w_dir = 0.0;
  double w_om = 0.0;
  std::size_t direction = 0;  // index into ModeGrid::directions
};

/// Discrete stand-in for the mode continuum: directions x frequencies x {1, 2}.
struct ModeGrid {
  DirectionGrid directions;
  std::vector<FrequencyNode> frequencies;
  std::vector<Mode> modes;

  /// Largest spacing between adjacent frequency nodes.
  double max_frequency_spacing() const;
  /// 2 pi over the largest node spacing: the earliest revival time of the bath.
  double recurrence_time() const;
};

ModeGrid build_mode_grid(DirectionGrid directions, std::vector<FrequencyNode> frequencies);

}  // namespace vacfric
