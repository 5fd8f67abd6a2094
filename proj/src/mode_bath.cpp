// SPDX-License-Identifier: Apache-2.0
#include "vacfric/mode_bath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "vacfric/errors.hpp"

namespace vacfric {

GaussLegendreRule gauss_legendre(std::size_t n) {
  if (n == 0) throw DomainError("Gauss-Legendre rule needs at least one node");
  GaussLegendreRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Newton iteration on P_n from the Tricomi initial guess; converges to the
    // i-th largest root.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 1 ? x : p1;
      const double pm = n == 1 ? 1.0 : p0;
      dp = static_cast<double>(n) * (x * pn - pm) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root for the weight.
    {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 1 ? x : p1;
      const double pm = n == 1 ? 1.0 : p0;
      dp = static_cast<double>(n) * (x * pn - pm) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    if (2 * i + 1 == n) x = 0.0;
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[n - 1 - i] = w;
    rule.weights[i] = w;
  }
  return rule;
}

PolarizationBasis polarization_basis(const Vec3& kappa) {
  if (!is_finite(kappa) || std::abs(norm(kappa) - 1.0) > 1e-12) {
    throw DomainError("polarization_basis: kappa must be a unit vector");
  }
  const Vec3 zk = cross(unit_z, kappa);
  const double s = norm(zk);
  const Vec3 eps1 = s > 1e-8 ? zk / s : unit_x;
  return {eps1, cross(kappa, eps1)};
}

DirectionGrid::DirectionGrid(std::vector<DirectionNode> nodes) : nodes_(std::move(nodes)) {
  for (const auto& n : nodes_) {
    if (!(n.weight > 0.0)) throw DomainError("direction weights must be positive");
    if (std::abs(norm(n.kappa) - 1.0) > 1e-12) throw DomainError("directions must be unit vectors");
  }
}

std::optional<std::size_t> DirectionGrid::antipode(std::size_t i) const {
  if (antipodes_.empty()) return std::nullopt;
  return antipodes_[i];
}

double DirectionGrid::total_weight() const {
  double sum = 0.0;
  for (const auto& n : nodes_) sum += n.weight;
  return sum;
}

DirectionGrid direction_grid(std::size_t n_polar, std::size_t n_azimuth) {
  if (n_polar < 2) throw DomainError("direction_grid: n_polar must be >= 2");
  if (n_azimuth < 4) throw DomainError("direction_grid: n_azimuth must be >= 4");

  const GaussLegendreRule rule = gauss_legendre(n_polar);
  const double dphi = 2.0 * std::numbers::pi / static_cast<double>(n_azimuth);

  // Azimuthal midpoints; with an even count the second half is the exact
  // negation of the first so that the grid is point-symmetric bit for bit.
  const bool even = n_azimuth % 2 == 0;
  std::vector<double> cphi(n_azimuth), sphi(n_azimuth);
  for (std::size_t j = 0; j < n_azimuth; ++j) {
    if (even && j >= n_azimuth / 2) {
      cphi[j] = -cphi[j - n_azimuth / 2];
      sphi[j] = -sphi[j - n_azimuth / 2];
    } else {
      const double phi = dphi * (static_cast<double>(j) + 0.5);
      cphi[j] = std::cos(phi);
      sphi[j] = std::sin(phi);
    }
  }

  DirectionGrid grid;
  grid.nodes_.reserve(n_polar * n_azimuth);
  for (std::size_t i = 0; i < n_polar; ++i) {
    const double ct = rule.nodes[i];
    const double st = std::sqrt((1.0 - ct) * (1.0 + ct));
    for (std::size_t j = 0; j < n_azimuth; ++j) {
      grid.nodes_.push_back({{st * cphi[j], st * sphi[j], ct}, rule.weights[i] * dphi});
    }
  }
  if (even) {
    grid.antipodes_.resize(grid.nodes_.size());
    for (std::size_t i = 0; i < n_polar; ++i) {
      for (std::size_t j = 0; j < n_azimuth; ++j) {
        grid.antipodes_[i * n_azimuth + j] =
            (n_polar - 1 - i) * n_azimuth + (j + n_azimuth / 2) % n_azimuth;
      }
    }
  }
  return grid;
}

std::vector<FrequencyNode> frequency_grid(double center, double halfwidth, std::size_t n) {
  if (!std::isfinite(center) || !std::isfinite(halfwidth) || !(halfwidth > 0.0)) {
    throw DomainError("frequency_grid: center and halfwidth must be finite, halfwidth > 0");
  }
  if (!(center - halfwidth > 0.0)) throw DomainError("frequency_grid: window reaches omega <= 0");
  if (n < 2) throw DomainError("frequency_grid: n must be >= 2");
  const GaussLegendreRule rule = gauss_legendre(n);
  std::vector<FrequencyNode> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = {center + halfwidth * rule.nodes[i], halfwidth * rule.weights[i]};
  }
  return out;
}

double ModeGrid::max_frequency_spacing() const {
  double gap = 0.0;
  for (std::size_t i = 1; i < frequencies.size(); ++i) {
    gap = std::max(gap, frequencies[i].omega - frequencies[i - 1].omega);
  }
  return gap;
}

double ModeGrid::recurrence_time() const {
  const double gap = max_frequency_spacing();
  return gap > 0.0 ? 2.0 * std::numbers::pi / gap : std::numeric_limits<double>::infinity();
}

ModeGrid build_mode_grid(DirectionGrid directions, std::vector<FrequencyNode> frequencies) {
  if (directions.size() == 0) throw DomainError("build_mode_grid: no directions");
  if (frequencies.empty()) throw DomainError("build_mode_grid: no frequencies");
  for (std::size_t i = 0; i < frequencies.size(); ++i) {
    const auto& f = frequencies[i];
    if (!(f.omega > 0.0) || !(f.weight > 0.0)) {
      throw DomainError("build_mode_grid: frequencies and weights must be positive");
    }
    if (i > 0 && !(f.omega > frequencies[i - 1].omega)) {
      throw DomainError("build_mode_grid: frequency nodes must be strictly increasing");
    }
  }

  ModeGrid grid;
  grid.modes.reserve(2 * directions.size() * frequencies.size());
  for (std::size_t di = 0; di < directions.size(); ++di) {
    const DirectionNode& dir = directions[di];
    const PolarizationBasis pol = polarization_basis(dir.kappa);
    for (const FrequencyNode& f : frequencies) {
      for (int lambda = 1; lambda <= 2; ++lambda) {
        grid.modes.push_back({dir.kappa, f.omega, lambda, pol[lambda], dir.weight, f.weight, di});
      }
    }
  }
  grid.directions = std::move(directions);
  grid.frequencies = std::move(frequencies);
  return grid;
}

}  // namespace vacfric
