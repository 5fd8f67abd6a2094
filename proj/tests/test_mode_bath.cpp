// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "vacfric/errors.hpp"
#include "vacfric/mode_bath.hpp"

using namespace vacfric;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double four_pi = 4.0 * std::numbers::pi;

template <typename F>
double sphere_sum(const DirectionGrid& g, F&& f) {
  double s = 0.0;
  for (const auto& n : g.nodes()) s += n.weight * f(n.kappa);
  return s;
}

void check_triad(const Vec3& kappa, const PolarizationBasis& b) {
  CHECK_THAT(norm(b.eps1), WithinAbs(1.0, 1e-12));
  CHECK_THAT(norm(b.eps2), WithinAbs(1.0, 1e-12));
  CHECK_THAT(dot(kappa, b.eps1), WithinAbs(0.0, 1e-12));
  CHECK_THAT(dot(kappa, b.eps2), WithinAbs(0.0, 1e-12));
  CHECK_THAT(dot(b.eps1, b.eps2), WithinAbs(0.0, 1e-12));
  CHECK_THAT(dot(kappa, cross(b.eps1, b.eps2)), WithinAbs(1.0, 1e-12));
}

}  // namespace

TEST_CASE("Gauss-Legendre rule") {
  for (std::size_t n : {2u, 3u, 8u, 17u, 64u, 301u}) {
    const auto r = gauss_legendre(n);
    REQUIRE(r.nodes.size() == n);
    double w = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      w += r.weights[i];
      CHECK(r.weights[i] > 0.0);
      CHECK(r.nodes[n - 1 - i] == -r.nodes[i]);
      if (i > 0) CHECK(r.nodes[i] > r.nodes[i - 1]);
    }
    CHECK_THAT(w, WithinAbs(2.0, 1e-13));
    // exact for x^(2n-2)
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m += r.weights[i] * std::pow(r.nodes[i], 2.0 * n - 2.0);
    CHECK_THAT(m, WithinRel(2.0 / (2.0 * n - 1.0), 1e-12));
  }
  CHECK_THROWS_AS(gauss_legendre(0), DomainError);
}

TEST_CASE("polarization basis at the pole") {
  const auto b = polarization_basis(unit_z);
  CHECK(b.eps1 == unit_x);
  CHECK(b.eps2 == unit_y);
  check_triad(unit_z, b);
  const auto s = polarization_basis(-unit_z);
  CHECK(s.eps1 == unit_x);
  check_triad(-unit_z, s);
}

TEST_CASE("polarization basis along x") {
  const auto b = polarization_basis(unit_x);
  check_triad(unit_x, b);
  // z x x-hat = +y-hat, so the convention gives eps1 = +y, eps2 = x x y = +z.
  CHECK_THAT(b.eps1.y, WithinAbs(1.0, 1e-15));
  CHECK_THAT(b.eps2.z, WithinAbs(1.0, 1e-15));
  CHECK(b[1] == b.eps1);
  CHECK(b[2] == b.eps2);
}

TEST_CASE("polarization basis is a right-handed triad for random directions") {
  oracle::Gen gen(0x9a11);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 k = gen.unit_vector();
    const auto b = polarization_basis(k);
    check_triad(k, b);
    // eps1 is parallel to z x kappa
    CHECK_THAT(norm(cross(b.eps1, cross(unit_z, k))), WithinAbs(0.0, 1e-12));
  }
  // Just off the pole the fallback must not kick in prematurely.
  const Vec3 near = normalized(Vec3{1e-7, 0, 1});
  check_triad(near, polarization_basis(near));
}

TEST_CASE("polarization basis rejects non-unit input") {
  CHECK_THROWS_AS(polarization_basis({0, 0, 2}), DomainError);
  CHECK_THROWS_AS(polarization_basis({}), DomainError);
}

TEST_CASE("direction grid measure and low moments") {
  for (auto [np, na] : {std::pair{2, 4}, {4, 8}, {8, 16}, {16, 32}, {5, 12}}) {
    const DirectionGrid g = direction_grid(np, na);
    CHECK(g.size() == static_cast<std::size_t>(np * na));
    CHECK_THAT(g.total_weight(), WithinAbs(four_pi, 1e-12));
    Vec3 first;
    for (const auto& n : g.nodes()) {
      CHECK(n.weight > 0.0);
      CHECK_THAT(norm(n.kappa), WithinAbs(1.0, 1e-14));
      first += n.weight * n.kappa;
    }
    CHECK_THAT(norm(first), WithinAbs(0.0, 1e-14));
  }
}

TEST_CASE("second moment against a Monte Carlo oracle") {
  const DirectionGrid g = direction_grid(8, 16);
  oracle::Gen gen(0xc0ffee);
  constexpr int samples = 10'000'000;
  double mc[3][3] = {};
  for (int s = 0; s < samples; ++s) {
    const Vec3 k = gen.unit_vector();
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) mc[i][j] += k[i] * k[j];
    }
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double q = sphere_sum(g, [&](const Vec3& k) { return k[i] * k[j]; });
      const double m = four_pi * mc[i][j] / samples;
      CHECK_THAT(q, WithinAbs(m, 5e-3));
      CHECK_THAT(q, WithinAbs(static_cast<double>(oracle::sphere2(i, j)), 1e-13));
    }
  }
  CHECK_THAT(sphere_sum(g, [](const Vec3& k) { return k.x * k.x; }), WithinRel(4.188790205, 1e-9));
}

TEST_CASE("polynomial exactness up to the grid degree") {
  const DirectionGrid g = direction_grid(4, 8);  // degree min(7, 7)
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 3; ++l) {
          const double q = sphere_sum(g, [&](const Vec3& v) { return v[i] * v[j] * v[k] * v[l]; });
          CHECK_THAT(q, WithinAbs(static_cast<double>(oracle::sphere4(i, j, k, l)), 1e-13));
        }
      }
    }
  }
}

TEST_CASE("odd monomials vanish on every grid") {
  oracle::Gen gen(0x0dd);
  for (auto [np, na] : {std::pair{2, 4}, {3, 6}, {8, 16}, {16, 32}}) {
    const DirectionGrid g = direction_grid(np, na);
    CHECK(g.point_symmetric());
    for (int t = 0; t < 20; ++t) {
      const Vec3 a = gen.unit_vector(), b = gen.unit_vector(), c = gen.unit_vector(),
                 e = gen.unit_vector();
      for (int i = 0; i < 3; ++i) {
        const double lin = sphere_sum(g, [&](const Vec3& k) { return k[i]; });
        const double cub = sphere_sum(g, [&](const Vec3& k) { return k[i] * dot(k, a) * dot(k, b); });
        const double quint = sphere_sum(g, [&](const Vec3& k) {
          return k[i] * dot(k, a) * dot(k, b) * dot(k, c) * dot(k, e);
        });
        CHECK_THAT(lin, WithinAbs(0.0, 1e-12));
        CHECK_THAT(cub, WithinAbs(0.0, 1e-12));
        CHECK_THAT(quint, WithinAbs(0.0, 1e-12));
      }
    }
  }
}

TEST_CASE("antipode table is exact") {
  const DirectionGrid g = direction_grid(6, 12);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto j = g.antipode(i);
    REQUIRE(j.has_value());
    CHECK(g[*j].kappa == -g[i].kappa);
    CHECK(g[*j].weight == g[i].weight);
    CHECK(*g.antipode(*j) == i);
  }
  const DirectionGrid odd = direction_grid(4, 9);
  CHECK_FALSE(odd.point_symmetric());
  CHECK_FALSE(odd.antipode(0).has_value());
  const DirectionGrid custom({{unit_z, 2.0}, {-unit_z, 3.0}});
  CHECK_FALSE(custom.point_symmetric());
  CHECK_THAT(custom.total_weight(), WithinAbs(5.0, 0.0));
}

TEST_CASE("direction integral converges for a smooth integrand") {
  const Vec3 e_d = normalized(Vec3{1, 2, 2});
  auto integral = [&](std::size_t np) {
    return sphere_sum(direction_grid(np, 2 * np),
                      [&](const Vec3& k) { return 1.0 - dot(e_d, k) * dot(e_d, k); });
  };
  for (std::size_t np : {8u, 16u}) {
    const double a = integral(np), b = integral(2 * np);
    CHECK(std::abs(b - a) <= 1e-10 * std::abs(b));
  }
  CHECK_THAT(integral(8), WithinRel(8.0 * std::numbers::pi / 3.0, 1e-13));
}

TEST_CASE("undersized direction grids are rejected") {
  CHECK_THROWS_AS(direction_grid(1, 8), DomainError);
  CHECK_THROWS_AS(direction_grid(4, 3), DomainError);
}

TEST_CASE("frequency grid") {
  for (std::size_t n : {2u, 5u, 40u, 301u}) {
    const auto f = frequency_grid(1.0, 0.5, n);
    REQUIRE(f.size() == n);
    double w = 0.0, m1 = 0.0, m3 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(f[i].weight > 0.0);
      if (i > 0) CHECK(f[i].omega > f[i - 1].omega);
      w += f[i].weight;
      m1 += f[i].weight * f[i].omega;
      m3 += f[i].weight * std::pow(f[i].omega, 3);
    }
    CHECK_THAT(w, WithinAbs(1.0, 1e-12));
    CHECK_THAT(m1, WithinAbs(1.0, 1e-12));
    // (1.5^4 - 0.5^4) / 4
    CHECK_THAT(m3, WithinAbs(1.25, 1e-12));
    CHECK(f.front().omega > 0.5);
    CHECK(f.back().omega < 1.5);
  }
  CHECK_THROWS_AS(frequency_grid(1.0, 1.0, 10), DomainError);
  CHECK_THROWS_AS(frequency_grid(1.0, 1.5, 10), DomainError);
  CHECK_THROWS_AS(frequency_grid(1.0, 0.1, 1), DomainError);
  CHECK_THROWS_AS(frequency_grid(1.0, -0.1, 4), DomainError);
}

TEST_CASE("mode grid enumeration") {
  // Six axis directions.
  std::vector<DirectionNode> six;
  for (const Vec3& v : {unit_x, -unit_x, unit_y, -unit_y, unit_z, -unit_z}) {
    six.push_back({v, four_pi / 6.0});
  }
  const ModeGrid g = build_mode_grid(DirectionGrid(six), frequency_grid(1.0, 0.2, 10));
  REQUIRE(g.modes.size() == 120);
  double total = 0.0;
  for (const Mode& m : g.modes) {
    CHECK_THAT(norm(m.kappa), WithinAbs(1.0, 1e-12));
    CHECK_THAT(norm(m.eps), WithinAbs(1.0, 1e-12));
    CHECK_THAT(dot(m.kappa, m.eps), WithinAbs(0.0, 1e-12));
    CHECK((m.lambda == 1 || m.lambda == 2));
    CHECK(m.omega > 0.0);
    CHECK(g.directions[m.direction].kappa == m.kappa);
    total += m.w_dir * m.w_om;
  }
  // Each direction-frequency pair appears once per polarization.
  CHECK_THAT(total, WithinRel(2.0 * four_pi * 0.4, 1e-10));
  CHECK_THAT(0.5 * total, WithinRel(four_pi * (2.0 * 0.2), 1e-10));
  CHECK(g.modes[0].direction == 0);
  CHECK(g.modes[1].lambda == 2);
  CHECK(g.modes[2].omega > g.modes[0].omega);
}

TEST_CASE("mode grid spacing and recurrence time") {
  const ModeGrid g = build_mode_grid(direction_grid(2, 4), frequency_grid(1.0, 0.1, 11));
  double widest = 0.0;
  for (std::size_t i = 1; i < g.frequencies.size(); ++i) {
    widest = std::max(widest, g.frequencies[i].omega - g.frequencies[i - 1].omega);
  }
  CHECK(g.max_frequency_spacing() == widest);
  CHECK_THAT(g.recurrence_time(), WithinRel(2.0 * std::numbers::pi / widest, 1e-15));
}

TEST_CASE("empty component grids are rejected") {
  CHECK_THROWS_AS(build_mode_grid(DirectionGrid{}, frequency_grid(1.0, 0.1, 4)), DomainError);
  CHECK_THROWS_AS(build_mode_grid(direction_grid(2, 4), {}), DomainError);
}
