#include <doctest.h>

#include <cmath>

#include "gaborlat/lattice.hpp"

using namespace gaborlat;

namespace {
const double kSqrt2 = std::sqrt(2.0);

Lattice square(double spacing) {
    return Lattice(spacing * Eigen::Matrix2d::Identity(), "square");
}
} // namespace

TEST_CASE("lattice basics: covolume, density, scaling") {
    const Lattice L = square(1.0);
    CHECK(L.dim() == 2);
    CHECK(L.covolume() == doctest::Approx(1.0));
    CHECK(L.density() == doctest::Approx(1.0));

    const Lattice L2 = L.scaled_to_density(2.0);
    CHECK(L2.density() == doctest::Approx(2.0));
    CHECK(L2.basis()(0, 0) == doctest::Approx(1.0 / kSqrt2));

    Eigen::Matrix2d singular;
    singular << 1.0, 2.0, 2.0, 4.0;
    CHECK_THROWS_AS(Lattice{singular}, InvalidLatticeError);
}

TEST_CASE("dual and adjoint lattices") {
    const Lattice L = square(1.0 / kSqrt2); // density 2
    const Lattice dual = dual_lattice(L);
    CHECK(dual.covolume() == doctest::Approx(2.0));
    const Lattice adj = adjoint_lattice(L);
    // Adjoint of the square lattice is the square lattice of inverse spacing.
    CHECK(same_point_set(adj, square(kSqrt2), 5.0));
    // Adjoint is an involution up to point set equality.
    CHECK(same_point_set(adjoint_lattice(adj), L, 5.0));
}

TEST_CASE("symplectic matrix and form") {
    const Eigen::MatrixXd J = symplectic_J(4);
    CHECK(is_symplectic(Eigen::MatrixXd::Identity(4, 4), 1e-12));
    CHECK(is_symplectic(J, 1e-12)); // J itself is symplectic
    Eigen::VectorXd z(4), zp(4);
    z << 1, 0, 0, 0;
    zp << 0, 0, 1, 0;
    CHECK(symplectic_form(z, zp) == doctest::Approx(1.0));
    CHECK(symplectic_form(zp, z) == doctest::Approx(-1.0));
    CHECK(symplectic_form(z, z) == doctest::Approx(0.0));
}

TEST_CASE("enumeration: counts, order, cap") {
    const Lattice Z2 = square(1.0);
    const auto pts = enumerate_points(Z2, 2.5);
    CHECK(pts.size() == 21); // r2 counts: 1+4+4+4+8 for norms 0,1,2,4,5
    const auto coords = enumerate_coords(Z2, 2.5);
    REQUIRE(coords.size() == pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK((pts[i] - coords[i].cast<double>()).norm() < 1e-12);
    }
    // Deterministic lexicographic order on integer coordinates.
    for (std::size_t i = 1; i < coords.size(); ++i) {
        const auto &a = coords[i - 1], &b = coords[i];
        const bool lex_less =
            a(0) < b(0) || (a(0) == b(0) && a(1) < b(1));
        CHECK(lex_less);
    }
    CHECK_THROWS_AS(enumerate_points(Z2, 100.0, 10), ResourceCapError);
}

TEST_CASE("minimal norm of catalog lattices") {
    CHECK(minimal_norm(square(1.0)) == doctest::Approx(1.0));
    const auto hex = std::get<Lattice>(named_lattice("hexagonal", 1.0));
    CHECK(minimal_norm(hex) == doctest::Approx(std::sqrt(2.0 / std::sqrt(3.0))));
    const auto e8 = std::get<Lattice>(named_lattice("E8", 1.0));
    CHECK(e8.covolume() == doctest::Approx(1.0));
    CHECK(minimal_norm(e8) == doctest::Approx(kSqrt2));
    // Kissing number 240.
    CHECK(enumerate_points(e8, kSqrt2 + 1e-9).size() == 241);
    const auto d4 = std::get<Lattice>(named_lattice("D4", 1.0));
    CHECK(enumerate_points(d4, minimal_norm(d4) + 1e-9).size() == 25); // 24 + origin
}

TEST_CASE("deep holes of the square and hexagonal lattices") {
    const auto dh = deep_holes_2d(square(1.0));
    CHECK(dh.covering_radius == doctest::Approx(std::sqrt(0.5)));
    REQUIRE(!dh.holes.empty());
    bool found_center = false;
    for (const auto& h : dh.holes) {
        if ((h - Eigen::Vector2d(0.5, 0.5)).norm() < 1e-6) found_center = true;
    }
    CHECK(found_center);

    const auto hex = std::get<Lattice>(named_lattice("hexagonal", 1.0));
    const auto dhh = deep_holes_2d(hex);
    // Hexagonal covering radius = minimal norm / sqrt(3).
    CHECK(dhh.covering_radius ==
          doctest::Approx(minimal_norm(hex) / std::sqrt(3.0)).epsilon(1e-9));
}

TEST_CASE("shape parameter maps to the expected lattices") {
    const Lattice sq = shape_to_lattice({0.0, 1.0, 2.0});
    CHECK(sq.density() == doctest::Approx(2.0));
    CHECK(same_point_set(sq, square(1.0 / kSqrt2), 4.0));
    const Lattice hx = shape_to_lattice({0.5, std::sqrt(3.0) / 2.0, 1.0});
    const auto hex = std::get<Lattice>(named_lattice("hexagonal", 1.0));
    CHECK(same_point_set(hx, hex, 4.0));
}

TEST_CASE("theta tables: Z^n convolution vs direct enumeration") {
    const ThetaSeries t2 = theta_zn(2, 10);
    // r_2 values: (0,1),(1,4),(2,4),(4,4),(5,8),(8,4),(9,4),(10,8).
    REQUIRE(t2.entries.size() == 8);
    CHECK(t2.entries[0] == std::pair<double, std::uint64_t>{0.0, 1});
    CHECK(t2.entries[1].second == 4);
    CHECK(t2.entries[4].first == doctest::Approx(5.0));
    CHECK(t2.entries[4].second == 8);

    const ThetaSeries e2 = theta_by_enumeration(square(1.0), 10.0);
    REQUIRE(e2.entries.size() == t2.entries.size());
    for (std::size_t i = 0; i < t2.entries.size(); ++i) {
        CHECK(e2.entries[i].first == doctest::Approx(t2.entries[i].first));
        CHECK(e2.entries[i].second == t2.entries[i].second);
    }

    const ThetaSeries t24 = theta_zn(24, 6);
    CHECK(t24.entries[1].second == 48);     // +-e_i
    CHECK(t24.entries[2].second == 1104);   // norm^2 = 2: 4 * C(24,2)
    t24.validate();
}

TEST_CASE("E8 theta series has the modular-form coefficients") {
    const auto e8 = std::get<Lattice>(named_lattice("E8", 1.0));
    const ThetaSeries t = theta_by_enumeration(e8, 6.0);
    REQUIRE(t.entries.size() >= 4);
    CHECK(t.entries[0].second == 1);
    CHECK(t.entries[1].first == doctest::Approx(2.0));
    CHECK(t.entries[1].second == 240);
    CHECK(t.entries[2].second == 2160);
    CHECK(t.entries[3].second == 6720);
}

TEST_CASE("Leech catalog entry: theta table with checksum") {
    const auto nl = named_lattice("Leech", 1.0);
    REQUIRE(std::holds_alternative<ThetaSeries>(nl));
    const auto& t = std::get<ThetaSeries>(nl);
    CHECK(t.entries[0].second == 1);
    CHECK(t.entries[1].first == doctest::Approx(4.0));
    CHECK(t.entries[1].second == 196560);
    CHECK(t.entries[2].second == 16773120);
    CHECK(t.entries[3].second == 398034000);
}

TEST_CASE("catalog rejects unknown names") {
    CHECK_THROWS_AS(named_lattice("Foo", 1.0), CatalogError);
    CHECK_THROWS_AS(named_lattice("Z^0", 1.0), CatalogError);
}
