#include <doctest.h>

#include <cmath>

#include "gaborlat/optimize.hpp"

using namespace gaborlat;

namespace {
const double kHexX = 0.5;
const double kHexY = std::sqrt(3.0) / 2.0;
} // namespace

TEST_CASE("scan at density 2 returns the hexagonal argopt for all objectives") {
    for (const ObjectiveKind kind :
         {ObjectiveKind::QuantumPacking, ObjectiveKind::QuantumCovering,
          ObjectiveKind::QuantumPaving}) {
        Objective obj;
        obj.kind = kind;
        const Landscape land = scan_shapes(2.0, obj, 24, true);
        CHECK(std::abs(land.argopt.x - kHexX) < 1e-3);
        CHECK(std::abs(land.argopt.y - kHexY) < 1e-3);
    }
}

TEST_CASE("paving landscape: hexagonal beats the square with a real margin") {
    Objective obj;
    obj.kind = ObjectiveKind::QuantumPaving;
    const Landscape land = scan_shapes(2.0, obj, 24, false);
    double square_ratio = 0.0;
    for (const auto& s : land.samples) {
        if (std::abs(s.shape.x) < 1e-12 && std::abs(s.shape.y - 1.0) < 1e-12) {
            square_ratio = s.ratio;
        }
    }
    REQUIRE(square_ratio > 0.0);
    CHECK(land.opt_value < square_ratio - 1e-3);
}

TEST_CASE("scan rejects non-frame densities and tiny grids") {
    Objective obj;
    CHECK_THROWS_AS(scan_shapes(1.0, obj, 24, false), NotAFrameError);
    CHECK_THROWS_AS(scan_shapes(2.0, obj, 8, false), DomainError);
}

TEST_CASE("relaxed backend produces a landscape with the same argopt") {
    Objective obj;
    obj.kind = ObjectiveKind::QuantumPaving;
    obj.bound_method = BoundBackend::Relaxed;
    const Landscape land = scan_shapes(2.0, obj, 24, true);
    CHECK(std::abs(land.argopt.x - kHexX) < 5e-3);
    CHECK(std::abs(land.argopt.y - kHexY) < 5e-3);
}

TEST_CASE("compare_named dim 8: E8 minimizes both columns") {
    const auto rows = compare_named(8, {"E8", "D8", "Z^8", "A8*"}, GaussWidth{1.0}, 1.0);
    REQUIRE(rows.size() == 4);
    CHECK(rows.front().name == "E8"); // sorted ascending by btilde
    CHECK(rows.front().energy_lower ==
          doctest::Approx(1.4557628922687091).epsilon(1e-12));
    for (const auto& r : rows) {
        CHECK(rows.front().btilde <= r.btilde);
        CHECK(rows.front().energy_lower <= r.energy_lower + 1e-12);
    }
}

TEST_CASE("compare_named dim 24: Leech below Z^24") {
    const auto rows = compare_named(24, {"Leech", "Z^24"}, GaussWidth{1.0}, 1.0);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].name == "Leech");
    CHECK(rows[0].btilde < rows[1].btilde);
    CHECK(rows[0].energy_lower < rows[1].energy_lower);
}

TEST_CASE("density sweep rejects densities at or below 1") {
    const auto entries =
        density_sweep({0.5, kHexY, 2.0}, {0.5, 1.0, 2.0, 4.0}, Objective{});
    REQUIRE(entries.size() == 4);
    CHECK(entries[0].rejected);
    CHECK(entries[1].rejected);
    CHECK(!entries[2].rejected);
    CHECK(!entries[3].rejected);
    // Higher density lifts both bounds.
    CHECK(entries[3].bounds.B > entries[2].bounds.B);
    CHECK(entries[3].bounds.A > entries[2].bounds.A);
}
