#include <doctest.h>

#include <cmath>
#include <random>

#include "gaborlat/gabor.hpp"
#include "gaborlat/serial_ref.hpp"

using namespace gaborlat;

namespace {
const double kSqrt2 = std::sqrt(2.0);
const double kPi = 3.14159265358979323846;

// Frozen independent oracle values (30-digit product sums, rounded).
constexpr double kJanssenA_sq2 = 1.985088356982115;
constexpr double kJanssenB_sq2 = 2.014967440690169;
constexpr double kJanssenA_hex2 = 1.9957610470484395;
constexpr double kJanssenB_hex2 = 2.0084779185979205;
constexpr double kCondA_sq2 = 2.3606811980321925;
constexpr double kEnergy_halfsq = 2.014967440690169;
constexpr double kRelaxedA_Z2 = 0.8346268416740732;
constexpr double kRelaxedB_Z2 = 1.1803405990160962;
constexpr double kGramA_r3 = 0.874712468;
constexpr double kGramB_r3 = 1.134011610;
constexpr double kGramA_r5 = 0.850216003;
constexpr double kGramB_r5 = 1.162086481;

Lattice square(double s) { return Lattice(s * Eigen::Matrix2d::Identity()); }

Lattice hex_density(double dens) {
    const auto hex = std::get<Lattice>(named_lattice("hexagonal", 1.0));
    return hex.scaled_to_density(dens);
}
} // namespace

TEST_CASE("window samples: norms and orthogonality") {
    const auto phi = sample_gaussian();
    const auto h1 = sample_hermite1();
    CHECK(l2_norm(phi) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(l2_norm(h1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(inner(phi, h1)) < 1e-12);
}

TEST_CASE("ambiguity function: closed form vs quadrature oracle") {
    const auto phi = sample_gaussian();
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const PhasePoint z = phase_point(U(rng), U(rng));
        worst = std::max(worst,
                         std::abs(ambiguity_gauss(z) - stft_quadrature(phi, phi, z)));
    }
    CHECK(worst < 1e-10);
    // Spot value: V(1,1) = -e^{-pi}.
    CHECK(ambiguity_gauss(phase_point(1.0, 1.0)).real() ==
          doctest::Approx(-std::exp(-kPi)).epsilon(1e-14));
    CHECK(std::abs(ambiguity_gauss(phase_point(1.0, 1.0)).imag()) < 1e-15);
}

TEST_CASE("janssen bounds: square and hexagonal at density 2") {
    const auto sq = janssen_frame_bounds(square(1.0 / kSqrt2));
    CHECK(sq.A == doctest::Approx(kJanssenA_sq2).epsilon(1e-12));
    CHECK(sq.B == doctest::Approx(kJanssenB_sq2).epsilon(1e-12));
    CHECK(!sq.heuristic);
    CHECK(sq.error_bound > 0.0);

    const auto hx = janssen_frame_bounds(hex_density(2.0));
    CHECK(hx.A == doctest::Approx(kJanssenA_hex2).epsilon(1e-12));
    CHECK(hx.B == doctest::Approx(kJanssenB_hex2).epsilon(1e-12));
    CHECK(hx.ratio < sq.ratio); // hexagonal wins the paving objective

    CHECK_THROWS_AS(janssen_frame_bounds(square(1.0)), NotAFrameError);
    CHECK(janssen_frame_bounds(square(1.0 / std::sqrt(3.0))).heuristic);
}

TEST_CASE("upper/lower bound family and the ordering chain") {
    const Lattice L = square(1.0 / kSqrt2);
    const double btilde = condition_a_upper(L);
    CHECK(btilde == doctest::Approx(kCondA_sq2).epsilon(1e-12));
    const double energy = energy_lower_bound(L);
    CHECK(energy == doctest::Approx(kEnergy_halfsq).epsilon(1e-12));
    const auto fb = janssen_frame_bounds(L);
    CHECK(energy <= fb.B + 1e-10);
    CHECK(fb.B <= btilde + 1e-10);

    // Theta-table overload agrees with direct enumeration (adjoint = sqrt2 Z^2).
    const ThetaSeries adj_table = theta_zn(2, 40).scaled(2.0, 2.0);
    CHECK(condition_a_upper(adj_table, L.covolume()) ==
          doctest::Approx(btilde).epsilon(1e-12));
    const ThetaSeries own_table = theta_zn(2, 40).scaled(0.5, 0.5);
    CHECK(energy_lower_bound(own_table) == doctest::Approx(energy).epsilon(1e-12));
}

TEST_CASE("relaxed bounds on Z^2 at alpha = 1") {
    const auto fb = relaxed_bounds(square(1.0), GaussWidth{1.0});
    CHECK(fb.A == doctest::Approx(kRelaxedA_Z2).epsilon(1e-12));
    CHECK(fb.B == doctest::Approx(kRelaxedB_Z2).epsilon(1e-12));
    CHECK(fb.method == BoundMethod::Relaxed);
}

TEST_CASE("gram spectral bounds: finite sections of the adjoint system") {
    const Lattice L = square(1.0 / kSqrt2);
    const auto g3 = gram_spectral_bounds(L, 3.0);
    CHECK(g3.A == doctest::Approx(kGramA_r3).epsilon(1e-8));
    CHECK(g3.B == doctest::Approx(kGramB_r3).epsilon(1e-8));
    const auto g5 = gram_spectral_bounds(L, 5.0);
    CHECK(g5.A == doctest::Approx(kGramA_r5).epsilon(1e-8));
    CHECK(g5.B == doctest::Approx(kGramB_r5).epsilon(1e-8));
    // Finite sections widen monotonically with the radius.
    CHECK(g5.A < g3.A);
    CHECK(g5.B > g3.B);
    // Single point: the estimate degenerates to the atom norm 1.
    const auto g0 = gram_spectral_bounds(L, 0.5);
    CHECK(g0.A == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g0.B == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(gram_spectral_bounds(square(1.2), 3.0), NotAFrameError);
}

TEST_CASE("serial gram matrix agrees with the OpenMP kernel") {
    const Lattice L = hex_density(2.0);
    const auto a = gram_matrix(adjoint_lattice(L), 4.0);
    const auto b = serial::gram_matrix(adjoint_lattice(L), 4.0);
    REQUIRE(a.entries.rows() == b.entries.rows());
    CHECK((a.entries - b.entries).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("fundamental identity residual for both windows") {
    const auto phi = sample_gaussian();
    const auto h1 = sample_hermite1();
    Eigen::Matrix2d B;
    B << 0.9, 0.2, -0.1, 0.75;
    const Lattice L(B / std::sqrt(std::abs(B.determinant()) * 2.0));
    CHECK(figa_residual(phi, h1, phi, h1, L, 6.0) < 1e-8);
    CHECK(figa_residual(h1, phi, h1, phi, L, 6.0) < 1e-8);
}

TEST_CASE("Moyal and Wigner norm identities") {
    const auto res = moyal_wigner_check(sample_hermite1(), sample_gaussian());
    CHECK(res.moyal_residual < 1e-6);
    CHECK(res.norm_residual < 1e-6);
}

TEST_CASE("dual window: frame operator residual and biorthogonality") {
    for (const Lattice& L : {square(1.0 / kSqrt2), hex_density(2.0)}) {
        const auto gamma = dual_window(L, TruncationPolicy{}, 1e-9, 10.0);
        CHECK(frame_operator_residual(L, gamma, 10.0) < 1e-8);
        CHECK(biorthogonality_defect(L, gamma, 6.0) < 1e-6);
    }
}

TEST_CASE("tensor lattices: predicates and spectral cross-check") {
    // Iff-conditions of the two relabelings.
    CHECK(tensor_frame_check(0.9, 1.0).lambda1_is_frame);
    CHECK(tensor_frame_check(0.9, 1.0).lambda2_is_frame);
    CHECK(tensor_frame_check(0.9, 1.2).lambda1_is_frame);
    CHECK(!tensor_frame_check(0.9, 1.2).lambda2_is_frame);
    CHECK(!tensor_frame_check(1.1, 1.0).lambda1_is_frame);
    CHECK(!tensor_frame_check(1.1, 1.0).lambda2_is_frame);

    // Numeric classification via 4-D Gram sections at radius 4; oracle values
    // put frame cases above 0.2 and non-frame cases below 2e-4.
    const auto min_eig = [](const Lattice& L) {
        return gram_spectral_bounds(L, 4.0).A;
    };
    CHECK(min_eig(tensor_lattice1(0.9, 1.0)) > 1e-2);
    CHECK(min_eig(tensor_lattice2(0.9, 1.2)) < 1e-2);
    // alpha > 1: density below 1 already rules the frame out.
    CHECK_THROWS_AS(min_eig(tensor_lattice1(1.1, 1.0)), NotAFrameError);
}
