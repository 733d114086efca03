#include <doctest.h>

#include <cmath>

#include "gaborlat/ofdm.hpp"
#include "gaborlat/serial_ref.hpp"

using namespace gaborlat;

namespace {

SymbolGrid zero_grid(int K) {
    return SymbolGrid::Zero(2 * K + 1, 2 * K + 1);
}

} // namespace

TEST_CASE("config validation") {
    CHECK_THROWS_AS(OFDMConfig(Lattice(0.5 * Eigen::Matrix2d::Identity()), 4),
                    DomainError);
    CHECK_THROWS_AS(OFDMConfig(ofdm_rect_lattice(), 1), DomainError);
    CHECK(ofdm_rect_lattice().density() == doctest::Approx(0.5));
    CHECK(ofdm_hex_lattice().density() == doctest::Approx(0.5));
}

TEST_CASE("default channel: tap count, snapping, unit energy") {
    const ChannelModel ch = default_channel(0.35);
    CHECK(ch.taps.size() == 49);
    double energy = 0.0;
    for (const auto& t : ch.taps) {
        energy += std::norm(t.gain);
        CHECK(std::abs(t.delay / (1.0 / 32.0) -
                       std::round(t.delay / (1.0 / 32.0))) < 1e-9);
        CHECK(std::abs(t.delay) <= 0.35 + 1e-9);
        CHECK(std::abs(t.doppler) <= 0.35 + 1e-9);
    }
    CHECK(energy == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("synthesize: single center symbol is the pulse itself") {
    const OFDMConfig cfg(ofdm_rect_lattice(), 2);
    SymbolGrid data = zero_grid(2);
    data(2, 2) = 1.0; // (k, l) = (0, 0)
    const SampledFunction s = synthesize(cfg, data);
    const SampledFunction phi = sample_gaussian(cfg.step, cfg.extent);
    CHECK((s.samples - phi.samples).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("synthesize: far-separated symbols have near-additive energy") {
    const OFDMConfig cfg(ofdm_rect_lattice(), 2);
    SymbolGrid data = zero_grid(2);
    data(0, 2) = 1.0; // k = -2: time offset -2 sqrt(2)
    data(4, 2) = 1.0; // k = +2
    const SampledFunction s = synthesize(cfg, data);
    const double dist = 4.0 * std::sqrt(2.0);
    const double cross = 2.0 * std::exp(-3.14159265358979323846 * dist * dist / 2.0);
    CHECK(std::abs(l2_norm(s) * l2_norm(s) - 2.0) <= cross + 1e-10);
}

TEST_CASE("apply_channel: identity, pure delay, off-grid rejection") {
    const OFDMConfig cfg(ofdm_rect_lattice(), 2);
    SymbolGrid data = zero_grid(2);
    data(2, 2) = 1.0;
    const SampledFunction s = synthesize(cfg, data);

    ChannelModel id;
    id.taps.push_back(ChannelTap{0.0, 0.0, 1.0});
    const SampledFunction r = apply_channel(id, s);
    CHECK((r.samples - s.samples).cwiseAbs().maxCoeff() < 1e-15);

    ChannelModel delay;
    delay.taps.push_back(ChannelTap{0.25, 0.0, 1.0});
    const SampledFunction rd = apply_channel(delay, s);
    const int shift = static_cast<int>(std::lround(0.25 / cfg.step));
    CHECK(std::abs(rd.samples(400) - s.samples(400 - shift)) < 1e-15);

    ChannelModel bad;
    bad.taps.push_back(ChannelTap{0.013, 0.0, 1.0});
    CHECK_THROWS_AS(apply_channel(bad, s), DomainError);
}

TEST_CASE("fractional shift is exact on a bandlimited Gaussian") {
    const SampledFunction phi = sample_gaussian(1.0 / 32.0, 16.0);
    const double x = 0.3127;
    const Eigen::VectorXcd shifted = fractional_shift(phi.samples, phi.step, x);
    double worst = 0.0;
    for (int i = 0; i < phi.size(); ++i) {
        if (std::abs(phi.t(i)) > 8.0) continue;
        worst = std::max(worst,
                         std::abs(shifted(i) - phi.analytic(phi.t(i) - x)));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("identity channel round trip recovers QPSK data") {
    const OFDMConfig cfg(ofdm_rect_lattice(), 4);
    const SymbolGrid data = qpsk_symbols(4, 7001);
    const SampledFunction s = synthesize(cfg, data);
    const SampledFunction dual = ofdm_dual_window(cfg);
    const SymbolGrid d = equalize(cfg, s, dual);
    CHECK((d - data).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("equalization is linear") {
    const OFDMConfig cfg(ofdm_rect_lattice(), 2);
    const SymbolGrid a = qpsk_symbols(2, 11);
    const SymbolGrid b = qpsk_symbols(2, 12);
    const SampledFunction dual = ofdm_dual_window(cfg);
    SampledFunction sum = synthesize(cfg, a);
    const SampledFunction sb = synthesize(cfg, b);
    sum.samples += sb.samples;
    const SymbolGrid lhs = equalize(cfg, sum, dual);
    const SymbolGrid rhs =
        equalize(cfg, synthesize(cfg, a), dual) + equalize(cfg, sb, dual);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("interference report: identity channel is biorthogonal") {
    const OFDMConfig cfg(ofdm_rect_lattice(), 3);
    ChannelModel id;
    id.taps.push_back(ChannelTap{0.0, 0.0, 1.0});
    const InterferenceReport rep = interference_report(cfg, id);
    CHECK(rep.offdiag_power < 1e-10);
    CHECK(rep.sir_db > 100.0);
    // Diagonal entries are 1 after the covolume normalization.
    for (int r = 0; r < rep.matrix.rows(); ++r) {
        double diag = 0.0;
        for (int c = 0; c < rep.matrix.cols(); ++c) {
            diag = std::max(diag, std::abs(rep.matrix(r, c)));
        }
        CHECK(diag == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("hexagonal lattice beats rectangular under the symmetric channel") {
    const ChannelModel ch = default_channel(0.35);
    const InterferenceReport rect =
        interference_report(OFDMConfig(ofdm_rect_lattice(), 4), ch);
    const InterferenceReport hex =
        interference_report(OFDMConfig(ofdm_hex_lattice(), 4), ch);
    CHECK(hex.sir_db >= rect.sir_db + 0.5);
}

TEST_CASE("SIR is invariant under unitary scaling of the gains") {
    const OFDMConfig cfg(ofdm_rect_lattice(), 3);
    ChannelModel ch = default_channel(0.25);
    const double s1 = interference_report(cfg, ch).sir_db;
    for (auto& t : ch.taps) t.gain *= cplx(0.0, 2.0); // phase and scale
    const double s2 = interference_report(cfg, ch).sir_db;
    CHECK(s1 == doctest::Approx(s2).epsilon(1e-9));
}

TEST_CASE("serial interference reference agrees with the parallel kernel") {
    const OFDMConfig cfg(ofdm_rect_lattice(), 2);
    const ChannelModel ch = default_channel(0.3);
    const InterferenceReport a = interference_report(cfg, ch);
    const InterferenceReport b = serial::interference_report(cfg, ch);
    CHECK((a.matrix - b.matrix).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(a.sir_db == doctest::Approx(b.sir_db).epsilon(1e-10));
}
