#ifndef GABORLAT_OFDM_HPP
#define GABORLAT_OFDM_HPP

#include <Eigen/Dense>

#include "gaborlat/gabor.hpp"
#include "gaborlat/lattice.hpp"

namespace gaborlat {

/// Doubly dispersive channel as a finite delay-Doppler tap sum.
struct ChannelTap {
    double delay = 0.0;   ///< grid-snapped time shift
    double doppler = 0.0; ///< frequency shift
    cplx gain{1.0, 0.0};
};

struct ChannelModel {
    std::vector<ChannelTap> taps;
    double max_delay = 0.0;
    double max_doppler = 0.0;
};

/// Deterministic symmetric Gaussian-spread channel: 7x7 delay-Doppler tap
/// grid out to +-spread, delays snapped to `step`, sum |gain|^2 = 1.
ChannelModel default_channel(double spread, double step = 1.0 / 32.0);

/// Transmission configuration; the lattice must have density < 1 so the
/// Gabor system is a Riesz sequence (default density 1/2).
struct OFDMConfig {
    Lattice lattice;
    int K = 4;                ///< symbol indices |k|, |l| <= K
    double step = 1.0 / 32.0;
    double extent = 16.0;

    explicit OFDMConfig(Lattice lat, int symbol_extent = 4)
        : lattice(std::move(lat)), K(symbol_extent) {
        if (!(lattice.density() < 1.0)) {
            throw DomainError("OFDM transmission lattice must have density < 1");
        }
        if (K < 2) throw DomainError("OFDM symbol extent must be >= 2");
    }
};

/// Rectangular (square) and hexagonal transmission lattices at density 1/2.
Lattice ofdm_rect_lattice();
Lattice ofdm_hex_lattice();

/// Data indexed by (k + K, l + K); size (2K+1) x (2K+1).
using SymbolGrid = Eigen::MatrixXcd;

/// Deterministic QPSK symbol grid from a fixed seed.
SymbolGrid qpsk_symbols(int K, unsigned seed);

/// Transmission signal s = sum c_{kl} pi(lattice * (k,l)) phi on the grid.
SampledFunction synthesize(const OFDMConfig& cfg, const SymbolGrid& data);

/// r = sum over taps of gain * (Doppler-modulated, delayed s).
SampledFunction apply_channel(const ChannelModel& ch, const SampledFunction& s);

/**
 * @brief Dual Riesz functionals from the canonical dual window of the adjoint
 * frame: f_kl = covolume(adjoint)^{-1} pi(lattice (k,l)) gamma.
 *
 * Fractional translates of gamma are applied spectrally (FFT phase ramp),
 * never by sample interpolation.
 */
SymbolGrid equalize(const OFDMConfig& cfg, const SampledFunction& r,
                    const SampledFunction& dual);

/// Compute the canonical dual window of the adjoint frame sized for this
/// configuration (operator radius covers the symbol span plus margin).
SampledFunction ofdm_dual_window(const OFDMConfig& cfg, double cg_tol = 1e-9);

/// Interference matrix <H g_mu, f_nu> and the aggregate SIR over the interior
/// index set |k|, |l| <= K-1 (outer ring acts as guard symbols).
struct InterferenceReport {
    Eigen::MatrixXcd matrix; ///< (interior nu) x (all mu)
    double sir_db = 0.0;
    double diagonal_power = 0.0;
    double offdiag_power = 0.0;
};
InterferenceReport interference_report(const OFDMConfig& cfg, const ChannelModel& ch);

/// Exact spectral (FFT) implementation of f(t) -> f(t - shift) on the grid.
Eigen::VectorXcd fractional_shift(const Eigen::VectorXcd& samples, double step,
                                  double shift);

} // namespace gaborlat

#endif // GABORLAT_OFDM_HPP
