#include "gaborlat/ofdm.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <limits>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gaborlat {

namespace {
constexpr double kPi = 3.14159265358979323846;
const cplx kI(0.0, 1.0);

/// All symbol phase-space points lambda_{kl} = basis * (k, l), linear index
/// a = (k + K)(2K + 1) + (l + K).
std::vector<PhasePoint> symbol_points(const OFDMConfig& cfg) {
    const int K = cfg.K;
    std::vector<PhasePoint> pts;
    pts.reserve(static_cast<std::size_t>(2 * K + 1) * (2 * K + 1));
    for (int k = -K; k <= K; ++k) {
        for (int l = -K; l <= K; ++l) {
            pts.push_back(cfg.lattice.basis() * Eigen::Vector2d(k, l));
        }
    }
    return pts;
}

} // namespace

ChannelModel default_channel(double spread, double step) {
    if (!(spread >= 0.0)) throw DomainError("default_channel: spread must be >= 0");
    ChannelModel ch;
    ch.max_delay = spread;
    ch.max_doppler = spread;
    const double sigma = 1.5; // in tap-index units
    double energy = 0.0;
    for (int i = -3; i <= 3; ++i) {
        for (int j = -3; j <= 3; ++j) {
            ChannelTap tap;
            tap.delay = step * std::round(spread * i / 3.0 / step);
            tap.doppler = spread * j / 3.0;
            const double w = std::exp(-(i * i + j * j) / (2.0 * sigma * sigma));
            tap.gain = cplx(w, 0.0);
            energy += w * w;
            ch.taps.push_back(tap);
        }
    }
    const double scale = 1.0 / std::sqrt(energy);
    for (auto& t : ch.taps) t.gain *= scale;
    return ch;
}

Lattice ofdm_rect_lattice() {
    return Lattice(std::sqrt(2.0) * Eigen::Matrix2d::Identity(), "rect-half");
}

Lattice ofdm_hex_lattice() {
    const Lattice hex = std::get<Lattice>(named_lattice("hexagonal", 1.0));
    Lattice scaled = hex.scaled_to_density(0.5);
    return Lattice(scaled.basis(), "hex-half");
}

SymbolGrid qpsk_symbols(int K, unsigned seed) {
    const int n = 2 * K + 1;
    SymbolGrid c(n, n);
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> U(0, 3);
    const double r = 1.0 / std::sqrt(2.0);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            switch (U(rng)) {
                case 0: c(a, b) = cplx(r, r); break;
                case 1: c(a, b) = cplx(-r, r); break;
                case 2: c(a, b) = cplx(-r, -r); break;
                default: c(a, b) = cplx(r, -r); break;
            }
        }
    }
    return c;
}

SampledFunction synthesize(const OFDMConfig& cfg, const SymbolGrid& data) {
    const int n = 2 * cfg.K + 1;
    if (data.rows() != n || data.cols() != n) {
        throw DimensionError("synthesize: symbol grid size mismatch");
    }
    SampledFunction s = make_grid(cfg.step, cfg.extent);
    const auto pts = symbol_points(cfg);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            const PhasePoint& z = pts[static_cast<std::size_t>(a) * n + b];
            const SampledFunction atom = sample_atom(z, cfg.step, cfg.extent);
            s.samples += data(a, b) * atom.samples;
        }
    }
    // Analytic evaluator: same superposition at arbitrary t (used by the
    // quadrature cross-checks).
    const Eigen::MatrixXcd coeffs = data;
    s.analytic = [pts, coeffs, n](double t) {
        const double c = std::pow(2.0, 0.25);
        cplx acc(0.0, 0.0);
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                const PhasePoint& z = pts[static_cast<std::size_t>(a) * n + b];
                acc += coeffs(a, b) * c *
                       std::exp(-kPi * (t - z(0)) * (t - z(0))) *
                       std::exp(2.0 * kPi * kI * z(1) * t);
            }
        }
        return acc;
    };
    return s;
}

SampledFunction apply_channel(const ChannelModel& ch, const SampledFunction& s) {
    SampledFunction r = make_grid(s.step, s.extent);
    const int n = s.size();
    for (const auto& tap : ch.taps) {
        const double sh = tap.delay / s.step;
        const long k = std::lround(sh);
        if (std::abs(sh - k) > 1e-9) {
            throw DomainError("apply_channel: tap delay is not grid-aligned");
        }
        for (int i = 0; i < n; ++i) {
            const long j = i - k;
            if (j < 0 || j >= n) continue;
            r.samples(i) += tap.gain * s.samples(j) *
                            std::exp(2.0 * kPi * kI * tap.doppler * s.t(i));
        }
    }
    return r;
}

Eigen::VectorXcd fractional_shift(const Eigen::VectorXcd& samples, double step,
                                  double shift) {
    const int n = static_cast<int>(samples.size());
    Eigen::FFT<double> fft;
    std::vector<cplx> in(samples.data(), samples.data() + n);
    std::vector<cplx> freq;
    fft.fwd(freq, in);
    const double period = n * step;
    for (int k = 0; k < n; ++k) {
        const int kk = (k <= n / 2) ? k : k - n;
        const double f = kk / period;
        freq[static_cast<std::size_t>(k)] *= std::exp(-2.0 * kPi * kI * f * shift);
    }
    std::vector<cplx> out;
    fft.inv(out, freq);
    return Eigen::Map<const Eigen::VectorXcd>(out.data(), n);
}

SampledFunction ofdm_dual_window(const OFDMConfig& cfg, double cg_tol) {
    double rmax = 0.0;
    for (const auto& z : symbol_points(cfg)) rmax = std::max(rmax, z.norm());
    // The equalizer relies on biorthogonality at all inter-symbol differences,
    // so the frame-operator truncation must cover twice the symbol span.
    const double op_radius = 2.0 * rmax + 4.0;
    const Lattice frame = adjoint_lattice(cfg.lattice);
    return dual_window(frame, TruncationPolicy{}, cg_tol, op_radius, cfg.step,
                       cfg.extent);
}

namespace {

/// f_nu(t) = covol^{-1} gamma(t - x_nu) e^{2 pi i omega_nu t}, rows = nu.
Eigen::MatrixXcd dual_functionals(const OFDMConfig& cfg,
                                  const SampledFunction& dual,
                                  const std::vector<PhasePoint>& pts) {
    const int n = dual.size();
    const double scale = 1.0 / adjoint_lattice(cfg.lattice).covolume();
    Eigen::MatrixXcd F(static_cast<int>(pts.size()), n);
    for (int a = 0; a < static_cast<int>(pts.size()); ++a) {
        const Eigen::VectorXcd shifted =
            fractional_shift(dual.samples, dual.step, pts[a](0));
        const double w = pts[a](1);
        for (int i = 0; i < n; ++i) {
            F(a, i) = scale * shifted(i) *
                      std::exp(2.0 * kPi * kI * w * dual.t(i));
        }
    }
    return F;
}

} // namespace

SymbolGrid equalize(const OFDMConfig& cfg, const SampledFunction& r,
                    const SampledFunction& dual) {
    if (r.size() != dual.size() || r.step != dual.step) {
        throw DomainError("equalize: incompatible grids");
    }
    const int n = 2 * cfg.K + 1;
    const auto pts = symbol_points(cfg);
    const Eigen::MatrixXcd F = dual_functionals(cfg, dual, pts);
    const Eigen::VectorXcd d = F.conjugate() * r.samples * r.step;
    SymbolGrid out(n, n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) out(a, b) = d(a * n + b);
    }
    return out;
}

InterferenceReport interference_report(const OFDMConfig& cfg,
                                       const ChannelModel& ch) {
    const SampledFunction dual = ofdm_dual_window(cfg);
    const auto pts = symbol_points(cfg);
    const int n_mu = static_cast<int>(pts.size());
    const int nside = 2 * cfg.K + 1;
    const int grid_n = make_grid(cfg.step, cfg.extent).size();

    // Channel outputs H g_mu, one column per transmitted atom.
    Eigen::MatrixXcd Hg(grid_n, n_mu);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int a = 0; a < n_mu; ++a) {
        const SampledFunction g = sample_atom(pts[a], cfg.step, cfg.extent);
        Hg.col(a) = apply_channel(ch, g).samples;
    }

    const Eigen::MatrixXcd F = dual_functionals(cfg, dual, pts);
    const Eigen::MatrixXcd M_all = (F.conjugate() * Hg) * cfg.step;

    // Restrict the receive side to the interior indices (|k|, |l| <= K - 1);
    // the outer ring is a guard band.
    InterferenceReport rep;
    std::vector<int> interior;
    for (int k = -cfg.K + 1; k <= cfg.K - 1; ++k) {
        for (int l = -cfg.K + 1; l <= cfg.K - 1; ++l) {
            interior.push_back((k + cfg.K) * nside + (l + cfg.K));
        }
    }
    rep.matrix.resize(static_cast<int>(interior.size()), n_mu);
    for (int r = 0; r < static_cast<int>(interior.size()); ++r) {
        rep.matrix.row(r) = M_all.row(interior[static_cast<std::size_t>(r)]);
        for (int c = 0; c < n_mu; ++c) {
            const double p = std::norm(rep.matrix(r, c));
            if (c == interior[static_cast<std::size_t>(r)]) {
                rep.diagonal_power += p;
            } else {
                rep.offdiag_power += p;
            }
        }
    }
    if (!(rep.offdiag_power > 0.0)) {
        rep.sir_db = std::numeric_limits<double>::infinity();
    } else {
        rep.sir_db = 10.0 * std::log10(rep.diagonal_power / rep.offdiag_power);
    }
    return rep;
}

} // namespace gaborlat
