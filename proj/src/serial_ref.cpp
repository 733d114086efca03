#include "gaborlat/serial_ref.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gaborlat::serial {

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx kI(0.0, 1.0);

struct Kahan {
    double sum = 0.0, c = 0.0;
    void add(double x) {
        const double y = x - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

cplx gram_entry(const PhasePoint& lambda, const PhasePoint& nu) {
    const int d = static_cast<int>(lambda.size()) / 2;
    const double phase = -2.0 * kPi * nu.head(d).dot(lambda.tail(d) - nu.tail(d));
    return std::exp(kI * phase) * ambiguity_gauss(lambda - nu);
}

} // namespace

GramMatrix gram_matrix(const Lattice& L, double radius, std::size_t cap) {
    if (!(radius > 0.0)) throw DomainError("gram_matrix: radius must be positive");
    GramMatrix G;
    constexpr std::size_t kGramMaxPoints = 5000; // same cap as the parallel kernel
    G.index_map = enumerate_points(L, radius, std::min(cap, kGramMaxPoints));
    const int n = static_cast<int>(G.index_map.size());
    G.entries.resize(n, n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            G.entries(a, b) = gram_entry(G.index_map[a], G.index_map[b]);
        }
    }
    return G;
}

ExtremumResult find_extremum(const Lattice& L, const GaussWidth& w,
                             ExtremumKind kind, ThetaForm which, int grid_n,
                             const TruncationPolicy& p) {
    if (L.dim() != 2) throw DimensionError("find_extremum supports only 2-D lattices");
    if (grid_n < 16) throw DomainError("find_extremum: grid_n must be >= 16");

    const Eigen::Matrix2d cell = (which == ThetaForm::Translate)
                                     ? Eigen::Matrix2d(L.basis())
                                     : Eigen::Matrix2d(adjoint_lattice(L).basis());
    const double alpha = (which == ThetaForm::Translate) ? w.alpha : 1.0;
    const double R = truncation_radius(GaussWidth{alpha}, p.tol, L);
    const double pad = (which == ThetaForm::Translate)
                           ? cell.col(0).norm() + cell.col(1).norm()
                           : 0.0;
    if (R + pad > p.max_radius) throw ResourceCapError("find_extremum: radius cap exceeded");
    auto pts = enumerate_points(L, R + pad, p.max_points);
    std::sort(pts.begin(), pts.end(),
              [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
                  return a.squaredNorm() < b.squaredNorm();
              });
    const Eigen::Matrix2d J2 = symplectic_J(2);
    std::vector<double> weights;
    if (which == ThetaForm::DualPhase) {
        weights.reserve(pts.size());
        for (const auto& q : pts) weights.push_back(std::exp(-kPi * q.squaredNorm()));
    }
    const auto eval = [&](const Eigen::VectorXd& z) -> double {
        Kahan acc;
        if (which == ThetaForm::Translate) {
            for (const auto& q : pts) acc.add(std::exp(-kPi * alpha * (q + z).squaredNorm()));
        } else {
            const Eigen::Vector2d Jz = J2 * z;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                acc.add(weights[i] * std::cos(2.0 * kPi * pts[i].dot(Jz)));
            }
        }
        return acc.sum;
    };
    const double sign = (kind == ExtremumKind::Min) ? 1.0 : -1.0;

    double best = std::numeric_limits<double>::infinity();
    long best_i = -1, best_j = -1;
    for (int i = 0; i < grid_n; ++i) {
        for (int j = 0; j < grid_n; ++j) {
            const Eigen::Vector2d z =
                cell * Eigen::Vector2d(double(i) / grid_n, double(j) / grid_n);
            const double v = sign * eval(z);
            if (v < best) {
                best = v;
                best_i = i;
                best_j = j;
            }
        }
    }
    const Eigen::Vector2d zgrid =
        cell * Eigen::Vector2d(double(best_i) / grid_n, double(best_j) / grid_n);

    ExtremumResult res;
    res.grid_resolution = grid_n;
    res.grid_value = sign * best;
    double fref = 0.0;
    const double step = std::min(cell.col(0).norm(), cell.col(1).norm()) / grid_n;
    const Eigen::VectorXd zref = nelder_mead(
        [&](const Eigen::VectorXd& z) { return sign * eval(z); }, zgrid, step, 200,
        1e-10, &fref);
    res.refined = true;
    res.location = zref;
    res.value = sign * fref;
    res.refinement_displacement = (zref - zgrid).norm();
    if ((kind == ExtremumKind::Min && res.value > res.grid_value + 1e-13) ||
        (kind == ExtremumKind::Max && res.value < res.grid_value - 1e-13)) {
        res.value = res.grid_value;
        res.location = zgrid;
        res.refinement_displacement = 0.0;
    }
    return res;
}

InterferenceReport interference_report(const OFDMConfig& cfg,
                                       const ChannelModel& ch) {
    const SampledFunction dual = ofdm_dual_window(cfg);
    const int K = cfg.K;
    const int nside = 2 * K + 1;
    std::vector<PhasePoint> pts;
    for (int k = -K; k <= K; ++k) {
        for (int l = -K; l <= K; ++l) {
            pts.push_back(cfg.lattice.basis() * Eigen::Vector2d(k, l));
        }
    }
    const int n_mu = static_cast<int>(pts.size());
    const int grid_n = dual.size();
    const double scale = 1.0 / adjoint_lattice(cfg.lattice).covolume();

    Eigen::MatrixXcd Hg(grid_n, n_mu);
    for (int a = 0; a < n_mu; ++a) {
        const SampledFunction g = sample_atom(pts[a], cfg.step, cfg.extent);
        Hg.col(a) = apply_channel(ch, g).samples;
    }
    Eigen::MatrixXcd F(n_mu, grid_n);
    for (int a = 0; a < n_mu; ++a) {
        const Eigen::VectorXcd shifted =
            fractional_shift(dual.samples, dual.step, pts[a](0));
        for (int i = 0; i < grid_n; ++i) {
            F(a, i) = scale * shifted(i) *
                      std::exp(2.0 * kPi * kI * pts[a](1) * dual.t(i));
        }
    }
    const Eigen::MatrixXcd M_all = (F.conjugate() * Hg) * cfg.step;

    InterferenceReport rep;
    std::vector<int> interior;
    for (int k = -K + 1; k <= K - 1; ++k) {
        for (int l = -K + 1; l <= K - 1; ++l) interior.push_back((k + K) * nside + (l + K));
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
    rep.sir_db = (rep.offdiag_power > 0.0)
                     ? 10.0 * std::log10(rep.diagonal_power / rep.offdiag_power)
                     : std::numeric_limits<double>::infinity();
    return rep;
}

} // namespace gaborlat::serial
