#include "gaborlat/gabor.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gaborlat {

namespace {
constexpr double kPi = 3.14159265358979323846;
const cplx kI(0.0, 1.0);
} // namespace

SampledFunction make_grid(double step, double extent) {
    if (!(step > 0.0 && extent > 0.0)) throw DomainError("bad grid parameters");
    SampledFunction f;
    f.step = step;
    f.extent = extent;
    const int n = static_cast<int>(std::llround(2.0 * extent / step)) + 1;
    f.samples = Eigen::VectorXcd::Zero(n);
    return f;
}

SampledFunction sample_gaussian(double step, double extent) {
    SampledFunction f = make_grid(step, extent);
    const double c = std::pow(2.0, 0.25);
    f.analytic = [c](double t) { return cplx(c * std::exp(-kPi * t * t), 0.0); };
    for (int i = 0; i < f.size(); ++i) f.samples(i) = f.analytic(f.t(i));
    return f;
}

SampledFunction sample_hermite1(double step, double extent) {
    SampledFunction f = make_grid(step, extent);
    // h1(t) = 2^{1/4} * 2 sqrt(pi) t e^{-pi t^2} has unit L2 norm.
    const double c = std::pow(2.0, 0.25) * 2.0 * std::sqrt(kPi);
    f.analytic = [c](double t) { return cplx(c * t * std::exp(-kPi * t * t), 0.0); };
    for (int i = 0; i < f.size(); ++i) f.samples(i) = f.analytic(f.t(i));
    return f;
}

SampledFunction sample_atom(const PhasePoint& z, double step, double extent) {
    if (z.size() != 2) throw DimensionError("sample_atom needs a 2-D phase point");
    SampledFunction f = make_grid(step, extent);
    const double x = z(0), w = z(1);
    const double c = std::pow(2.0, 0.25);
    f.analytic = [c, x, w](double t) {
        return c * std::exp(-kPi * (t - x) * (t - x)) *
               std::exp(2.0 * kPi * kI * w * t);
    };
    for (int i = 0; i < f.size(); ++i) f.samples(i) = f.analytic(f.t(i));
    return f;
}

cplx inner(const SampledFunction& f, const SampledFunction& g) {
    if (f.size() != g.size() || f.step != g.step) {
        throw DomainError("inner: incompatible grids");
    }
    // Trapezoidal rule; the end corrections vanish for decayed functions.
    cplx s = (g.samples.conjugate().array() * f.samples.array()).sum();
    s -= 0.5 * (f.samples(0) * std::conj(g.samples(0)) +
                f.samples(f.size() - 1) * std::conj(g.samples(g.size() - 1)));
    return s * f.step;
}

double l2_norm(const SampledFunction& f) {
    return std::sqrt(std::abs(inner(f, f)));
}

std::string method_name(BoundMethod m) {
    switch (m) {
        case BoundMethod::JanssenExact: return "janssen-exact";
        case BoundMethod::GramSpectral: return "gram-spectral";
        case BoundMethod::Relaxed: return "relaxed";
        case BoundMethod::ConditionAUpper: return "condition-A-upper";
        case BoundMethod::EnergyLower: return "energy-lower";
    }
    return "unknown";
}

cplx ambiguity_gauss(const PhasePoint& z) {
    const int dim = static_cast<int>(z.size());
    if (dim % 2 != 0) throw DimensionError("ambiguity_gauss: odd phase dimension");
    const int d = dim / 2;
    const double xw = z.head(d).dot(z.tail(d));
    return std::exp(-kPi * kI * xw) * std::exp(-kPi * z.squaredNorm() / 2.0);
}

cplx stft_quadrature(const SampledFunction& f, const SampledFunction& g,
                     const PhasePoint& z) {
    if (z.size() != 2) throw DimensionError("stft_quadrature is 1-D only");
    if (f.size() != g.size() || f.step != g.step) {
        throw DomainError("stft_quadrature: incompatible grids");
    }
    const double edge = std::max(std::abs(f.samples(0)), std::abs(f.samples(f.size() - 1)));
    if (edge > 1e-10) throw DomainError("stft_quadrature: insufficient decay at grid edges");
    const double x = z(0), w = z(1);
    cplx s(0.0, 0.0);
    if (g.analytic) {
        for (int i = 0; i < f.size(); ++i) {
            const double t = f.t(i);
            s += f.samples(i) * std::conj(g.analytic(t - x)) *
                 std::exp(-2.0 * kPi * kI * w * t);
        }
    } else {
        // Window translate must be grid-aligned when no evaluator is present.
        const double sh = x / f.step;
        const long k = std::lround(sh);
        if (std::abs(sh - k) > 1e-9) {
            throw DomainError("stft_quadrature: off-grid shift needs g.analytic");
        }
        for (int i = 0; i < f.size(); ++i) {
            const long j = i - k;
            if (j < 0 || j >= g.size()) continue;
            s += f.samples(i) * std::conj(g.samples(j)) *
                 std::exp(-2.0 * kPi * kI * w * f.t(i));
        }
    }
    return s * f.step;
}

namespace {

/// Closed-form Gram entry <pi(nu) phi, pi(lambda) phi>.
cplx gram_entry(const PhasePoint& lambda, const PhasePoint& nu) {
    const int d = static_cast<int>(lambda.size()) / 2;
    const PhasePoint diff = lambda - nu;
    const double phase = -2.0 * kPi * nu.head(d).dot((lambda.tail(d) - nu.tail(d)));
    return std::exp(kI * phase) * ambiguity_gauss(diff);
}

/// One-time validation of the Gram phase formula against the quadrature
/// oracle (the sign conventions are the classic silent trap).
void validate_gram_phase() {
    static std::once_flag flag;
    std::call_once(flag, [] {
        std::mt19937 rng(12345);
        std::uniform_real_distribution<double> U(-2.0, 2.0);
        for (int k = 0; k < 10; ++k) {
            const PhasePoint lam = phase_point(U(rng), U(rng));
            const PhasePoint nu = phase_point(U(rng), U(rng));
            const SampledFunction a = sample_atom(nu);
            const SampledFunction b = sample_atom(lam);
            const cplx ref = inner(a, b); // <pi(nu)phi, pi(lambda)phi>
            if (std::abs(ref - gram_entry(lam, nu)) > 1e-10) {
                throw NumericError("gram phase formula failed oracle validation");
            }
        }
    });
}

} // namespace

GramMatrix gram_matrix(const Lattice& L, double radius, std::size_t cap) {
    if (!(radius > 0.0)) throw DomainError("gram_matrix: radius must be positive");
    validate_gram_phase();
    GramMatrix G;
    // A dense Hermitian eigenproblem stops being tractable long before the
    // enumeration cap; keep the matrix dimension within desk scale.
    constexpr std::size_t kGramMaxPoints = 5000;
    G.index_map = enumerate_points(L, radius, std::min(cap, kGramMaxPoints));
    const int n = static_cast<int>(G.index_map.size());
    G.entries.resize(n, n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            G.entries(a, b) = gram_entry(G.index_map[a], G.index_map[b]);
        }
    }
    return G;
}

FrameBounds janssen_frame_bounds(const Lattice& L, const TruncationPolicy& p,
                                 int grid_n) {
    if (L.dim() != 2) throw DimensionError("janssen_frame_bounds: d = 1 only");
    if (!(L.density() > 1.0)) {
        throw NotAFrameError("density <= 1: no Gaussian Gabor frame in d = 1");
    }
    const Lattice adj = adjoint_lattice(L);
    const double vol_inv = 1.0 / L.covolume();
    const double B = vol_inv * theta_dual_phase(adj, Eigen::Vector2d::Zero(), p);
    const ExtremumResult mn =
        find_extremum(adj, GaussWidth{1.0}, ExtremumKind::Min, ThetaForm::DualPhase,
                      grid_n, p);
    const double A = vol_inv * mn.value;
    if (!(A > 0.0)) throw NotAFrameError("refined lower bound is non-positive");
    FrameBounds fb;
    fb.A = A;
    fb.B = B;
    fb.ratio = B / A;
    fb.method = BoundMethod::JanssenExact;
    fb.error_bound = 2.0 * p.tol * vol_inv;
    const double dens = L.density();
    const double nearest = std::round(dens);
    fb.heuristic = !(std::abs(dens - nearest) < 1e-9 &&
                     std::llround(nearest) % 2 == 0 && nearest >= 2.0);
    return fb;
}

double condition_a_upper(const Lattice& L, const TruncationPolicy& p) {
    const Lattice adj = adjoint_lattice(L);
    return theta_translate(adj, Eigen::VectorXd::Zero(L.dim()), GaussWidth{0.5}, p) /
           L.covolume();
}

double condition_a_upper(const ThetaSeries& adjoint_table, double covolume_L,
                         const GaussWidth& w) {
    return theta_series_sum(adjoint_table, w, 0.5) / covolume_L;
}

double energy_lower_bound(const Lattice& L, const TruncationPolicy& p) {
    return theta_translate(L, Eigen::VectorXd::Zero(L.dim()), GaussWidth{1.0}, p);
}

double energy_lower_bound(const ThetaSeries& table, const GaussWidth& w) {
    return theta_series_sum(table, w, 1.0);
}

FrameBounds gram_spectral_bounds(const Lattice& L, double truncation_radius) {
    if (!(L.density() > 1.0)) {
        throw NotAFrameError(
            "gram_spectral_bounds: density <= 1 violates the duality precondition");
    }
    const GramMatrix G = gram_matrix(adjoint_lattice(L), truncation_radius);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G.entries);
    if (es.info() != Eigen::Success) {
        throw NumericError("gram_spectral_bounds: eigensolver failed");
    }
    FrameBounds fb;
    fb.A = es.eigenvalues().minCoeff();
    fb.B = es.eigenvalues().maxCoeff();
    fb.ratio = fb.B / fb.A;
    fb.method = BoundMethod::GramSpectral;
    fb.error_bound = 0.0; // finite-section estimate; converges monotonically
    return fb;
}

FrameBounds relaxed_bounds(const Lattice& L, const GaussWidth& w, int grid_n) {
    if (L.dim() != 2) throw DimensionError("relaxed_bounds: d = 1 only");
    const TruncationPolicy p{};
    const double B = theta_translate(L, Eigen::Vector2d::Zero(), w, p);
    const ExtremumResult mn =
        find_extremum(L, w, ExtremumKind::Min, ThetaForm::Translate, grid_n, p);
    FrameBounds fb;
    fb.A = mn.value;
    fb.B = B;
    fb.ratio = B / mn.value;
    fb.method = BoundMethod::Relaxed;
    fb.error_bound = 2.0 * p.tol;
    return fb;
}

double figa_residual(const SampledFunction& f1, const SampledFunction& f2,
                     const SampledFunction& g1, const SampledFunction& g2,
                     const Lattice& L, double radius) {
    if (L.dim() != 2) throw DimensionError("figa_residual: d = 1 only");
    cplx lhs(0.0, 0.0);
    for (const auto& lam : enumerate_points(L, radius)) {
        lhs += stft_quadrature(f1, g1, lam) * std::conj(stft_quadrature(f2, g2, lam));
    }
    cplx rhs(0.0, 0.0);
    for (const auto& mu : enumerate_points(adjoint_lattice(L), radius)) {
        rhs += stft_quadrature(f1, f2, mu) * std::conj(stft_quadrature(g1, g2, mu));
    }
    rhs /= L.covolume();
    return std::abs(lhs - rhs);
}

namespace {

/// Cross-Wigner distribution on a phase-space grid, by quadrature of the
/// t-integral; needs analytic evaluators for the off-grid arguments.
Eigen::MatrixXcd wigner_grid(const SampledFunction& f, const SampledFunction& g,
                             double ext, double hx, double ht) {
    if (!f.analytic || !g.analytic) {
        throw DomainError("wigner: analytic evaluators required");
    }
    const int n = static_cast<int>(std::llround(2.0 * ext / hx)) + 1;
    const int m = static_cast<int>(std::llround(2.0 * 8.0 / ht)) + 1;
    Eigen::MatrixXcd W(n, n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int ix = 0; ix < n; ++ix) {
        const double x = -ext + ix * hx;
        std::vector<cplx> row(m);
        for (int it = 0; it < m; ++it) {
            const double t = -8.0 + it * ht;
            row[it] = f.analytic(x + 0.5 * t) * std::conj(g.analytic(x - 0.5 * t));
        }
        for (int iw = 0; iw < n; ++iw) {
            const double w = -ext + iw * hx;
            cplx s(0.0, 0.0);
            for (int it = 0; it < m; ++it) {
                const double t = -8.0 + it * ht;
                s += row[it] * std::exp(-2.0 * kPi * kI * t * w);
            }
            W(ix, iw) = s * ht;
        }
    }
    return W;
}

cplx grid_inner(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B, double hx) {
    return (B.conjugate().array() * A.array()).sum() * hx * hx;
}

} // namespace

MoyalResult moyal_wigner_check(const SampledFunction& f, const SampledFunction& g) {
    const double ext = 4.0, hx = 1.0 / 8.0, ht = 1.0 / 16.0;
    const Eigen::MatrixXcd Wfg = wigner_grid(f, g, ext, hx, ht);
    MoyalResult r;
    const cplx lhs = grid_inner(Wfg, Wfg, hx);
    const cplx rhs = inner(f, f) * std::conj(inner(g, g));
    r.moyal_residual = std::abs(lhs - rhs);
    const SampledFunction phi = sample_gaussian(f.step, f.extent);
    const Eigen::MatrixXcd Wfp = wigner_grid(f, phi, ext, hx, ht);
    r.norm_residual = std::abs(std::sqrt(std::abs(grid_inner(Wfp, Wfp, hx))) - l2_norm(f));
    return r;
}

namespace {

/// Atom bank for the matrix-free frame operator on a sample grid.
struct AtomBank {
    Eigen::MatrixXcd atoms; // rows = atoms
    double step;
    int n;
};

AtomBank build_atoms(const Lattice& L, double op_radius, double step, double extent) {
    const auto pts = enumerate_points(L, op_radius);
    AtomBank bank;
    const SampledFunction grid = make_grid(step, extent);
    bank.step = step;
    bank.n = grid.size();
    bank.atoms.resize(static_cast<int>(pts.size()), bank.n);
    const double c = std::pow(2.0, 0.25);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int a = 0; a < static_cast<int>(pts.size()); ++a) {
        const double x = pts[a](0), w = pts[a](1);
        for (int i = 0; i < bank.n; ++i) {
            const double t = -extent + i * step;
            bank.atoms(a, i) = c * std::exp(-kPi * (t - x) * (t - x)) *
                               std::exp(2.0 * kPi * kI * w * t);
        }
    }
    return bank;
}

/// S f = sum_lambda <f, phi_lambda> phi_lambda with grid inner products.
Eigen::VectorXcd apply_S(const AtomBank& bank, const Eigen::VectorXcd& f) {
    const Eigen::VectorXcd coeffs = bank.atoms.conjugate() * f * bank.step;
    return bank.atoms.transpose() * coeffs;
}

} // namespace

SampledFunction dual_window(const Lattice& L, const TruncationPolicy& p,
                            double cg_tol, double op_radius, double step,
                            double extent) {
    if (L.dim() != 2) throw DimensionError("dual_window: d = 1 only");
    const FrameBounds fb = janssen_frame_bounds(L, p); // throws if not a frame
    const AtomBank bank = build_atoms(L, op_radius, step, extent);
    SampledFunction phi = sample_gaussian(step, extent);

    const int budget =
        static_cast<int>(std::ceil(std::sqrt(fb.ratio) * std::log(2.0 / cg_tol))) + 20;
    const int hard_cap = 10 * budget;

    // Conjugate gradients on the Hermitian positive definite operator S.
    Eigen::VectorXcd gamma = Eigen::VectorXcd::Zero(phi.size());
    Eigen::VectorXcd r = phi.samples - apply_S(bank, gamma);
    Eigen::VectorXcd d = r;
    double rs = r.squaredNorm();
    const auto l2 = [&](double sq) { return std::sqrt(sq * step); };
    int it = 0;
    while (l2(rs) > cg_tol) {
        if (++it > hard_cap) {
            throw NumericError("dual_window: CG failed to converge within 10x budget");
        }
        const Eigen::VectorXcd Sd = apply_S(bank, d);
        const double alpha = rs / std::real(d.dot(Sd));
        gamma += alpha * d;
        r -= alpha * Sd;
        const double rs_new = r.squaredNorm();
        d = r + (rs_new / rs) * d;
        rs = rs_new;
    }
    SampledFunction out = make_grid(step, extent);
    out.samples = gamma;
    return out;
}

double frame_operator_residual(const Lattice& L, const SampledFunction& gamma,
                               double op_radius) {
    const AtomBank bank = build_atoms(L, op_radius, gamma.step, gamma.extent);
    const SampledFunction phi = sample_gaussian(gamma.step, gamma.extent);
    const Eigen::VectorXcd res = apply_S(bank, gamma.samples) - phi.samples;
    return std::sqrt(res.squaredNorm() * gamma.step);
}

double biorthogonality_defect(const Lattice& L, const SampledFunction& gamma,
                              double radius) {
    const Lattice adj = adjoint_lattice(L);
    double worst = 0.0;
    for (const auto& mu : enumerate_points(adj, radius)) {
        const SampledFunction atom = sample_atom(mu, gamma.step, gamma.extent);
        const cplx v = inner(gamma, atom);
        const cplx expect = (mu.norm() < 1e-12) ? cplx(L.covolume(), 0.0) : cplx(0.0, 0.0);
        worst = std::max(worst, std::abs(v - expect));
    }
    return worst;
}

TensorFrameResult tensor_frame_check(double alpha, double beta) {
    if (!(alpha > 0.0 && beta > 0.0)) throw DomainError("tensor_frame_check: positive args");
    TensorFrameResult r;
    r.lambda1_is_frame = alpha < 1.0;
    r.lambda2_is_frame = (alpha * beta < 1.0) && (alpha / beta < 1.0);
    return r;
}

Lattice tensor_lattice1(double alpha, double beta) {
    Eigen::Vector4d d(beta, beta, 1.0 / beta, 1.0 / beta);
    return Lattice(alpha * Eigen::MatrixXd(d.asDiagonal()));
}

Lattice tensor_lattice2(double alpha, double beta) {
    Eigen::Vector4d d(beta, 1.0 / beta, beta, 1.0 / beta);
    return Lattice(alpha * Eigen::MatrixXd(d.asDiagonal()));
}

} // namespace gaborlat
