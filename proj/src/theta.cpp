#include "gaborlat/theta.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gaborlat {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Kahan compensated accumulator.
struct Kahan {
    double sum = 0.0, c = 0.0;
    void add(double x) {
        const double y = x - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

double ball_volume(int n, double r) {
    if (r <= 0.0) return 0.0;
    return std::pow(kPi, n / 2.0) / std::tgamma(n / 2.0 + 1.0) * std::pow(r, n);
}

/// Cheap covering-radius bound: half the sum of basis vector lengths.
double covering_bound(const Lattice& L) {
    double s = 0.0;
    for (int j = 0; j < L.dim(); ++j) s += L.basis().col(j).norm();
    return 0.5 * s;
}

/// Upper bound on the tail sum_{|lambda| > R} e^{-pi a |lambda|^2}: every
/// Voronoi cell fits in a ball of the covering radius, so the point count of
/// a shell is at most the padded annulus volume over the covolume.
double tail_bound(const Lattice& L, double a, double R) {
    const double mu = covering_bound(L);
    const int n = L.dim();
    const double h = 0.25;
    double tail = 0.0;
    for (int k = 0; k < 4000; ++k) {
        const double lo = R + k * h, hi = R + (k + 1) * h;
        const double cnt =
            (ball_volume(n, hi + mu) - ball_volume(n, std::max(lo - mu, 0.0))) /
            L.covolume();
        const double term = cnt * std::exp(-kPi * a * lo * lo);
        tail += term;
        if (term < 1e-300 || (k > 8 && term < 1e-18 * tail)) break;
    }
    return tail;
}

} // namespace

double truncation_radius(const GaussWidth& w, double tol, const Lattice& L) {
    if (!(tol > 0.0 && tol < 1.0)) throw DomainError("truncation tol must be in (0,1)");
    double R = std::sqrt(std::max(std::log(1.0 / tol) / (kPi * w.alpha), 1.0));
    while (tail_bound(L, w.alpha, R) > tol) {
        R += 0.25;
        if (R > 1e4) throw NumericError("truncation_radius: no radius found");
    }
    return R;
}

namespace {

struct WeightedPoints {
    std::vector<Eigen::VectorXd> pts; // ascending |.| order
};

WeightedPoints collect(const Lattice& L, double radius, std::size_t cap) {
    WeightedPoints wp;
    wp.pts = enumerate_points(L, radius, cap);
    std::sort(wp.pts.begin(), wp.pts.end(),
              [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
                  return a.squaredNorm() < b.squaredNorm();
              });
    return wp;
}

} // namespace

double theta_translate(const Lattice& L, const Eigen::VectorXd& z,
                       const GaussWidth& w, const TruncationPolicy& p) {
    if (z.size() != L.dim()) throw DimensionError("theta_translate: z has wrong dimension");
    const double R = truncation_radius(w, p.tol, L);
    if (R + z.norm() > p.max_radius) {
        throw ResourceCapError("theta_translate: needed radius " +
                               std::to_string(R + z.norm()) + " exceeds cap");
    }
    auto wp = collect(L, R + z.norm(), p.max_points);
    // Sort by the shifted norm so the compensated sum runs ascending in it.
    std::sort(wp.pts.begin(), wp.pts.end(),
              [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
                  return (a + z).squaredNorm() < (b + z).squaredNorm();
              });
    Kahan acc;
    for (const auto& q : wp.pts) acc.add(std::exp(-kPi * w.alpha * (q + z).squaredNorm()));
    return acc.sum;
}

double theta_dual_phase(const Lattice& L, const Eigen::VectorXd& z,
                        const TruncationPolicy& p) {
    if (z.size() != L.dim()) throw DimensionError("theta_dual_phase: z has wrong dimension");
    const GaussWidth unit{1.0};
    const double R = truncation_radius(unit, p.tol, L);
    if (R > p.max_radius) throw ResourceCapError("theta_dual_phase: radius cap exceeded");
    const auto wp = collect(L, R, p.max_points);
    const Eigen::MatrixXd J = symplectic_J(L.dim());
    const Eigen::VectorXd Jz = J * z;
    Kahan re, im;
    for (const auto& q : wp.pts) {
        const double wgt = std::exp(-kPi * q.squaredNorm());
        const double ph = 2.0 * kPi * q.dot(Jz);
        re.add(wgt * std::cos(ph));
        im.add(wgt * std::sin(ph));
    }
    if (std::abs(im.sum) > std::max(p.tol, 1e2 * 1e-16 * wp.pts.size())) {
        throw NumericError("theta_dual_phase: imaginary residue " +
                           std::to_string(im.sum) + " exceeds tolerance (broken enumerator?)");
    }
    return re.sum;
}

double theta_series_sum(const ThetaSeries& t, const GaussWidth& w,
                        double exponent_scale, double* tail_bound_out) {
    t.validate();
    Kahan acc;
    for (const auto& e : t.entries) {
        acc.add(static_cast<double>(e.second) *
                std::exp(-kPi * w.alpha * exponent_scale * e.first));
    }
    if (tail_bound_out) {
        const auto& last = t.entries.back();
        // Crude reported bound: the next shells decay geometrically faster
        // than the last tabulated one.
        *tail_bound_out = 2.0 * static_cast<double>(last.second) *
                          std::exp(-kPi * w.alpha * exponent_scale * last.first);
    }
    return acc.sum;
}

Eigen::VectorXd nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                            const Eigen::VectorXd& start, double step,
                            int max_iter, double diam_tol, double* fmin) {
    const int n = static_cast<int>(start.size());
    std::vector<Eigen::VectorXd> x(n + 1, start);
    std::vector<double> fx(n + 1);
    for (int i = 0; i < n; ++i) x[i + 1](i) += step;
    for (int i = 0; i <= n; ++i) fx[i] = f(x[i]);

    auto order = [&] {
        std::vector<int> idx(n + 1);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fx[a] < fx[b]; });
        std::vector<Eigen::VectorXd> xs;
        std::vector<double> fs;
        for (int i : idx) { xs.push_back(x[i]); fs.push_back(fx[i]); }
        x = xs; fx = fs;
    };

    for (int it = 0; it < max_iter; ++it) {
        order();
        double diam = 0.0;
        for (int i = 1; i <= n; ++i) diam = std::max(diam, (x[i] - x[0]).norm());
        if (diam <= diam_tol) break;
        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (int i = 0; i < n; ++i) centroid += x[i];
        centroid /= n;
        const Eigen::VectorXd xr = centroid + (centroid - x[n]);
        const double fr = f(xr);
        if (fr < fx[0]) {
            const Eigen::VectorXd xe = centroid + 2.0 * (centroid - x[n]);
            const double fe = f(xe);
            if (fe < fr) { x[n] = xe; fx[n] = fe; } else { x[n] = xr; fx[n] = fr; }
        } else if (fr < fx[n - 1]) {
            x[n] = xr; fx[n] = fr;
        } else {
            const Eigen::VectorXd xc = centroid + 0.5 * (x[n] - centroid);
            const double fc = f(xc);
            if (fc < fx[n]) {
                x[n] = xc; fx[n] = fc;
            } else {
                for (int i = 1; i <= n; ++i) {
                    x[i] = x[0] + 0.5 * (x[i] - x[0]);
                    fx[i] = f(x[i]);
                }
            }
        }
    }
    order();
    if (fmin) *fmin = fx[0];
    return x[0];
}

ExtremumResult find_extremum(const Lattice& L, const GaussWidth& w,
                             ExtremumKind kind, ThetaForm which, int grid_n,
                             const TruncationPolicy& p) {
    if (L.dim() != 2) throw DimensionError("find_extremum supports only 2-D lattices");
    if (grid_n < 16) throw DomainError("find_extremum: grid_n must be >= 16");

    // Periodicity cell: the translate form repeats under L itself, the
    // dual-phase form under the adjoint lattice.
    const Eigen::Matrix2d cell = (which == ThetaForm::Translate)
                                     ? Eigen::Matrix2d(L.basis())
                                     : Eigen::Matrix2d(adjoint_lattice(L).basis());

    // Cache the summation points once; every grid evaluation reuses them.
    const double alpha = (which == ThetaForm::Translate) ? w.alpha : 1.0;
    const double R = truncation_radius(GaussWidth{alpha}, p.tol, L);
    const double pad = (which == ThetaForm::Translate)
                           ? cell.col(0).norm() + cell.col(1).norm()
                           : 0.0;
    if (R + pad > p.max_radius) throw ResourceCapError("find_extremum: radius cap exceeded");
    const auto wp = collect(L, R + pad, p.max_points);
    const Eigen::Matrix2d J2 = symplectic_J(2);

    std::vector<double> weights;
    if (which == ThetaForm::DualPhase) {
        weights.reserve(wp.pts.size());
        for (const auto& q : wp.pts) weights.push_back(std::exp(-kPi * q.squaredNorm()));
    }

    const auto eval = [&](const Eigen::VectorXd& z) -> double {
        Kahan acc;
        if (which == ThetaForm::Translate) {
            for (const auto& q : wp.pts) acc.add(std::exp(-kPi * alpha * (q + z).squaredNorm()));
        } else {
            const Eigen::Vector2d Jz = J2 * z;
            for (std::size_t i = 0; i < wp.pts.size(); ++i) {
                acc.add(weights[i] * std::cos(2.0 * kPi * wp.pts[i].dot(Jz)));
            }
        }
        return acc.sum;
    };
    const double sign = (kind == ExtremumKind::Min) ? 1.0 : -1.0;

    // Grid stage (data-parallel); lexicographic (i, j) tie-break.
    double best = std::numeric_limits<double>::infinity();
    long best_i = -1, best_j = -1;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < grid_n; ++i) {
        double loc_best = std::numeric_limits<double>::infinity();
        long li = -1, lj = -1;
        for (int j = 0; j < grid_n; ++j) {
            const Eigen::Vector2d z =
                cell * Eigen::Vector2d(double(i) / grid_n, double(j) / grid_n);
            const double v = sign * eval(z);
            // Strict improvement only: on exact ties the earlier (i, j) wins.
            if (v < loc_best) { loc_best = v; li = i; lj = j; }
        }
#ifdef _OPENMP
#pragma omp critical
#endif
        {
            if (loc_best < best - 1e-15 ||
                (std::abs(loc_best - best) <= 1e-15 &&
                 (li < best_i || (li == best_i && lj < best_j)))) {
                best = loc_best;
                best_i = li;
                best_j = lj;
            }
        }
    }
    const Eigen::Vector2d zgrid =
        cell * Eigen::Vector2d(double(best_i) / grid_n, double(best_j) / grid_n);

    ExtremumResult res;
    res.grid_resolution = grid_n;
    res.grid_value = sign * best;

    // Refinement: Nelder-Mead with fixed budget.
    double fref = 0.0;
    const double step = std::min(cell.col(0).norm(), cell.col(1).norm()) / grid_n;
    const Eigen::VectorXd zref = nelder_mead(
        [&](const Eigen::VectorXd& z) { return sign * eval(z); }, zgrid, step, 200,
        1e-10, &fref);
    const double refined_value = sign * fref;

    res.refined = true;
    res.location = zref;
    res.value = refined_value;
    res.refinement_displacement = (zref - zgrid).norm();
    // A refinement can only improve on the grid value.
    if (kind == ExtremumKind::Min && res.value > res.grid_value + 1e-13) {
        res.value = res.grid_value;
        res.location = zgrid;
        res.refinement_displacement = 0.0;
    }
    if (kind == ExtremumKind::Max && res.value < res.grid_value - 1e-13) {
        res.value = res.grid_value;
        res.location = zgrid;
        res.refinement_displacement = 0.0;
    }
    return res;
}

double symplectic_psf_check(const Lattice& L, const Eigen::VectorXd& z,
                            const GaussWidth& w, const TruncationPolicy& p) {
    const int d = L.dim() / 2;
    const double lhs = theta_translate(L, z, w, p);

    const Lattice adj = adjoint_lattice(L);
    // Symplectic Fourier transform of e^{-pi a |u|^2} is a^{-d} e^{-pi |u|^2 / a}.
    const GaussWidth recip{1.0 / w.alpha};
    const double R = truncation_radius(recip, p.tol * w.alpha, adj);
    if (R > p.max_radius) throw ResourceCapError("symplectic_psf_check: radius cap exceeded");
    auto wp = collect(adj, R, p.max_points);
    const Eigen::MatrixXd J = symplectic_J(L.dim());
    const Eigen::VectorXd Jz = J.transpose() * z; // sigma(z, q) = z . (J q) = -(J^T z) . q
    Kahan acc;
    for (const auto& q : wp.pts) {
        const double wgt = std::pow(w.alpha, -d) * std::exp(-kPi * q.squaredNorm() / w.alpha);
        acc.add(wgt * std::cos(2.0 * kPi * Jz.dot(q)));
    }
    const double rhs = acc.sum / L.covolume();
    return std::abs(lhs - rhs);
}

} // namespace gaborlat
