#ifndef GABORLAT_THETA_HPP
#define GABORLAT_THETA_HPP

#include <Eigen/Dense>
#include <functional>

#include "gaborlat/lattice.hpp"

namespace gaborlat {

/// Scaling alpha in e^{-pi * alpha |.|^2}.
struct GaussWidth {
    double alpha = 1.0;
};

/// Absolute-tail truncation policy for lattice sums.
struct TruncationPolicy {
    double tol = 1e-12;
    double max_radius = 64.0;
    std::size_t max_points = kEnumPointCap;
};

/// A located extremum of a theta-like function, with the grid certificate.
struct ExtremumResult {
    Eigen::VectorXd location;
    double value = 0.0;
    int grid_resolution = 0;
    bool refined = false;
    double grid_value = 0.0;
    double refinement_displacement = 0.0;
};

enum class ExtremumKind { Min, Max };
enum class ThetaForm { Translate, DualPhase };

/**
 * @brief Radius R with tail sum_{|lambda| > R} e^{-pi alpha |lambda|^2} <= tol.
 *
 * Shell point counts are bounded by the volume of the covering-radius-padded
 * annulus divided by the covolume; the tail is then summed numerically shell
 * by shell. Monotone non-increasing in tol.
 */
double truncation_radius(const GaussWidth& w, double tol, const Lattice& L);

/// F_Lambda-type sum: sum over lattice points of e^{-pi alpha |lambda + z|^2},
/// truncation error <= p.tol. Compensated summation in ascending-norm order.
double theta_translate(const Lattice& L, const Eigen::VectorXd& z,
                       const GaussWidth& w, const TruncationPolicy& p);

/// F-hat-type sum: Re sum e^{-pi |lambda|^2} e^{2 pi i sigma(lambda, z)}.
/// The imaginary residue (zero by +-lambda symmetry) is asserted <= p.tol.
double theta_dual_phase(const Lattice& L, const Eigen::VectorXd& z,
                        const TruncationPolicy& p);

/// Sum over a theta table: sum count * e^{-pi alpha exponent_scale * norm2};
/// the tail bound e^{-pi alpha scale * last_norm2} is available via out param.
double theta_series_sum(const ThetaSeries& t, const GaussWidth& w,
                        double exponent_scale, double* tail_bound = nullptr);

/**
 * @brief Grid-then-Nelder-Mead extremum of a theta form over the fundamental
 * cell (2-D lattices only).
 *
 * Translate form searches the cell of L itself; the dual-phase form is
 * periodic under the adjoint lattice and searches that cell. Grid ties break
 * lexicographically on grid indices; refinement runs 200 Nelder-Mead
 * iterations to simplex diameter 1e-10.
 */
ExtremumResult find_extremum(const Lattice& L, const GaussWidth& w,
                             ExtremumKind kind, ThetaForm which, int grid_n,
                             const TruncationPolicy& p = {});

/// |LHS - RHS| of the symplectic Poisson summation formula for the Gaussian
/// F(u) = e^{-pi alpha |u|^2} (symplectic Fourier transform in closed form).
double symplectic_psf_check(const Lattice& L, const Eigen::VectorXd& z,
                            const GaussWidth& w, const TruncationPolicy& p);

/**
 * @brief Generic Nelder-Mead minimizer in n dimensions (derivative-free).
 *
 * Fixed budget: max_iter iterations or simplex diameter <= diam_tol.
 * Used by find_extremum and the shape-scan refinement.
 */
Eigen::VectorXd nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                            const Eigen::VectorXd& start, double step,
                            int max_iter = 200, double diam_tol = 1e-10,
                            double* fmin = nullptr);

} // namespace gaborlat

#endif // GABORLAT_THETA_HPP
