#ifndef GABORLAT_GABOR_HPP
#define GABORLAT_GABOR_HPP

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "gaborlat/lattice.hpp"
#include "gaborlat/theta.hpp"

namespace gaborlat {

using cplx = std::complex<double>;

/// Phase-space point z = (x_1..x_d, omega_1..omega_d).
using PhasePoint = Eigen::VectorXd;

/// Convenience constructor for d = 1.
inline PhasePoint phase_point(double x, double omega) {
    PhasePoint z(2);
    z << x, omega;
    return z;
}

/**
 * @brief Complex function sampled on a uniform origin-centered 1-D grid
 * t_i = -extent + i*step.
 *
 * `analytic`, when set by a factory, evaluates the underlying function at
 * arbitrary points (used by quadrature routines that need off-grid values).
 */
struct SampledFunction {
    Eigen::VectorXcd samples;
    double step = 1.0 / 32.0;
    double extent = 8.0;
    std::function<cplx(double)> analytic;

    int size() const { return static_cast<int>(samples.size()); }
    double t(int i) const { return -extent + i * step; }
};

/// Default quadrature grid (documented: step 1/32, extent [-8, 8]).
SampledFunction make_grid(double step = 1.0 / 32.0, double extent = 8.0);

/// Normalized standard Gaussian phi(t) = 2^{1/4} e^{-pi t^2} on the grid.
SampledFunction sample_gaussian(double step = 1.0 / 32.0, double extent = 8.0);

/// Normalized first Hermite function (odd, orthogonal to phi) on the grid.
SampledFunction sample_hermite1(double step = 1.0 / 32.0, double extent = 8.0);

/// The time-frequency shifted Gaussian pi(z) phi = M_omega T_x phi, sampled.
SampledFunction sample_atom(const PhasePoint& z, double step = 1.0 / 32.0,
                            double extent = 8.0);

/// L2 inner product <f, g> = integral f conj(g) by the grid quadrature.
cplx inner(const SampledFunction& f, const SampledFunction& g);

/// L2 norm on the grid.
double l2_norm(const SampledFunction& f);

/// Frame bound estimation method tags (CSV column `method`).
enum class BoundMethod { JanssenExact, GramSpectral, Relaxed, ConditionAUpper, EnergyLower };

std::string method_name(BoundMethod m);

/// Frame-bound record; `heuristic` marks janssen values computed outside the
/// even-integer-density validity regime.
struct FrameBounds {
    double A = 0.0;
    double B = 0.0;
    double ratio = 1.0;
    BoundMethod method = BoundMethod::JanssenExact;
    double error_bound = 0.0;
    bool heuristic = false;
};

/// Finite Gram matrix of the Gaussian system over an enumerated lattice patch.
struct GramMatrix {
    Eigen::MatrixXcd entries;
    std::vector<PhasePoint> index_map;
};

/// V_phi phi(z) with the fixed convention e^{-pi i x.omega} e^{-pi |z|^2 / 2}.
cplx ambiguity_gauss(const PhasePoint& z);

/**
 * @brief STFT V_g f(z) by trapezoidal quadrature (d = 1).
 *
 * Independent oracle for ambiguity_gauss and Gram entries. Needs g.analytic
 * for the off-grid window translate g(t - x).
 */
cplx stft_quadrature(const SampledFunction& f, const SampledFunction& g,
                     const PhasePoint& z);

/// Gram matrix G_{lambda,nu} = <pi(nu) phi, pi(lambda) phi> from the closed
/// form; the phase formula is validated once per process against the
/// quadrature oracle on 10 random pairs (1e-10).
GramMatrix gram_matrix(const Lattice& L, double radius,
                       std::size_t cap = kEnumPointCap);

/// Exact-form frame bounds via the adjoint-lattice phase sum (d = 1; labeled
/// heuristic outside even integer density).
FrameBounds janssen_frame_bounds(const Lattice& L, const TruncationPolicy& p = {},
                                 int grid_n = 64);

/// Upper bound B-tilde = covolume^{-1} sum over the adjoint of |V_phi phi|.
double condition_a_upper(const Lattice& L, const TruncationPolicy& p = {});
/// Theta-table path: the table must describe the ADJOINT lattice; covolume_L
/// is the covolume of the original lattice.
double condition_a_upper(const ThetaSeries& adjoint_table, double covolume_L,
                         const GaussWidth& w = {});

/// Lower bound sum over the lattice of |V_phi phi|^2 = e^{-pi |lambda|^2}.
double energy_lower_bound(const Lattice& L, const TruncationPolicy& p = {});
double energy_lower_bound(const ThetaSeries& table, const GaussWidth& w = {});

/// Eigenvalue range of the Gram matrix of the adjoint system (raw scaling:
/// a single-point truncation yields A_est = B_est = 1).
FrameBounds gram_spectral_bounds(const Lattice& L, double truncation_radius);

/// Gaussian-energy approximations: extrema of theta_translate at width alpha.
FrameBounds relaxed_bounds(const Lattice& L, const GaussWidth& w, int grid_n = 64);

/// |LHS - RHS| of the fundamental identity of Gabor analysis on L vs its
/// adjoint, all four STFTs by quadrature.
double figa_residual(const SampledFunction& f1, const SampledFunction& f2,
                     const SampledFunction& g1, const SampledFunction& g2,
                     const Lattice& L, double radius);

/// Moyal / Wigner cross-check residuals.
struct MoyalResult {
    double moyal_residual = 0.0; ///< |<W(f,g), W(f,g)> - <f,f> conj(<g,g>)| variant
    double norm_residual = 0.0;  ///< | ||W(f, phi)|| - ||f|| |
};
MoyalResult moyal_wigner_check(const SampledFunction& f, const SampledFunction& g);

/**
 * @brief Canonical dual window gamma = S^{-1} phi by conjugate gradients.
 *
 * The frame operator is applied matrix-free as S f = sum <f, phi_lambda>
 * phi_lambda over lattice points within `op_radius`, with the atoms evaluated
 * analytically on the sample grid.
 */
SampledFunction dual_window(const Lattice& L, const TruncationPolicy& p = {},
                            double cg_tol = 1e-8, double op_radius = 8.0,
                            double step = 1.0 / 32.0, double extent = 8.0);

/// Max deviation of <gamma, pi(mu) phi> from covolume * delta_{mu,0} over the
/// adjoint-lattice points within `radius`.
double biorthogonality_defect(const Lattice& L, const SampledFunction& gamma,
                              double radius);

/// Residual ||S gamma - phi|| for a given window (same operator as above).
double frame_operator_residual(const Lattice& L, const SampledFunction& gamma,
                               double op_radius);

/// Frame predicates for two relabelings of a diagonal product lattice in R^4
/// (same product of 1-D lattices, different pairing of time and frequency).
struct TensorFrameResult {
    bool lambda1_is_frame = false;
    bool lambda2_is_frame = false;
};
TensorFrameResult tensor_frame_check(double alpha, double beta);

/// Basis of Lambda_1(alpha) = alpha diag(beta, beta, 1/beta, 1/beta) Z^4 and
/// Lambda_2(alpha) = alpha diag(beta, 1/beta, beta, 1/beta) Z^4 in the
/// (x1, x2, omega1, omega2) ordering.
Lattice tensor_lattice1(double alpha, double beta);
Lattice tensor_lattice2(double alpha, double beta);

} // namespace gaborlat

#endif // GABORLAT_GABOR_HPP
