#ifndef GABORLAT_LATTICE_HPP
#define GABORLAT_LATTICE_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gaborlat/errors.hpp"

namespace gaborlat {

/// Default cap for lattice point enumeration (total points).
inline constexpr std::size_t kEnumPointCap = 40'000'000;

/**
 * @brief Full-rank lattice in phase space R^{2d}.
 *
 * Columns of `basis` are the generators. Phase-space coordinates are ordered
 * (x_1..x_d, omega_1..omega_d) throughout the library.
 */
class Lattice {
public:
    explicit Lattice(Eigen::MatrixXd basis_matrix, std::string name = "");

    const Eigen::MatrixXd& basis() const { return basis_; }
    int dim() const { return static_cast<int>(basis_.rows()); }
    double covolume() const { return covolume_; }
    double density() const { return 1.0 / covolume_; }
    const std::string& name() const { return name_; }

    /// Rescale so that the density equals `target` (uniform dilation).
    Lattice scaled_to_density(double target) const;

private:
    Eigen::MatrixXd basis_;
    double covolume_;
    std::string name_;
};

/**
 * @brief Theta series table: point counts per squared norm.
 *
 * First entry is always (0, 1); counts of nonzero shells are even.
 */
struct ThetaSeries {
    std::vector<std::pair<double, std::uint64_t>> entries;
    std::string lattice_name;
    double covolume_of_table = 1.0;

    void validate() const;
    /// Dilating the lattice by c multiplies all squared norms by c^2.
    ThetaSeries scaled(double norm2_factor, double covolume_factor) const;
};

/// Result of named_lattice: small dimensions give explicit generators,
/// the Leech lattice is handled through its theta series only.
using NamedLattice = std::variant<Lattice, ThetaSeries>;

/**
 * @brief Shape parameter for 2-D lattices of fixed density.
 *
 * (x, y) lives in the closed modular fundamental domain |tau| >= 1,
 * |Re tau| <= 1/2 with tau = x + iy.
 */
struct ShapeParam2D {
    double x = 0.0;
    double y = 1.0;
    double density = 1.0;
};

/// Standard symplectic matrix J = [[0, I], [-I, 0]] in R^{2d}.
Eigen::MatrixXd symplectic_J(int dim);

/// Symplectic form sigma(z, zp) = z . (J zp).
double symplectic_form(const Eigen::VectorXd& z, const Eigen::VectorXd& zp);

/// Dual lattice: basis = inverse transpose.
Lattice dual_lattice(const Lattice& L);

/// Adjoint (symplectic dual) lattice: basis = J * dual basis.
Lattice adjoint_lattice(const Lattice& L);

/// True iff max-norm of (B^T J B - J) <= tol.
bool is_symplectic(const Eigen::MatrixXd& B, double tol);

/**
 * @brief All lattice points with Euclidean norm <= radius, each exactly once.
 *
 * Fincke-Pohst recursive coordinate bounding on the Cholesky factor of the
 * basis Gram matrix; no basis reduction. Deterministic output order:
 * lexicographic on the integer coordinate vector.
 *
 * @throws ResourceCapError when more than `cap` points would be produced.
 */
std::vector<Eigen::VectorXd> enumerate_points(const Lattice& L, double radius,
                                              std::size_t cap = kEnumPointCap);

/// Integer-coordinate variant (same order); column i of the result pairs with
/// point i of enumerate_points.
std::vector<Eigen::VectorXi> enumerate_coords(const Lattice& L, double radius,
                                              std::size_t cap = kEnumPointCap);

/// Shortest nonzero vector length (by enumeration with growing radius).
double minimal_norm(const Lattice& L);

/// Deep holes of a 2-D lattice: Voronoi cell vertices of maximal distance,
/// reduced to the fundamental cell, plus the covering radius.
struct DeepHoles2D {
    std::vector<Eigen::Vector2d> holes;
    double covering_radius = 0.0;
};
DeepHoles2D deep_holes_2d(const Lattice& L);

/// Build the 2-D lattice of the given shape parameter; |det| = 1/density.
Lattice shape_to_lattice(const ShapeParam2D& s);

/**
 * @brief Named-lattice catalog.
 *
 * Names: Z^n (any n via "Z^2", "Z^8", "Z^24", ...), hexagonal, D4, D8, A8*,
 * E8, Leech. All but Leech return an explicit generator scaled to the
 * requested density; Leech returns its theta series table (loaded from the
 * data directory and validated against the kissing-number checksum).
 */
NamedLattice named_lattice(const std::string& name, double density,
                           const std::string& data_dir = "");

/// Theta series by direct enumeration up to max_norm2 (shells merged at
/// 1e-9 granularity).
ThetaSeries theta_by_enumeration(const Lattice& L, double max_norm2,
                                 std::size_t cap = kEnumPointCap);

/// Exact theta table of Z^n by n-fold convolution of the theta_3 coefficient
/// list (integer squared norms 0..max_norm2; exact in uint64).
ThetaSeries theta_zn(int n, int max_norm2);

/// Point-set equality within `radius` (mutual membership under the inverse
/// basis, integrality tolerance `tol`).
bool same_point_set(const Lattice& A, const Lattice& B, double radius,
                    double tol = 1e-9);

/// Resolve the data directory: explicit argument, then $GABORLAT_DATA,
/// then the compiled-in default.
std::string default_data_dir(const std::string& explicit_dir = "");

} // namespace gaborlat

#endif // GABORLAT_LATTICE_HPP
