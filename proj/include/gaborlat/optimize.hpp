#ifndef GABORLAT_OPTIMIZE_HPP
#define GABORLAT_OPTIMIZE_HPP

#include <string>
#include <vector>

#include "gaborlat/gabor.hpp"
#include "gaborlat/lattice.hpp"

namespace gaborlat {

/// The three quantum objectives over lattices of fixed density.
enum class ObjectiveKind { QuantumPacking, QuantumCovering, QuantumPaving };

/// Bound backend used by the scan.
enum class BoundBackend { Janssen, Relaxed };

struct Objective {
    ObjectiveKind kind = ObjectiveKind::QuantumPaving;
    BoundBackend bound_method = BoundBackend::Janssen;
};

/// One evaluated shape sample.
struct ShapeSample {
    ShapeParam2D shape;
    double A = 0.0;
    double B = 0.0;
    double ratio = 1.0;
    bool flagged = false; ///< not-a-frame or failed evaluation; excluded from argopt
};

struct Landscape {
    std::vector<ShapeSample> samples;
    ShapeParam2D argopt;
    double opt_value = 0.0;
};

/**
 * @brief Evaluate the objective over a grid on the modular fundamental domain
 * (x in [0, 1/2] by reflection symmetry; y capped at 2.0) and refine the best
 * cell by Nelder-Mead.
 *
 * One FrameBounds computation per sample serves all three objectives.
 * Ties break toward smaller y, then smaller x.
 */
Landscape scan_shapes(double density, const Objective& obj, int grid,
                      bool refine);

/// Comparison row for the high-dimensional tables.
struct NamedRow {
    std::string name;
    double energy_lower = 0.0;
    double btilde = 0.0;
};

/**
 * @brief Energy lower bound and the Condition-A upper bound B-tilde for named
 * lattices at equal density, sorted ascending by B-tilde.
 *
 * dim 8 works from explicit generators by enumeration; dim 24 uses exact
 * theta tables (Z^24 by convolution, Leech from the shipped table) and the
 * self-duality of both lattices for the adjoint sums.
 */
std::vector<NamedRow> compare_named(int dim, const std::vector<std::string>& names,
                                    const GaussWidth& w, double density,
                                    const std::string& data_dir = "");

/// Bounds of one shape across several densities (entries <= 1 are skipped
/// with a flagged placeholder).
struct SweepEntry {
    double density = 0.0;
    FrameBounds bounds;
    bool rejected = false;
};
std::vector<SweepEntry> density_sweep(const ShapeParam2D& shape,
                                      const std::vector<double>& densities,
                                      const Objective& obj);

} // namespace gaborlat

#endif // GABORLAT_OPTIMIZE_HPP
