#include "gaborlat/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gaborlat {

namespace {

constexpr double kYMax = 2.0; ///< documented cap on the (unbounded) domain

FrameBounds bounds_for_shape(const ShapeParam2D& s, const Objective& obj) {
    const Lattice L = shape_to_lattice(s);
    if (obj.bound_method == BoundBackend::Janssen) {
        return janssen_frame_bounds(L, TruncationPolicy{}, 32);
    }
    return relaxed_bounds(L, GaussWidth{1.0}, 32);
}

double objective_value(const Objective& obj, const FrameBounds& fb) {
    switch (obj.kind) {
        case ObjectiveKind::QuantumPacking: return fb.B;
        case ObjectiveKind::QuantumCovering: return -fb.A; // maximize A
        case ObjectiveKind::QuantumPaving: return fb.ratio;
    }
    return fb.ratio;
}

} // namespace

Landscape scan_shapes(double density, const Objective& obj, int grid, bool refine) {
    if (!(density > 1.0)) throw NotAFrameError("scan_shapes: density must exceed 1");
    if (grid < 16) throw DomainError("scan_shapes: grid must be >= 16");

    Landscape out;
    out.samples.resize(static_cast<std::size_t>(grid) * grid);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < grid; ++i) {
        const double x = 0.5 * i / (grid - 1);
        const double ymin = std::sqrt(std::max(1.0 - x * x, 0.0));
        for (int j = 0; j < grid; ++j) {
            const double y = ymin + (kYMax - ymin) * j / (grid - 1);
            ShapeSample s;
            s.shape = ShapeParam2D{x, y, density};
            try {
                const FrameBounds fb = bounds_for_shape(s.shape, obj);
                s.A = fb.A;
                s.B = fb.B;
                s.ratio = fb.ratio;
            } catch (const Error&) {
                s.flagged = true; // excluded from argopt (warned by the CLI)
            }
            out.samples[static_cast<std::size_t>(i) * grid + j] = s;
        }
    }

    // Grid argopt with the documented tie-break: smaller y, then smaller x.
    double best = std::numeric_limits<double>::infinity();
    const ShapeSample* best_s = nullptr;
    for (const auto& s : out.samples) {
        if (s.flagged) continue;
        const FrameBounds fb{s.A, s.B, s.ratio, BoundMethod::JanssenExact, 0.0, false};
        const double v = objective_value(obj, fb);
        const bool better =
            v < best - 1e-15 ||
            (std::abs(v - best) <= 1e-15 && best_s &&
             (s.shape.y < best_s->shape.y - 1e-15 ||
              (std::abs(s.shape.y - best_s->shape.y) <= 1e-15 &&
               s.shape.x < best_s->shape.x)));
        if (!best_s || better) {
            best = v;
            best_s = &s;
        }
    }
    if (!best_s) throw NumericError("scan_shapes: all samples flagged");
    out.argopt = best_s->shape;
    out.opt_value = best;

    if (refine) {
        const auto f = [&](const Eigen::VectorXd& v) -> double {
            const double x = v(0), y = v(1);
            if (x < -0.5 - 1e-9 || x > 0.5 + 1e-9) return 1e9;
            if (y < std::sqrt(std::max(1.0 - x * x, 0.0)) - 1e-9 || y > kYMax + 1e-9) {
                return 1e9;
            }
            try {
                return objective_value(obj, bounds_for_shape({x, y, density}, obj));
            } catch (const Error&) {
                return 1e9;
            }
        };
        Eigen::Vector2d start(out.argopt.x, out.argopt.y);
        double fref = 0.0;
        const double step = 0.5 / grid;
        const Eigen::VectorXd zr = nelder_mead(f, start, step, 200, 1e-10, &fref);
        if (fref <= out.opt_value + 1e-13) { // refinement never worsens
            out.argopt = ShapeParam2D{zr(0), zr(1), density};
            out.opt_value = std::min(fref, out.opt_value);
        }
    }
    return out;
}

std::vector<NamedRow> compare_named(int dim, const std::vector<std::string>& names,
                                    const GaussWidth& w, double density,
                                    const std::string& data_dir) {
    std::vector<NamedRow> rows;
    const TruncationPolicy p{};
    for (const auto& name : names) {
        NamedRow row;
        row.name = name;
        const NamedLattice nl = named_lattice(name, density, data_dir);
        if (std::holds_alternative<Lattice>(nl)) {
            const Lattice& L = std::get<Lattice>(nl);
            if (L.dim() != dim) throw CatalogError("dimension mismatch for " + name);
            if (dim <= 8) {
                row.energy_lower = theta_translate(L, Eigen::VectorXd::Zero(dim), w, p);
                const Lattice adj = adjoint_lattice(L);
                row.btilde =
                    theta_translate(adj, Eigen::VectorXd::Zero(dim), GaussWidth{w.alpha * 0.5}, p) /
                    L.covolume();
            } else {
                // dim 24 explicit lattices are handled by theta tables
                // (self-dual Z^24): enumeration at these radii is infeasible.
                if (name != "Z^24") throw CatalogError("no theta table for " + name);
                const double c2 = std::pow(1.0 / density, 2.0 / 24.0);
                const ThetaSeries base = theta_zn(24, 40);
                const ThetaSeries table = base.scaled(c2, 1.0 / density);
                const ThetaSeries adj_table = base.scaled(1.0 / c2, density);
                row.energy_lower = theta_series_sum(table, w, 1.0);
                row.btilde = theta_series_sum(adj_table, w, 0.5) * density;
            }
        } else {
            // Leech: self-dual, theta-table only.
            const ThetaSeries& table = std::get<ThetaSeries>(nl);
            const double c2 = std::pow(1.0 / density, 2.0 / 24.0);
            const ThetaSeries adj_table = table.scaled(1.0 / (c2 * c2), density / (1.0 / density));
            row.energy_lower = theta_series_sum(table, w, 1.0);
            row.btilde = theta_series_sum(adj_table, w, 0.5) * density;
        }
        rows.push_back(row);
    }
    std::sort(rows.begin(), rows.end(),
              [](const NamedRow& a, const NamedRow& b) { return a.btilde < b.btilde; });
    return rows;
}

std::vector<SweepEntry> density_sweep(const ShapeParam2D& shape,
                                      const std::vector<double>& densities,
                                      const Objective& obj) {
    std::vector<SweepEntry> out;
    for (double d : densities) {
        SweepEntry e;
        e.density = d;
        if (!(d > 1.0)) {
            e.rejected = true;
        } else {
            ShapeParam2D s = shape;
            s.density = d;
            try {
                e.bounds = bounds_for_shape(s, obj);
            } catch (const Error&) {
                e.rejected = true;
            }
        }
        out.push_back(e);
    }
    return out;
}

} // namespace gaborlat
