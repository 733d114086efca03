#include "gaborlat/lattice.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>

#include "gaborlat/io.hpp"

namespace gaborlat {

Lattice::Lattice(Eigen::MatrixXd basis_matrix, std::string name)
    : basis_(std::move(basis_matrix)), name_(std::move(name)) {
    if (basis_.rows() != basis_.cols() || basis_.rows() < 2 || basis_.rows() % 2 != 0) {
        throw InvalidLatticeError("lattice basis must be square of even dimension >= 2");
    }
    if (!basis_.allFinite()) {
        throw InvalidLatticeError("lattice basis contains non-finite entries");
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(basis_);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(basis_.rows() - 1);
    if (!(smin > 1e-12 * smax)) {
        throw InvalidLatticeError("lattice basis is singular (relative tolerance 1e-12)");
    }
    covolume_ = std::abs(basis_.determinant());
}

Lattice Lattice::scaled_to_density(double target) const {
    if (!(target > 0.0)) throw InvalidLatticeError("density must be positive");
    const double c = std::pow(1.0 / (target * covolume_), 1.0 / dim());
    return Lattice(c * basis_, name_);
}

void ThetaSeries::validate() const {
    if (entries.empty() || entries.front().first != 0.0 || entries.front().second != 1) {
        throw ParseError("theta series must start with entry (0, 1)");
    }
    for (std::size_t i = 1; i < entries.size(); ++i) {
        if (!(entries[i].first > entries[i - 1].first)) {
            throw ParseError("theta series squared norms must be strictly increasing");
        }
        if (entries[i].second == 0 || entries[i].second % 2 != 0) {
            throw ParseError("theta series counts of nonzero shells must be positive and even");
        }
    }
    if (!(covolume_of_table > 0.0)) throw ParseError("theta series covolume must be positive");
}

ThetaSeries ThetaSeries::scaled(double norm2_factor, double covolume_factor) const {
    ThetaSeries out = *this;
    for (auto& e : out.entries) e.first *= norm2_factor;
    out.covolume_of_table *= covolume_factor;
    return out;
}

Eigen::MatrixXd symplectic_J(int dim) {
    if (dim % 2 != 0) throw DimensionError("symplectic matrix needs even dimension");
    const int d = dim / 2;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(dim, dim);
    J.topRightCorner(d, d) = Eigen::MatrixXd::Identity(d, d);
    J.bottomLeftCorner(d, d) = -Eigen::MatrixXd::Identity(d, d);
    return J;
}

double symplectic_form(const Eigen::VectorXd& z, const Eigen::VectorXd& zp) {
    const int dim = static_cast<int>(z.size());
    if (zp.size() != dim || dim % 2 != 0) {
        throw DimensionError("symplectic form needs two vectors of equal even dimension");
    }
    const int d = dim / 2;
    // sigma(z, z') = x . omega' - omega . x' with z = (x, omega).
    return z.head(d).dot(zp.tail(d)) - z.tail(d).dot(zp.head(d));
}

Lattice dual_lattice(const Lattice& L) {
    return Lattice(L.basis().inverse().transpose(), L.name().empty() ? "" : L.name() + "*");
}

Lattice adjoint_lattice(const Lattice& L) {
    return Lattice(symplectic_J(L.dim()) * L.basis().inverse().transpose(),
                   L.name().empty() ? "" : L.name() + "^adj");
}

bool is_symplectic(const Eigen::MatrixXd& B, double tol) {
    if (B.rows() != B.cols() || B.rows() % 2 != 0) {
        throw DimensionError("is_symplectic needs a square matrix of even size");
    }
    const Eigen::MatrixXd J = symplectic_J(static_cast<int>(B.rows()));
    return (B.transpose() * J * B - J).cwiseAbs().maxCoeff() <= tol;
}

namespace {

/// Fincke-Pohst recursion over the upper-triangular factor R (basis Gram
/// G = R^T R): enumerates all integer u with |R u|^2 <= radius^2.
void fp_recurse(const Eigen::MatrixXd& R, double radius2, int level,
                Eigen::VectorXi& u, Eigen::VectorXd& partial, double used,
                std::size_t cap, std::vector<Eigen::VectorXi>& out) {
    const int n = static_cast<int>(R.rows());
    // Center and half-width of the admissible interval for u[level].
    double center = 0.0;
    for (int j = level + 1; j < n; ++j) center += R(level, j) * u(j);
    const double diag = R(level, level);
    const double room = radius2 - used;
    if (room < 0.0) return;
    const double half = std::sqrt(room) / diag;
    const int lo = static_cast<int>(std::ceil(-center / diag - half - 1e-12));
    const int hi = static_cast<int>(std::floor(-center / diag + half + 1e-12));
    for (int k = lo; k <= hi; ++k) {
        const double coord = diag * k + center;
        const double used2 = used + coord * coord;
        if (used2 > radius2 + 1e-12) continue;
        u(level) = k;
        if (level == 0) {
            if (out.size() >= cap) {
                throw ResourceCapError("enumerate_points: point cap " +
                                       std::to_string(cap) + " exceeded");
            }
            out.push_back(u);
        } else {
            fp_recurse(R, radius2, level - 1, u, partial, used2, cap, out);
        }
    }
    u(level) = 0;
}

bool lex_less(const Eigen::VectorXi& a, const Eigen::VectorXi& b) {
    for (int i = 0; i < a.size(); ++i) {
        if (a(i) != b(i)) return a(i) < b(i);
    }
    return false;
}

} // namespace

std::vector<Eigen::VectorXi> enumerate_coords(const Lattice& L, double radius,
                                              std::size_t cap) {
    if (!(radius > 0.0)) throw DomainError("enumeration radius must be positive");
    const Eigen::MatrixXd G = L.basis().transpose() * L.basis();
    Eigen::LLT<Eigen::MatrixXd> llt(G);
    if (llt.info() != Eigen::Success) {
        throw InvalidLatticeError("Cholesky of basis Gram failed");
    }
    const Eigen::MatrixXd R = llt.matrixU();
    std::vector<Eigen::VectorXi> out;
    Eigen::VectorXi u = Eigen::VectorXi::Zero(L.dim());
    Eigen::VectorXd partial = Eigen::VectorXd::Zero(L.dim());
    fp_recurse(R, radius * radius * (1.0 + 1e-14), L.dim() - 1, u, partial, 0.0,
               cap, out);
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

std::vector<Eigen::VectorXd> enumerate_points(const Lattice& L, double radius,
                                              std::size_t cap) {
    const auto coords = enumerate_coords(L, radius, cap);
    std::vector<Eigen::VectorXd> pts;
    pts.reserve(coords.size());
    for (const auto& u : coords) pts.push_back(L.basis() * u.cast<double>());
    return pts;
}

double minimal_norm(const Lattice& L) {
    double r = 1.2 * std::pow(L.covolume(), 1.0 / L.dim());
    for (int attempt = 0; attempt < 60; ++attempt) {
        const auto pts = enumerate_points(L, r);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : pts) {
            const double n = p.norm();
            if (n > 1e-12 && n < best) best = n;
        }
        if (std::isfinite(best)) return best;
        r *= 1.4;
    }
    throw NumericError("minimal_norm: no nonzero vector found (degenerate basis?)");
}

DeepHoles2D deep_holes_2d(const Lattice& L) {
    if (L.dim() != 2) throw DimensionError("deep_holes_2d supports only 2-D lattices");
    // Candidate Voronoi-relevant vectors: everything within a generous radius.
    const double lmax = std::max(L.basis().col(0).norm(), L.basis().col(1).norm());
    const double r = 2.0 * std::max(lmax, minimal_norm(L)) + 1e-9;
    std::vector<Eigen::Vector2d> cand;
    for (const auto& p : enumerate_points(L, r)) {
        if (p.norm() > 1e-12) cand.push_back(p);
    }
    // Voronoi vertices are intersections of two bisectors c.v = |v|^2/2 that
    // lie inside every other half-plane.
    std::vector<Eigen::Vector2d> verts;
    for (std::size_t i = 0; i < cand.size(); ++i) {
        for (std::size_t j = i + 1; j < cand.size(); ++j) {
            Eigen::Matrix2d M;
            M.row(0) = cand[i].transpose();
            M.row(1) = cand[j].transpose();
            if (std::abs(M.determinant()) < 1e-12) continue;
            Eigen::Vector2d rhs(0.5 * cand[i].squaredNorm(), 0.5 * cand[j].squaredNorm());
            Eigen::Vector2d c = M.inverse() * rhs;
            bool inside = true;
            for (const auto& v : cand) {
                if (c.dot(v) > 0.5 * v.squaredNorm() + 1e-9) { inside = false; break; }
            }
            if (inside) verts.push_back(c);
        }
    }
    if (verts.empty()) throw NumericError("deep_holes_2d: no Voronoi vertices found");
    double mu = 0.0;
    for (const auto& v : verts) mu = std::max(mu, v.norm());
    // Keep vertices attaining the covering radius, reduce to the fundamental
    // cell (basis coordinates in [0,1)), and de-duplicate.
    const Eigen::Matrix2d Binv = L.basis().inverse();
    std::map<std::pair<long long, long long>, Eigen::Vector2d> uniq;
    for (const auto& v : verts) {
        if (v.norm() < mu - 1e-9) continue;
        Eigen::Vector2d a = Binv * v;
        a(0) -= std::floor(a(0) + 1e-12);
        a(1) -= std::floor(a(1) + 1e-12);
        const auto key = std::make_pair(std::llround(a(0) * 1e6), std::llround(a(1) * 1e6));
        uniq.emplace(key, Eigen::Vector2d(L.basis() * a));
    }
    DeepHoles2D out;
    out.covering_radius = mu;
    for (const auto& kv : uniq) out.holes.push_back(kv.second);
    return out;
}

Lattice shape_to_lattice(const ShapeParam2D& s) {
    if (!(s.y > 0.0)) throw DomainError("shape parameter y must be positive");
    if (!(s.density > 0.0)) throw DomainError("shape density must be positive");
    const double c = 1.0 / std::sqrt(s.y * s.density);
    Eigen::Matrix2d B;
    B << c, c * s.x,
         0.0, c * s.y;
    return Lattice(B);
}

namespace {

Eigen::MatrixXd hexagonal_basis() {
    // Covolume-1 hexagonal generator; minimal squared norm 2/sqrt(3).
    const double s = std::sqrt(2.0 / std::sqrt(3.0));
    Eigen::Matrix2d B;
    B << s, s / 2.0,
         0.0, s * std::sqrt(3.0) / 2.0;
    return B;
}

Eigen::MatrixXd dn_basis(int n) {
    // D_n = {x in Z^n : sum x_i even}; generators e1+e2, e1-e2, e2-e3, ...
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, n);
    B(0, 0) = 1.0; B(1, 0) = 1.0;
    B(0, 1) = 1.0; B(1, 1) = -1.0;
    for (int j = 2; j < n; ++j) {
        B(j - 1, j) = 1.0;
        B(j, j) = -1.0;
    }
    return B; // |det| = 2
}

Eigen::MatrixXd a8_star_basis() {
    // A8 in its own 8-D chart via the Cholesky factor of the Gram matrix
    // tridiag(-1, 2, -1); the dual basis is the inverse transpose.
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(8, 8);
    for (int i = 0; i < 8; ++i) {
        G(i, i) = 2.0;
        if (i + 1 < 8) { G(i, i + 1) = -1.0; G(i + 1, i) = -1.0; }
    }
    Eigen::LLT<Eigen::MatrixXd> llt(G);
    const Eigen::MatrixXd Ba8 = llt.matrixU(); // G = Ba8^T Ba8 with Ba8 upper
    return Eigen::MatrixXd(Ba8.inverse().transpose());
}

Eigen::MatrixXd e8_basis() {
    // Even-coordinate-system generators: 2e1, the sign-change chain, and the
    // all-halves glue vector; |det| = 1, 240 roots of norm sqrt(2).
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(8, 8);
    B(0, 0) = 2.0;
    for (int j = 1; j <= 6; ++j) {
        B(j - 1, j) = -1.0;
        B(j, j) = 1.0;
    }
    for (int i = 0; i < 8; ++i) B(i, 7) = 0.5;
    return B;
}

} // namespace

ThetaSeries theta_zn(int n, int max_norm2) {
    if (n < 1 || max_norm2 < 0) throw DomainError("theta_zn: bad arguments");
    const int N = max_norm2;
    std::vector<unsigned __int128> acc(N + 1, 0), one(N + 1, 0), next(N + 1, 0);
    one[0] = 1;
    for (int m = 1; m * m <= N; ++m) one[m * m] = 2;
    acc = one;
    for (int k = 1; k < n; ++k) {
        std::fill(next.begin(), next.end(), (unsigned __int128)0);
        for (int i = 0; i <= N; ++i) {
            if (acc[i] == 0) continue;
            next[i] += acc[i]; // m = 0 term
            for (int m = 1; m * m <= N - i; ++m) next[i + m * m] += acc[i] * 2;
        }
        acc.swap(next);
    }
    ThetaSeries t;
    t.lattice_name = "Z^" + std::to_string(n);
    t.covolume_of_table = 1.0;
    for (int i = 0; i <= N; ++i) {
        if (acc[i] == 0) continue;
        if (acc[i] > (unsigned __int128)UINT64_MAX) {
            throw NumericError("theta_zn: count overflows uint64 at norm2 " +
                               std::to_string(i));
        }
        t.entries.emplace_back(static_cast<double>(i), static_cast<std::uint64_t>(acc[i]));
    }
    t.validate();
    return t;
}

ThetaSeries theta_by_enumeration(const Lattice& L, double max_norm2, std::size_t cap) {
    const auto pts = enumerate_points(L, std::sqrt(max_norm2) + 1e-9, cap);
    std::map<long long, std::uint64_t> shells;
    std::map<long long, double> norms;
    for (const auto& p : pts) {
        const double n2 = p.squaredNorm();
        if (n2 > max_norm2 + 1e-9) continue;
        const long long key = std::llround(n2 * 1e9);
        ++shells[key];
        norms[key] = n2;
    }
    ThetaSeries t;
    t.lattice_name = L.name();
    t.covolume_of_table = L.covolume();
    for (const auto& kv : shells) {
        const double n2 = kv.first == 0 ? 0.0 : norms[kv.first];
        t.entries.emplace_back(n2, kv.second);
    }
    t.validate();
    return t;
}

NamedLattice named_lattice(const std::string& name, double density,
                           const std::string& data_dir) {
    if (!(density > 0.0)) throw CatalogError("density must be positive");
    if (name == "Leech") {
        ThetaSeries t = theta_from_csv(default_data_dir(data_dir) + "/leech_theta.csv");
        t.lattice_name = "Leech";
        // Kissing-number checksum for the unimodular table.
        if (t.entries.size() < 2 || t.entries[1].first != 4.0 ||
            t.entries[1].second != 196560ULL) {
            throw CatalogError("Leech theta table failed kissing-number validation");
        }
        // Unimodular table; dilation to the requested density scales norms.
        const double c2 = std::pow(1.0 / density, 2.0 / 24.0);
        return t.scaled(c2, 1.0 / density);
    }
    Eigen::MatrixXd B;
    if (name.rfind("Z^", 0) == 0) {
        const int n = std::stoi(name.substr(2));
        if (n < 2 || n % 2 != 0 || n > 24) throw CatalogError("unsupported Z^n: " + name);
        B = Eigen::MatrixXd::Identity(n, n);
    } else if (name == "hexagonal") {
        B = hexagonal_basis();
    } else if (name == "D4") {
        B = dn_basis(4);
    } else if (name == "D8") {
        B = dn_basis(8);
    } else if (name == "A8*") {
        B = a8_star_basis();
    } else if (name == "E8") {
        B = e8_basis();
    } else {
        throw CatalogError("unknown lattice name: " + name);
    }
    return Lattice(B, name).scaled_to_density(density);
}

bool same_point_set(const Lattice& A, const Lattice& B, double radius, double tol) {
    const auto check = [&](const Lattice& from, const Lattice& to) {
        const Eigen::MatrixXd inv = to.basis().inverse();
        for (const auto& p : enumerate_points(from, radius)) {
            const Eigen::VectorXd c = inv * p;
            for (int i = 0; i < c.size(); ++i) {
                if (std::abs(c(i) - std::round(c(i))) > tol) return false;
            }
        }
        return true;
    };
    return check(A, B) && check(B, A);
}

std::string default_data_dir(const std::string& explicit_dir) {
    if (!explicit_dir.empty()) return explicit_dir;
    if (const char* env = std::getenv("GABORLAT_DATA")) return env;
#ifdef GABORLAT_DATA_DIR
    return GABORLAT_DATA_DIR;
#else
    return "data";
#endif
}

} // namespace gaborlat
