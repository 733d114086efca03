#include "gaborlat/leech.hpp"

#include "gaborlat/errors.hpp"
#include "gaborlat/lattice.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gaborlat {

namespace {

/// Generator polynomial of the cyclic (23, 12) binary Golay code:
/// x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1.
constexpr std::uint32_t kGolayPoly = 0xC75;

} // namespace

std::vector<std::uint32_t> golay_codewords() {
    // Twelve cyclic-code generators x^k g(x), k = 0..11, extended by an
    // overall parity bit in position 23.
    std::array<std::uint32_t, 12> gen{};
    for (int k = 0; k < 12; ++k) {
        std::uint32_t row = kGolayPoly << k;
        if (std::popcount(row) % 2 != 0) row |= 1u << 23;
        gen[static_cast<std::size_t>(k)] = row;
    }
    std::vector<std::uint32_t> words(4096, 0u);
    for (std::uint32_t m = 0; m < 4096; ++m) {
        std::uint32_t w = 0;
        for (int k = 0; k < 12; ++k) {
            if (m & (1u << k)) w ^= gen[static_cast<std::size_t>(k)];
        }
        words[m] = w;
    }
    // Weight distribution self-check: 1, 759, 2576, 759, 1.
    std::array<int, 25> dist{};
    for (std::uint32_t w : words) dist[static_cast<std::size_t>(std::popcount(w))]++;
    if (dist[0] != 1 || dist[8] != 759 || dist[12] != 2576 || dist[16] != 759 ||
        dist[24] != 1) {
        throw NumericError("golay_codewords: weight distribution check failed");
    }
    return words;
}

namespace {

using Mat64 = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Row-echelon form over Z by repeated division steps; returns the first
/// `cols` rows (a triangular basis of the row span).
Mat64 hnf_basis(Mat64 M) {
    const int rows = static_cast<int>(M.rows());
    const int cols = static_cast<int>(M.cols());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        for (;;) {
            int piv = -1;
            std::int64_t best = 0;
            for (int i = r; i < rows; ++i) {
                const std::int64_t v = std::llabs(M(i, c));
                if (v != 0 && (piv < 0 || v < best)) {
                    piv = i;
                    best = v;
                }
            }
            if (piv < 0) break;
            M.row(r).swap(M.row(piv));
            bool clean = true;
            for (int i = r + 1; i < rows; ++i) {
                if (M(i, c) == 0) continue;
                const std::int64_t q = M(i, c) / M(r, c);
                M.row(i) -= q * M.row(r);
                if (M(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (M(r, c) != 0) {
            if (M(r, c) < 0) M.row(r) = -M.row(r);
            ++r;
        }
    }
    if (r != cols) throw NumericError("hnf_basis: spanning set is rank-deficient");
    return M.topRows(cols);
}

/// Greedy pairwise shortening (Lagrange-style size reduction); enough to make
/// plain Fincke-Pohst enumeration fast on this lattice.
void pairwise_reduce(Mat64& B) {
    const int n = static_cast<int>(B.rows());
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                const std::int64_t bij = B.row(i).dot(B.row(j));
                const std::int64_t bjj = B.row(j).dot(B.row(j));
                const std::int64_t t =
                    std::llround(static_cast<double>(bij) / static_cast<double>(bjj));
                if (t == 0) continue;
                const Eigen::Matrix<std::int64_t, 1, Eigen::Dynamic> cand =
                    B.row(i) - t * B.row(j);
                if (cand.dot(cand) < B.row(i).dot(B.row(i))) {
                    B.row(i) = cand;
                    changed = true;
                }
            }
        }
    }
    // Sort by norm so the Cholesky factor is well graded for enumeration.
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return B.row(a).dot(B.row(a)) < B.row(b).dot(B.row(b));
    });
    Mat64 S(n, B.cols());
    for (int i = 0; i < n; ++i) S.row(i) = B.row(order[static_cast<std::size_t>(i)]);
    B = S;
}

} // namespace

Eigen::Matrix<std::int64_t, 24, 24> leech_basis_scaled8() {
    const auto words = golay_codewords();

    // Spanning set of sqrt(8) * Leech (rows): doubled Golay indicators for the
    // 12 cyclic generators, differences 4(e_i - e_{i+1}), the vector 8 e_1
    // (these generate {4z : sum z even}), and the odd-class representative.
    Mat64 span(12 + 23 + 1 + 1, 24);
    span.setZero();
    int row = 0;
    for (int k = 0; k < 12; ++k) {
        const std::uint32_t w = words[1u << k];
        for (int c = 0; c < 24; ++c) span(row, c) = (w >> c) & 1u ? 2 : 0;
        ++row;
    }
    for (int i = 0; i < 23; ++i) {
        span(row, i) = 4;
        span(row, i + 1) = -4;
        ++row;
    }
    span(row, 0) = 8;
    ++row;
    span(row, 0) = -3;
    for (int c = 1; c < 24; ++c) span(row, c) = 1;

    Mat64 B = hnf_basis(span);
    pairwise_reduce(B);

    // Sanity: even lattice of determinant 8^12 with all norms >= 32.
    const Mat64 G = B * B.transpose();
    for (int i = 0; i < 24; ++i) {
        if (G(i, i) % 2 != 0 || G(i, i) < 32) {
            throw NumericError("leech_basis_scaled8: basis fails the even/min check");
        }
    }
    const double logdet =
        Eigen::FullPivLU<Eigen::MatrixXd>(B.cast<double>()).matrixLU()
            .diagonal().array().abs().log().sum();
    if (std::abs(logdet - 12.0 * std::log(8.0)) > 1e-6) {
        throw NumericError("leech_basis_scaled8: determinant is not 8^12");
    }

    Eigen::Matrix<std::int64_t, 24, 24> out;
    for (int i = 0; i < 24; ++i) {
        for (int j = 0; j < 24; ++j) out(j, i) = B(i, j); // rows -> columns
    }
    return out;
}

namespace {

/// Count-only Fincke-Pohst on the upper Cholesky factor R: accumulate shell
/// counts of |R u|^2 <= c2 into `shells` (indexed by the rounded norm).
void count_recurse(const Eigen::MatrixXd& R, int level, double remaining,
                   double spent, std::vector<std::int64_t>& u,
                   std::vector<std::uint64_t>& shells) {
    const int n = static_cast<int>(R.rows());
    const double rii = R(level, level);
    // Offset induced by the already-fixed coordinates u_{level+1..n-1}.
    double off = 0.0;
    for (int j = level + 1; j < n; ++j) off += R(level, j) * static_cast<double>(u[static_cast<std::size_t>(j)]);
    const double c = -off / rii;
    const double half = std::sqrt(std::max(remaining, 0.0)) / std::abs(rii);
    const auto lo = static_cast<std::int64_t>(std::ceil(c - half - 1e-12));
    const auto hi = static_cast<std::int64_t>(std::floor(c + half + 1e-12));
    for (std::int64_t v = lo; v <= hi; ++v) {
        const double term = rii * (static_cast<double>(v) - c);
        const double t2 = term * term;
        if (t2 > remaining + 1e-9) continue;
        u[static_cast<std::size_t>(level)] = v;
        if (level == 0) {
            const auto norm2 = static_cast<std::size_t>(std::llround(spent + t2));
            if (norm2 < shells.size()) shells[norm2] += 1;
        } else {
            count_recurse(R, level - 1, remaining - t2, spent + t2, u, shells);
        }
    }
    u[static_cast<std::size_t>(level)] = 0;
}

} // namespace

std::vector<std::pair<double, std::uint64_t>> leech_shells_by_enumeration(
    double max_norm2) {
    if (!(max_norm2 >= 0.0 && max_norm2 <= 8.0)) {
        throw DomainError("leech_shells_by_enumeration: max_norm2 must be in [0, 8]");
    }
    const Eigen::Matrix<std::int64_t, 24, 24> Bi = leech_basis_scaled8();
    const Eigen::MatrixXd B = Bi.cast<double>();
    const Eigen::MatrixXd G = B.transpose() * B;
    const Eigen::MatrixXd R = Eigen::LLT<Eigen::MatrixXd>(G).matrixU();
    // Integer-lattice squared-norm budget, padded by 0.5: the lattice is even
    // so no shell lies strictly between 8*max_norm2 and the next even integer,
    // and the padding keeps exact-boundary shells from being lost to rounding.
    const double c2 = 8.0 * max_norm2 + 0.5;
    const int n = 24;

    // Top-two-level task split for OpenMP; the recursion below handles the
    // remaining 22 levels.
    struct Task {
        std::int64_t u23, u22;
        double remaining, spent;
    };
    std::vector<Task> tasks;
    {
        const double r33 = R(n - 1, n - 1);
        const auto lim = static_cast<std::int64_t>(std::floor(std::sqrt(c2) / r33 + 1e-12));
        for (std::int64_t a = -lim; a <= lim; ++a) {
            const double t2a = r33 * r33 * static_cast<double>(a) * static_cast<double>(a);
            if (t2a > c2 + 1e-9) continue;
            const double rem = c2 - t2a;
            const double rii = R(n - 2, n - 2);
            const double c = -R(n - 2, n - 1) * static_cast<double>(a) / rii;
            const double half = std::sqrt(rem) / rii;
            const auto lo = static_cast<std::int64_t>(std::ceil(c - half - 1e-12));
            const auto hi = static_cast<std::int64_t>(std::floor(c + half + 1e-12));
            for (std::int64_t b = lo; b <= hi; ++b) {
                const double term = rii * (static_cast<double>(b) - c);
                const double t2b = term * term;
                if (t2b > rem + 1e-9) continue;
                tasks.push_back(Task{a, b, rem - t2b, t2a + t2b});
            }
        }
    }

    const auto cap = static_cast<std::size_t>(std::llround(c2)) + 1;
    std::vector<std::uint64_t> shells(cap, 0);
#ifdef _OPENMP
#pragma omp parallel
#endif
    {
        std::vector<std::uint64_t> local(cap, 0);
        std::vector<std::int64_t> u(static_cast<std::size_t>(n), 0);
#ifdef _OPENMP
#pragma omp for schedule(dynamic)
#endif
        for (int t = 0; t < static_cast<int>(tasks.size()); ++t) {
            const Task& tk = tasks[static_cast<std::size_t>(t)];
            u[static_cast<std::size_t>(n - 1)] = tk.u23;
            u[static_cast<std::size_t>(n - 2)] = tk.u22;
            count_recurse(R, n - 3, tk.remaining, tk.spent, u, local);
        }
#ifdef _OPENMP
#pragma omp critical
#endif
        {
            for (std::size_t i = 0; i < cap; ++i) shells[i] += local[i];
        }
    }

    std::vector<std::pair<double, std::uint64_t>> out;
    for (std::size_t i = 0; i < cap; ++i) {
        if (shells[i] != 0) out.emplace_back(static_cast<double>(i) / 8.0, shells[i]);
    }
    return out;
}

LeechRederivation leech_rederive(double max_norm2, const std::string& data_dir) {
    LeechRederivation r;
    r.derived = leech_shells_by_enumeration(max_norm2);
    const auto table = std::get<ThetaSeries>(named_lattice("Leech", 1.0, data_dir));
    for (const auto& e : table.entries) {
        if (e.first <= max_norm2 + 1e-9) r.table_head.push_back(e);
    }
    r.matches = r.derived.size() == r.table_head.size();
    if (r.matches) {
        for (std::size_t i = 0; i < r.derived.size(); ++i) {
            if (std::abs(r.derived[i].first - r.table_head[i].first) > 1e-9 ||
                r.derived[i].second != r.table_head[i].second) {
                r.matches = false;
                break;
            }
        }
    }
    return r;
}

} // namespace gaborlat
