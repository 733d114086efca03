#ifndef GABORLAT_LEECH_HPP
#define GABORLAT_LEECH_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace gaborlat {

/// All 4096 extended binary Golay (24,12,8) codewords as 24-bit masks,
/// generated from the cyclic (23,12) code and an overall parity bit. The
/// weight distribution (1, 759, 2576, 759, 1) is checked before returning.
std::vector<std::uint32_t> golay_codewords();

/// Integer basis (columns) of sqrt(8) * Leech built from the Golay code:
/// doubled codeword indicators, the mod-4 sublattice with coordinate sum
/// divisible by 8, and the odd-class representative (-3, 1, ..., 1).
/// Spanning set reduced to a 24 x 24 basis by HNF, then pairwise-shortened.
Eigen::Matrix<std::int64_t, 24, 24> leech_basis_scaled8();

/// Shell counts of the Leech lattice for squared norms <= max_norm2 (in the
/// covolume-1 normalization, so shells fall on even integers 0, 4, 6, ...),
/// by direct enumeration. Count-only Fincke-Pohst; no point storage.
std::vector<std::pair<double, std::uint64_t>> leech_shells_by_enumeration(
    double max_norm2);

/// Re-derive the small shells and compare them with the shipped table.
struct LeechRederivation {
    std::vector<std::pair<double, std::uint64_t>> derived;
    std::vector<std::pair<double, std::uint64_t>> table_head;
    bool matches = false;
};
LeechRederivation leech_rederive(double max_norm2 = 6.0,
                                 const std::string& data_dir = "");

} // namespace gaborlat

#endif // GABORLAT_LEECH_HPP
