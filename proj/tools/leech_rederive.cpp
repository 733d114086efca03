// Independent re-derivation of the small Leech theta shells.
//
// Builds the lattice from the (23,12) cyclic Golay code, enumerates all
// vectors of squared norm <= 6 (covolume-1 normalization), and compares the
// shell counts with the shipped theta table. Exit 0 iff they match.

#include <cstdlib>
#include <iostream>

#include "gaborlat/errors.hpp"
#include "gaborlat/leech.hpp"

int main(int argc, char** argv) {
    double max_norm2 = 6.0;
    if (argc > 1) max_norm2 = std::atof(argv[1]);
    try {
        const auto r = gaborlat::leech_rederive(max_norm2);
        std::cout << "norm2,count_derived,count_table\n";
        const std::size_t n = std::max(r.derived.size(), r.table_head.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (i < r.derived.size()) {
                std::cout << r.derived[i].first << "," << r.derived[i].second << ",";
            } else {
                std::cout << ",,";
            }
            if (i < r.table_head.size()) std::cout << r.table_head[i].second;
            std::cout << "\n";
        }
        std::cout << (r.matches ? "MATCH" : "MISMATCH") << "\n";
        return r.matches ? 0 : 2;
    } catch (const gaborlat::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
