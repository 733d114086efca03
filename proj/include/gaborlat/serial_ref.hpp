#ifndef GABORLAT_SERIAL_REF_HPP
#define GABORLAT_SERIAL_REF_HPP

#include "gaborlat/gabor.hpp"
#include "gaborlat/ofdm.hpp"
#include "gaborlat/theta.hpp"

namespace gaborlat::serial {

/// Plain-loop counterparts of the OpenMP kernels. They are kept as reference
/// implementations: the tests require agreement with the parallel versions,
/// and the benchmark tool reports the speedup against them.

GramMatrix gram_matrix(const Lattice& L, double radius,
                       std::size_t cap = kEnumPointCap);

ExtremumResult find_extremum(const Lattice& L, const GaussWidth& w,
                             ExtremumKind kind, ThetaForm which, int grid_n,
                             const TruncationPolicy& p);

InterferenceReport interference_report(const OFDMConfig& cfg,
                                       const ChannelModel& ch);

} // namespace gaborlat::serial

#endif // GABORLAT_SERIAL_REF_HPP
