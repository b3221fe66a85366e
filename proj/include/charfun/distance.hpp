// distance.hpp -- exact Euclidean distance transform of binary indicators.
#pragma once

#include "charfun/grid.hpp"
#include "charfun/parallel.hpp"

namespace charfun {

// Per-cell exact Euclidean distances (box units) to the opposite indicator
// phase, in two flavors:
//   values           -- center-to-center distance to the nearest opposite
//                       cell (the brute-force definition);
//   interface_values -- distance from the cell center to the opposite cell
//                       REGION (union of squares), i.e. to the shared-face
//                       staircase that is the discrete boundary. This is the
//                       surrogate for dist(x, dE): the staircase jitters
//                       around the underlying curve with mean ~0 under
//                       majority rasterization.
struct DistanceMap {
    GridSpec spec;
    std::vector<double> values;
    std::vector<double> interface_values;
};

// Two-pass transform: per-axis nearest-site scan, then lower envelopes of
// parabolas on squared distances (one-sided envelopes with half-cell-shifted
// vertices for the region distance). Exact in quarter-integer cell units.
// Throws ConfigError("no boundary") on constant indicators.
DistanceMap distance_transform(const ScalarField& indicator, Exec exec = Exec::parallel);

} // namespace charfun
