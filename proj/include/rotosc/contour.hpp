#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "rotosc/pseudospectra.hpp"

namespace rotosc {

struct Segment {
  std::complex<double> a;
  std::complex<double> b;
};

/// Isoline of the log10 field at `level` by marching squares with linear
/// interpolation along cell edges. Singular (+inf) corners count as far above
/// the level; cells touching a failed (NaN) corner are skipped. Saddle cells
/// are resolved by the cell-centre average.
std::vector<Segment> marching_squares(const PseudospectrumField& field, double level);

/// SVG with one polyline group per eps (isoline at -log10 eps), real axis drawn.
void write_contour_svg(std::ostream& out, const PseudospectrumField& field, const std::vector<double>& eps_list);

}  // namespace rotosc
