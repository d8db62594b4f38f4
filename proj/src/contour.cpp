#include "rotosc/contour.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>

#include "rotosc/io.hpp"

namespace rotosc {

namespace {

// Where the isoline crosses the edge p -> q.
std::complex<double> crossing(std::complex<double> p, std::complex<double> q, double vp, double vq, double level) {
  const double s = (level - vp) / (vq - vp);
  return p + std::clamp(s, 0.0, 1.0) * (q - p);
}

}  // namespace

std::vector<Segment> marching_squares(const PseudospectrumField& field, double level) {
  const GridSpec& g = field.grid;
  const double cap = level + 16.0;
  auto value = [&](int ix, int iy) {
    const double v = field.value(ix, iy);
    return std::isinf(v) && v > 0 ? cap : v;
  };

  std::vector<Segment> segments;
  for (int iy = 0; iy + 1 < g.ny; ++iy) {
    for (int ix = 0; ix + 1 < g.nx; ++ix) {
      // corners counter-clockwise from the lower left
      const std::array<std::complex<double>, 4> p = {g.point(ix, iy), g.point(ix + 1, iy), g.point(ix + 1, iy + 1),
                                                      g.point(ix, iy + 1)};
      const std::array<double, 4> v = {value(ix, iy), value(ix + 1, iy), value(ix + 1, iy + 1), value(ix, iy + 1)};
      if (std::isnan(v[0]) || std::isnan(v[1]) || std::isnan(v[2]) || std::isnan(v[3])) continue;

      int mask = 0;
      for (int k = 0; k < 4; ++k) mask |= (v[k] >= level ? 1 : 0) << k;
      if (mask == 0 || mask == 15) continue;

      auto edge = [&](int e) { return crossing(p[e], p[(e + 1) % 4], v[e], v[(e + 1) % 4], level); };
      // Edge e joins corner e to corner e+1.
      switch (mask) {
        case 1: case 14: segments.push_back({edge(3), edge(0)}); break;
        case 2: case 13: segments.push_back({edge(0), edge(1)}); break;
        case 3: case 12: segments.push_back({edge(3), edge(1)}); break;
        case 4: case 11: segments.push_back({edge(1), edge(2)}); break;
        case 6: case 9: segments.push_back({edge(0), edge(2)}); break;
        case 7: case 8: segments.push_back({edge(2), edge(3)}); break;
        case 5: case 10: {
          const bool centre_high = (v[0] + v[1] + v[2] + v[3]) / 4 >= level;
          // mask 5: corners 0 and 2 high
          if ((mask == 5) == centre_high) {
            segments.push_back({edge(0), edge(1)});
            segments.push_back({edge(2), edge(3)});
          } else {
            segments.push_back({edge(3), edge(0)});
            segments.push_back({edge(1), edge(2)});
          }
          break;
        }
        default: break;
      }
    }
  }
  return segments;
}

void write_contour_svg(std::ostream& out, const PseudospectrumField& field, const std::vector<double>& eps_list) {
  const GridSpec& g = field.grid;
  constexpr double kWidth = 640.0;
  const double height = kWidth * (g.im_max - g.im_min) / (g.re_max - g.re_min);
  auto sx = [&](double re) { return kWidth * (re - g.re_min) / (g.re_max - g.re_min); };
  auto sy = [&](double im) { return height * (g.im_max - im) / (g.im_max - g.im_min); };
  static const char* kColours[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02"};

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_number(kWidth) << "\" height=\""
      << format_number(height) << "\" viewBox=\"0 0 " << format_number(kWidth) << ' ' << format_number(height)
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (g.im_min < 0.0 && g.im_max > 0.0) {
    out << "<line x1=\"0\" y1=\"" << format_number(sy(0.0)) << "\" x2=\"" << format_number(kWidth) << "\" y2=\""
        << format_number(sy(0.0)) << "\" stroke=\"#999\" stroke-width=\"0.5\"/>\n";
  }
  for (std::size_t k = 0; k < eps_list.size(); ++k) {
    const double level = -std::log10(eps_list[k]);
    out << "<g stroke=\"" << kColours[k % 6] << "\" stroke-width=\"1\" fill=\"none\"><title>eps = "
        << format_number(eps_list[k]) << "</title>\n";
    for (const auto& s : marching_squares(field, level)) {
      out << "<line x1=\"" << format_number(sx(s.a.real())) << "\" y1=\"" << format_number(sy(s.a.imag()))
          << "\" x2=\"" << format_number(sx(s.b.real())) << "\" y2=\"" << format_number(sy(s.b.imag())) << "\"/>\n";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
}

}  // namespace rotosc
