#ifndef NAPPROX_IO_HPP
#define NAPPROX_IO_HPP

// Deterministic CSV and SVG emission for approximation sets and
// accumulation curves. All floating output is fixed at 12 significant
// digits so repeated runs are byte-identical.

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "napprox/orbits.hpp"

namespace napprox {

inline std::string format_g(double x, int sig = 12) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", sig, x);
  // canonicalize the negative zero
  if (std::string(buf) == "-0") return "0";
  return buf;
}

inline std::string rat_string(const Rat& r) { return r.get_str(); }

// ---- CSV ----

struct CsvContext {
  Rat min_abs_norm = 0;  // for the norm_level column; 0 disables it
  bool totally_real_cubic = false;
};

inline CsvContext csv_context(const ModuleLattice& lat, long height_cap = 8) {
  CsvContext ctx;
  DualBasis dual = dual_basis(lat);
  ctx.min_abs_norm = norm_spectrum(dual.elements, 1, height_cap).min_abs_norm;
  Signature sig = lat.field->signature();
  ctx.totally_real_cubic = lat.field->degree() == 3 && sig.s == 0;
  return ctx;
}

// schema: q,p1[,p2],v1[,v2],gamma,norm_level,sign_class,source,err
inline std::string approximations_csv(const ModuleLattice& lat,
                                      const std::vector<NormalizedApproximation>& list,
                                      const CsvContext& ctx) {
  int d = lat.field->degree() - 1;
  std::ostringstream os;
  os << "q";
  for (int j = 1; j <= d; ++j) os << ",p" << j;
  for (int j = 1; j <= d; ++j) os << ",v" << j;
  os << ",gamma,norm_level,sign_class,source,err\n";
  for (const NormalizedApproximation& na : list) {
    os << na.q.get_str();
    for (const Int& p : na.p) os << "," << p.get_str();
    double err = 0;
    for (const Ball& v : na.value) err = std::max(err, v.rad_double());
    for (const Ball& v : na.value) os << "," << format_g(v.mid_double());
    if (na.has_provenance) {
      GammaBeta gb = gamma_beta(na.s, na.u, lat, 96);
      err = std::max(err, gb.gamma.rad_double());
      os << "," << format_g(gb.gamma.mid_double());
      if (ctx.min_abs_norm != 0)
        os << "," << rat_string(abs(na.s.norm()) / ctx.min_abs_norm);
      else
        os << ",";
      if (ctx.totally_real_cubic)
        os << "," << (hyperbola_sign_class(na.s) > 0 ? "+" : "-");
      else
        os << ",n/a";
      os << ",algebraic";
    } else {
      os << ",,,n/a,oracle";
    }
    os << "," << format_g(err, 3) << "\n";
  }
  return os.str();
}

// ---- SVG ----

struct PlotSpec {
  double view_c = 3;      // view box is [-view_c, view_c]^2
  double point_radius = 2.5;
  bool curves = true;
  int size_px = 800;
};

namespace detail {

inline double svg_x(const PlotSpec& ps, double x) {
  return (x + ps.view_c) / (2 * ps.view_c) * ps.size_px;
}
inline double svg_y(const PlotSpec& ps, double y) {
  return (ps.view_c - y) / (2 * ps.view_c) * ps.size_px;
}

inline void svg_polyline(std::ostringstream& os, const PlotSpec& ps,
                         const std::vector<std::pair<double, double>>& pts,
                         const char* color) {
  if (pts.size() < 2) return;
  os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1\" points=\"";
  bool first = true;
  for (auto& [x, y] : pts) {
    if (!first) os << " ";
    os << format_g(svg_x(ps, x)) << "," << format_g(svg_y(ps, y));
    first = false;
  }
  os << "\"/>\n";
}

}  // namespace detail

// Scatter of normalized-approximation values with optional dilated curve
// overlays. Output is deterministic for identical inputs.
inline std::string approximations_svg(const ModuleLattice& lat,
                                      const std::vector<NormalizedApproximation>& list,
                                      const PlotSpec& ps, long curve_level_max = 10,
                                      long height_cap = 8) {
  int d = lat.field->degree() - 1;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << ps.size_px << "\" height=\""
     << ps.size_px << "\" viewBox=\"0 0 " << ps.size_px << " " << ps.size_px << "\">\n";
  os << "<rect width=\"" << ps.size_px << "\" height=\"" << ps.size_px
     << "\" fill=\"white\"/>\n";
  // axes
  os << "<line x1=\"0\" y1=\"" << ps.size_px / 2 << "\" x2=\"" << ps.size_px << "\" y2=\""
     << ps.size_px / 2 << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
  os << "<line x1=\"" << ps.size_px / 2 << "\" y1=\"0\" x2=\"" << ps.size_px / 2
     << "\" y2=\"" << ps.size_px << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";

  if (ps.curves && d == 2) {
    CurveFamily fam = accumulation_curves_cubic(lat, curve_level_max, height_cap);
    double m[2][2];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m[i][j] = fam.m_alpha.m[i][j].mid_double();
    for (const Dilation& dl : fam.dilations) {
      double g = std::sqrt(mpq_get_d(dl.abs_norm.get_mpq_t()));
      auto mapped = [&](double b1, double b2) {
        return std::pair<double, double>{g * (b1 * m[0][0] + b2 * m[1][0]),
                                         g * (b1 * m[0][1] + b2 * m[1][1])};
      };
      if (fam.kind == CurveKind::Ellipse) {
        std::vector<std::pair<double, double>> pts;
        for (int k = 0; k <= 512; ++k) {
          double th = 2 * M_PI * k / 512;
          pts.push_back(mapped(std::cos(th), std::sin(th)));
        }
        detail::svg_polyline(os, ps, pts, "#b0c4de");
      } else {
        for (int br = 0; br < 2; ++br) {
          std::vector<std::pair<double, double>> pts;
          for (int k = 0; k <= 512; ++k) {
            double t = -6 + 12.0 * k / 512;
            double e = std::exp(t);
            double b1 = br == 0 ? e : -e;
            double b2 = dl.sign_class * (br == 0 ? 1 / e : -1 / e);
            auto [x, y] = mapped(b1, b2);
            if (std::abs(x) <= 1.5 * ps.view_c && std::abs(y) <= 1.5 * ps.view_c)
              pts.push_back({x, y});
          }
          detail::svg_polyline(os, ps, pts,
                               dl.sign_class > 0 ? "#b0c4de" : "#deb0c4");
        }
      }
    }
  }

  for (const NormalizedApproximation& na : list) {
    double x = na.value[0].mid_double();
    double y = d >= 2 ? na.value[1].mid_double() : 0;
    if (std::abs(x) > ps.view_c || std::abs(y) > ps.view_c) continue;
    os << "<circle cx=\"" << format_g(detail::svg_x(ps, x)) << "\" cy=\""
       << format_g(detail::svg_y(ps, y)) << "\" r=\"" << format_g(ps.point_radius)
       << "\" fill=\"#1f3d7a\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace napprox

#endif
