#ifndef WILD_SVG_HPP
#define WILD_SVG_HPP

// SVG plots of barcodes and of piecewise transforms.

#include "wild/fourier.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace wild::svg {

namespace detail {

inline const char* degree_color(int degree) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    const int n = static_cast<int>(std::size(palette));
    return palette[((degree % n) + n) % n];
}

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

struct Axis {
    double lo, hi;
    double px_lo, px_hi;

    double operator()(double v) const { return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo); }
};

inline std::string header(int width, int height) {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
       << "<defs><marker id=\"arrow\" markerWidth=\"8\" markerHeight=\"8\" refX=\"6\" refY=\"4\" orient=\"auto\">"
       << "<path d=\"M0,0 L8,4 L0,8 z\" fill=\"context-stroke\"/></marker></defs>\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    return os.str();
}

}  // namespace detail

/// One horizontal segment per bar, coloured by degree; bars running to +inf
/// are clipped at the right margin and end in an arrowhead.
inline std::string render_barcode(const WObject& w) {
    using namespace detail;
    const int width = 640, row = 22, margin = 40;
    if (w.empty()) {
        std::string out = header(width, 80);
        out += "<text x=\"" + std::to_string(width / 2) + "\" y=\"45\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"14\">zero object</text>\n</svg>\n";
        return out;
    }
    std::set<Rational> ticks;
    for (const auto& b : w.bars()) {
        ticks.insert(b.birth.value());
        if (b.death.is_finite()) ticks.insert(b.death.value());
    }
    double lo = to_double(*ticks.begin()), hi = to_double(*ticks.rbegin());
    const double pad = std::max(1.0, (hi - lo) * 0.15);
    Axis x{lo - pad, hi + pad, margin + 30.0, width - margin * 1.0};
    const int height = margin * 2 + row * static_cast<int>(w.size()) + 20;

    std::ostringstream os;
    os << header(width, height);
    const double axis_y = height - margin;
    os << "<line x1=\"" << num(x.px_lo) << "\" y1=\"" << num(axis_y) << "\" x2=\"" << num(x.px_hi) << "\" y2=\"" << num(axis_y)
       << "\" stroke=\"#444\"/>\n";
    for (const auto& t : ticks) {
        const double px = x(to_double(t));
        os << "<line x1=\"" << num(px) << "\" y1=\"" << num(axis_y) << "\" x2=\"" << num(px) << "\" y2=\"" << num(axis_y + 5)
           << "\" stroke=\"#444\"/>\n";
        os << "<text x=\"" << num(px) << "\" y=\"" << num(axis_y + 18) << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           << "font-size=\"11\">" << to_string(t) << "</text>\n";
    }
    double y = margin;
    for (const auto& b : w.bars()) {
        const double x0 = x(to_double(b.birth.value()));
        const bool open_end = b.death.is_pos_inf();
        const double x1 = open_end ? x.px_hi : x(to_double(b.death.value()));
        os << "<line class=\"bar\" x1=\"" << num(x0) << "\" y1=\"" << num(y) << "\" x2=\"" << num(x1) << "\" y2=\"" << num(y)
           << "\" stroke=\"" << degree_color(b.degree) << "\" stroke-width=\"4\"" << (open_end ? " marker-end=\"url(#arrow)\"" : "")
           << "/>\n";
        os << "<circle cx=\"" << num(x0) << "\" cy=\"" << num(y) << "\" r=\"3.5\" fill=\"" << degree_color(b.degree) << "\"/>\n";
        os << "<text x=\"8\" y=\"" << num(y + 4) << "\" font-family=\"sans-serif\" font-size=\"11\">deg " << b.degree << "</text>\n";
        y += row;
    }
    os << "</svg>\n";
    return os.str();
}

/// Region plot: parameter y horizontally, filtration r vertically; each bar
/// family fills the region between its birth and death curves.
inline std::string render_transform(const PiecewiseTransform& t) {
    using namespace detail;
    const int width = 640, height = 480, margin = 50;
    if (t.pieces.empty()) {
        std::string out = header(width, 80);
        out += "<text x=\"" + std::to_string(width / 2) + "\" y=\"45\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"14\">zero object</text>\n</svg>\n";
        return out;
    }
    // view window from the finite piece ends and the values found there
    std::set<Rational> ys;
    for (const auto& p : t.pieces) {
        if (p.lo.position.is_finite()) ys.insert(p.lo.position.value());
        if (p.hi.position.is_finite()) ys.insert(p.hi.position.value());
    }
    if (ys.empty()) ys.insert(0);
    const Rational y_lo = *ys.begin() - 1, y_hi = *ys.rbegin() + 1;

    auto clip_lo = [&](const TransformPiece& p) { return p.lo.position.is_finite() ? p.lo.position.value() : y_lo; };
    auto clip_hi = [&](const TransformPiece& p) { return p.hi.position.is_finite() ? p.hi.position.value() : y_hi; };
    auto samples = [&](const TransformPiece& p, const BarFamily& f) {
        std::set<Rational> pts{clip_lo(p), clip_hi(p)};
        auto breaks_of = [&](const PLFunction& g) {
            if (is_affine(g)) return;
            for (const auto& a : g.anchors())
                if (a.x > clip_lo(p) && a.x < clip_hi(p)) pts.insert(a.x);
        };
        breaks_of(f.birth);
        if (f.death) breaks_of(*f.death);
        return std::vector<Rational>(pts.begin(), pts.end());
    };

    double r_lo = 0, r_hi = 0;
    bool first = true;
    for (const auto& p : t.pieces)
        for (const auto& f : p.families)
            for (const auto& y : samples(p, f)) {
                const double b = to_double(f.birth(y));
                const double d = f.death ? to_double((*f.death)(y)) : b;
                r_lo = first ? b : std::min(r_lo, b);
                r_hi = first ? d : std::max(r_hi, d);
                first = false;
            }
    const double pad = std::max(1.0, (r_hi - r_lo) * 0.25);
    Axis ax{to_double(y_lo), to_double(y_hi), margin * 1.0, width - margin * 1.0};
    Axis ar{r_lo - pad, r_hi + pad, height - margin * 1.0, margin * 1.0};

    std::ostringstream os;
    os << header(width, height);
    os << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin << "\" y2=\"" << height - margin
       << "\" stroke=\"#444\"/>\n";
    os << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\"" << height - margin
       << "\" stroke=\"#444\"/>\n";
    os << "<text x=\"" << width - margin << "\" y=\"" << height - margin + 30 << "\" font-family=\"sans-serif\" font-size=\"12\">y</text>\n";
    os << "<text x=\"" << margin - 30 << "\" y=\"" << margin << "\" font-family=\"sans-serif\" font-size=\"12\">r</text>\n";
    for (const auto& y : ys) {
        os << "<text x=\"" << num(ax(to_double(y))) << "\" y=\"" << height - margin + 16
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << to_string(y) << "</text>\n";
    }
    for (const auto& p : t.pieces) {
        for (const auto& f : p.families) {
            const auto pts = samples(p, f);
            const char* color = degree_color(f.degree);
            if (pts.size() == 1) {
                const double px = ax(to_double(pts.front()));
                const double top = f.death ? ar(to_double((*f.death)(pts.front()))) : ar.px_hi;
                os << "<line class=\"family\" x1=\"" << num(px) << "\" y1=\"" << num(ar(to_double(f.birth(pts.front()))))
                   << "\" x2=\"" << num(px) << "\" y2=\"" << num(top) << "\" stroke=\"" << color << "\" stroke-width=\"3\"/>\n";
                continue;
            }
            os << "<polygon class=\"family\" fill=\"" << color << "\" fill-opacity=\"0.35\" stroke=\"" << color << "\" points=\"";
            for (const auto& y : pts) os << num(ax(to_double(y))) << "," << num(ar(to_double(f.birth(y)))) << " ";
            for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
                const double top = f.death ? ar(to_double((*f.death)(*it))) : ar.px_hi;
                os << num(ax(to_double(*it))) << "," << num(top) << " ";
            }
            os << "\"/>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace wild::svg

#endif  // WILD_SVG_HPP
