#ifndef WILD_FOURIER_HPP
#define WILD_FOURIER_HPP

// Wild sheaves on the line as finite sums of cells, and the Fourier
// transform with kernel b^* exp for the pairing b(x, y) = x*y.
//
// The stalk of the transform at y is pi_! of the input twisted by the linear
// potential x*y. Globally the transform is described piecewise in y: the
// barcode of a twisted cell only changes combinatorics where two vertex
// values v_i + x_i*y cross or an end slope of f + x*y changes sign, so on
// each remaining open interval every bar endpoint follows one vertex line.

#include "wild/persist.hpp"
#include "wild/plfun.hpp"
#include "wild/wcore.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wild {

struct WSheaf {
    std::vector<Cell> summands;

    friend bool operator==(const WSheaf&, const WSheaf&) = default;
};

/// S(f): the invertible sheaf on the line with fibre S(f(x)) at x.
inline WSheaf sheaf_of(const PLFunction& f) { return WSheaf{{whole_line_cell(f)}}; }

/// The exponential sheaf, S(x).
inline WSheaf exp_sheaf() { return sheaf_of(PLFunction::affine(1, 0)); }

inline WSheaf shift(const WSheaf& s, int n) {
    WSheaf out = s;
    for (auto& c : out.summands) c.shift += n;
    return out;
}

inline WObject pi_shriek(const WSheaf& s) { return completion(sublevel_barcode(s.summands)); }

inline WSheaf twist(const WSheaf& s, const Rational& y) {
    WSheaf out = s;
    for (auto& c : out.summands) c.potential = add_linear(c.potential, y);
    return out;
}

inline WObject fourier_stalk(const WSheaf& s, const Rational& y) { return pi_shriek(twist(s, y)); }

/// Stalk of the sheaf itself at x.
inline WObject sheaf_stalk(const WSheaf& s, const Rational& x) {
    WSheaf local;
    for (const auto& c : s.summands)
        if (c.contains(x)) local.summands.push_back(point_cell(x, c.potential, c.shift));
    return pi_shriek(local);
}

// ---------------------------------------------------------------------------
// Piecewise transform

struct BarFamily {
    int degree = 0;
    PLFunction birth;
    std::optional<PLFunction> death;  // empty means +inf

    friend bool operator==(const BarFamily&, const BarFamily&) = default;
};

struct TransformPiece {
    EndSpec lo;
    EndSpec hi;
    std::vector<BarFamily> families;

    friend bool operator==(const TransformPiece&, const TransformPiece&) = default;

    bool contains(const Rational& y) const {
        return Cell{lo, hi, {}, 0}.contains(y);
    }
};

struct PiecewiseTransform {
    std::vector<TransformPiece> pieces;

    friend bool operator==(const PiecewiseTransform&, const PiecewiseTransform&) = default;
};

inline WObject evaluate(const PiecewiseTransform& t, const Rational& y) {
    for (const auto& p : t.pieces) {
        if (!p.contains(y)) continue;
        std::vector<Bar> bars;
        for (const auto& fam : p.families) {
            ExtReal death = fam.death ? ExtReal((*fam.death)(y)) : ExtReal::pos_inf();
            bars.push_back(Bar{fam.degree, ExtReal(fam.birth(y)), death});
        }
        return WObject(std::move(bars));
    }
    return {};
}

namespace detail {

struct Line {
    Rational slope;
    Rational intercept;

    Rational at(const Rational& y) const { return intercept + slope * y; }
    friend bool operator==(const Line&, const Line&) = default;
};

/// Value lines y -> f(m) + m*y at the marks of a cell (finite ends and
/// interior anchors).
inline std::vector<Line> vertex_lines(const Cell& c) {
    std::vector<Line> lines;
    auto add_mark = [&](const Rational& m) { lines.push_back(Line{m, c.potential(m)}); };
    if (c.left.position.is_finite()) add_mark(c.left.position.value());
    if (!c.is_point()) {
        for (const auto& a : c.potential.anchors()) {
            ExtReal ax(a.x);
            if (c.left.position < ax && ax < c.right.position) add_mark(a.x);
        }
        if (c.right.position.is_finite()) add_mark(c.right.position.value());
    }
    return lines;
}

inline std::vector<Rational> critical_parameters(const WSheaf& s) {
    std::vector<Rational> ys;
    for (const auto& c : s.summands) {
        const auto lines = vertex_lines(c);
        for (std::size_t i = 0; i < lines.size(); ++i)
            for (std::size_t j = i + 1; j < lines.size(); ++j)
                ys.push_back((lines[j].intercept - lines[i].intercept) / (lines[i].slope - lines[j].slope));
        if (c.left.position.is_neg_inf()) ys.push_back(-c.potential.left_slope());
        if (c.right.position.is_pos_inf()) ys.push_back(-c.potential.right_slope());
    }
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    return ys;
}

struct ElementaryFamily {
    int degree;
    Line birth;
    std::optional<Line> death;
};

/// Bars of the stalk at a sample parameter, each endpoint matched to the
/// unique vertex line of its cell passing through it. At a critical point
/// the lines are replaced by constants.
inline std::vector<ElementaryFamily> sample_families(const WSheaf& s, const Rational& y, bool generic) {
    std::vector<ElementaryFamily> out;
    for (const auto& c : s.summands) {
        const WObject stalk = pi_shriek(twist(WSheaf{{c}}, y));
        const auto lines = generic ? vertex_lines(c) : std::vector<Line>{};
        auto line_through = [&](const Rational& v) {
            if (!generic) return Line{0, v};
            for (const auto& l : lines)
                if (l.at(y) == v) return l;
            throw ComputationError("bar endpoint does not lie on a vertex line");
        };
        for (const auto& b : stalk.bars()) {
            ElementaryFamily fam{b.degree, line_through(b.birth.value()), std::nullopt};
            if (b.death.is_finite()) fam.death = line_through(b.death.value());
            out.push_back(fam);
        }
    }
    return out;
}

struct ElementaryPiece {
    EndSpec lo;
    EndSpec hi;
    bool point;
    std::vector<ElementaryFamily> families;
};

inline std::vector<Bar> bars_at(const std::vector<ElementaryFamily>& fams, const Rational& y) {
    std::vector<Bar> bars;
    for (const auto& f : fams)
        bars.push_back(Bar{f.degree, ExtReal(f.birth.at(y)), f.death ? ExtReal(f.death->at(y)) : ExtReal::pos_inf()});
    return bars;
}

/// Indices of `fams` sorted by their bars evaluated at y.
inline std::vector<std::size_t> order_at(const std::vector<ElementaryFamily>& fams, const Rational& y) {
    const auto bars = bars_at(fams, y);
    std::vector<std::size_t> idx(fams.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return bars[a] < bars[b]; });
    return idx;
}

inline PLFunction assemble(const std::vector<Rational>& bounds, const std::vector<Line>& lines,
                           const std::vector<bool>& open_piece) {
    std::optional<Rational> left, right;
    for (std::size_t i = 0; i < lines.size(); ++i)
        if (open_piece[i]) {
            if (!left) left = lines[i].slope;
            right = lines[i].slope;
        }
    if (bounds.empty()) return PLFunction::affine(lines.front().slope, lines.front().intercept);
    std::vector<Anchor> anchors;
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        // a point piece contributes the same boundary on both of its sides
        if (!anchors.empty() && anchors.back().x == bounds[i]) continue;
        anchors.push_back(Anchor{bounds[i], lines[i + 1].at(bounds[i])});
    }
    return PLFunction(std::move(anchors), left.value_or(0), right.value_or(0));
}

}  // namespace detail

/// Piecewise description of the Fourier transform. Pieces with zero stalks
/// are omitted; adjacent pieces whose bars agree at their common boundary
/// are merged, so bar endpoints become PL in y.
inline PiecewiseTransform fourier_transform(const WSheaf& s) {
    using namespace detail;
    for (const auto& c : s.summands) validate(c);
    const std::vector<Rational> ys = critical_parameters(s);

    std::vector<ElementaryPiece> pieces;
    auto open_piece = [&](ExtReal lo, ExtReal hi, const Rational& sample) {
        pieces.push_back(ElementaryPiece{{lo, false}, {hi, false}, false, sample_families(s, sample, true)});
    };
    if (ys.empty()) {
        open_piece(ExtReal::neg_inf(), ExtReal::pos_inf(), 0);
    } else {
        open_piece(ExtReal::neg_inf(), ExtReal(ys.front()), ys.front() - 1);
        for (std::size_t i = 0; i < ys.size(); ++i) {
            pieces.push_back(ElementaryPiece{{ExtReal(ys[i]), true}, {ExtReal(ys[i]), true}, true,
                                             sample_families(s, ys[i], false)});
            if (i + 1 < ys.size())
                open_piece(ExtReal(ys[i]), ExtReal(ys[i + 1]), (ys[i] + ys[i + 1]) / 2);
            else
                open_piece(ExtReal(ys[i]), ExtReal::pos_inf(), ys[i] + 1);
        }
    }

    // Merge runs of consecutive pieces whose bars agree at shared boundaries.
    struct Run {
        EndSpec lo, hi;
        std::vector<Rational> bounds;
        std::vector<bool> open;
        // per family: lines on each elementary piece of the run
        std::vector<int> degrees;
        std::vector<std::vector<Line>> births;
        std::vector<std::vector<std::optional<Line>>> deaths;
    };
    std::vector<Run> runs;
    auto start_run = [&](const ElementaryPiece& p) {
        Run r{p.lo, p.hi, {}, {!p.point}, {}, {}, {}};
        for (const auto& f : p.families) {
            r.degrees.push_back(f.degree);
            r.births.push_back({f.birth});
            r.deaths.push_back({f.death});
        }
        runs.push_back(std::move(r));
    };
    const ElementaryPiece* prev = nullptr;
    for (const auto& p : pieces) {
        bool merged = false;
        if (prev && !runs.empty() && prev->families.size() == p.families.size() && !p.families.empty()) {
            const Rational b = p.lo.position.value();
            const auto left_bars = bars_at(prev->families, b);
            const auto right_bars = bars_at(p.families, b);
            auto lo_order = order_at(prev->families, b);
            auto hi_order = order_at(p.families, b);
            bool agree = true;
            for (std::size_t k = 0; k < lo_order.size() && agree; ++k) {
                const Bar& x = left_bars[lo_order[k]];
                const Bar& y = right_bars[hi_order[k]];
                agree = x == y && x.birth < x.death;
            }
            if (agree) {
                // run slot j holds family j of the previously appended piece;
                // afterwards slots follow p's family order
                Run& r = runs.back();
                std::vector<int> degrees(r.degrees.size());
                std::vector<std::vector<Line>> births(r.births.size());
                std::vector<std::vector<std::optional<Line>>> deaths(r.deaths.size());
                for (std::size_t k = 0; k < lo_order.size(); ++k) {
                    const std::size_t from = lo_order[k], to = hi_order[k];
                    const auto& f = p.families[to];
                    degrees[to] = r.degrees[from];
                    births[to] = std::move(r.births[from]);
                    births[to].push_back(f.birth);
                    deaths[to] = std::move(r.deaths[from]);
                    deaths[to].push_back(f.death);
                }
                r.degrees = std::move(degrees);
                r.births = std::move(births);
                r.deaths = std::move(deaths);
                r.bounds.push_back(b);
                r.open.push_back(!p.point);
                r.hi = p.hi;
                merged = true;
            }
        }
        if (!merged) start_run(p);
        prev = &p;
    }

    PiecewiseTransform out;
    for (const auto& r : runs) {
        if (r.degrees.empty()) continue;
        TransformPiece piece{r.lo, r.hi, {}};
        for (std::size_t k = 0; k < r.degrees.size(); ++k) {
            BarFamily fam{r.degrees[k], assemble(r.bounds, r.births[k], r.open), std::nullopt};
            if (r.deaths[k].front()) {
                std::vector<Line> ds;
                for (const auto& d : r.deaths[k]) ds.push_back(*d);
                fam.death = assemble(r.bounds, ds, r.open);
            }
            piece.families.push_back(std::move(fam));
        }
        std::sort(piece.families.begin(), piece.families.end(), [&](const BarFamily& a, const BarFamily& b) {
            const Rational y = r.lo.position.is_finite()
                                   ? (r.hi.position.is_finite() ? (r.lo.position.value() + r.hi.position.value()) / 2
                                                                : r.lo.position.value() + 1)
                                   : (r.hi.position.is_finite() ? r.hi.position.value() - 1 : Rational(0));
            auto key = [&](const BarFamily& f) {
                return Bar{f.degree, ExtReal(f.birth(y)), f.death ? ExtReal((*f.death)(y)) : ExtReal::pos_inf()};
            };
            return key(a) < key(b);
        });
        out.pieces.push_back(std::move(piece));
    }
    return out;
}

/// Reassemble a transform as a sum of cells. Only transforms whose pieces
/// each carry a single bar family of the form [g(y), +inf) and that do not
/// touch each other are representable.
inline WSheaf to_wsheaf(const PiecewiseTransform& t) {
    WSheaf out;
    for (std::size_t i = 0; i < t.pieces.size(); ++i) {
        const auto& p = t.pieces[i];
        if (p.families.size() != 1 || p.families.front().death)
            throw ComputationError("not cell-representable");
        if (i + 1 < t.pieces.size() && p.hi.position == t.pieces[i + 1].lo.position)
            throw ComputationError("not cell-representable");
        const auto& fam = p.families.front();
        out.summands.push_back(Cell{p.lo, p.hi, fam.birth, -fam.degree});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Inversion

struct InversionReport {
    bool ok = true;
    std::vector<Rational> probes;
    std::optional<Rational> first_failure;
};

/// Probe points for the inverse transform of S(f): the reflected anchors,
/// their midpoints, and one point beyond each end.
inline std::vector<Rational> inversion_probes(const PLFunction& f) {
    std::vector<Rational> xs;
    for (const auto& a : f.anchors()) xs.push_back(-a.x);
    std::sort(xs.begin(), xs.end());
    std::vector<Rational> probes{xs.front() - 1};
    for (std::size_t i = 0; i < xs.size(); ++i) {
        probes.push_back(xs[i]);
        if (i + 1 < xs.size()) probes.push_back((xs[i] + xs[i + 1]) / 2);
    }
    probes.push_back(xs.back() + 1);
    probes.push_back(0);
    std::sort(probes.begin(), probes.end());
    probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
    return probes;
}

/// Transforms S(f) twice and compares with (-1)^* S(f) [-1] at the
/// standard probes plus any extra ones.
inline InversionReport inversion_report(const PLFunction& f, std::span<const Rational> extra = {}) {
    if (!is_convex(f)) throw ComputationError("checkInversion requires convex input");
    const WSheaf once = to_wsheaf(fourier_transform(sheaf_of(f)));
    InversionReport report;
    report.probes = inversion_probes(f);
    report.probes.insert(report.probes.end(), extra.begin(), extra.end());
    std::sort(report.probes.begin(), report.probes.end());
    report.probes.erase(std::unique(report.probes.begin(), report.probes.end()), report.probes.end());
    for (const auto& x : report.probes) {
        const WObject expected({Bar{1, ExtReal(f(-x)), ExtReal::pos_inf()}});
        if (!iso_equal(fourier_stalk(once, x), expected)) {
            report.ok = false;
            report.first_failure = x;
            break;
        }
    }
    return report;
}

inline bool check_inversion(const PLFunction& f, std::span<const Rational> extra = {}) {
    return inversion_report(f, extra).ok;
}

// ---------------------------------------------------------------------------
// Convolution

namespace detail {

/// {t : x - t in I}
inline Interval reflect_through(const EndSpec& lo, const EndSpec& hi, const Rational& x) {
    auto mirror = [&](const EndSpec& e) {
        ExtReal p = e.position.is_finite() ? ExtReal(x - e.position.value()) : e.position.negated();
        return EndSpec{p, e.closed};
    };
    return Interval{mirror(hi), mirror(lo)};
}

}  // namespace detail

/// Stalk at x of the convolution: pi_! along the antidiagonal t + s = x of
/// the external product, whose potential is f(t) + g(x - t).
inline WObject convolve_stalk(const WSheaf& a, const WSheaf& b, const Rational& x) {
    WSheaf fibre;
    for (const auto& ca : a.summands) {
        validate(ca);
        for (const auto& cb : b.summands) {
            validate(cb);
            const Interval dom = intersect(Interval{ca.left, ca.right}, detail::reflect_through(cb.left, cb.right, x));
            if (dom.empty()) continue;
            PLFunction h = add(ca.potential, translate(reflect(cb.potential), x));
            fibre.summands.push_back(Cell{dom.lo, dom.hi, std::move(h), ca.shift + cb.shift});
        }
    }
    return pi_shriek(fibre);
}

struct IntertwiningReport {
    bool ok = true;
    std::string failure;
};

/// Checks F(S(f) * S(g)) = F(S(f)) (x) F(S(g)) stalkwise. The convolution
/// class is S(f box g)[-1]; it is first confirmed against convolve_stalk at
/// the breakpoints of f box g and their midpoints.
inline IntertwiningReport intertwining_report(const PLFunction& f, const PLFunction& g, std::span<const Rational> probes) {
    if (!is_convex(f) || !is_convex(g)) throw ComputationError("checkIntertwining requires convex inputs");
    const PLFunction fg = inf_conv(f, g);
    const WSheaf conv = shift(sheaf_of(fg), -1);
    const WSheaf sf = sheaf_of(f), sg = sheaf_of(g);

    std::vector<Rational> xs;
    const auto anchors = fg.anchors();
    xs.push_back(anchors.front().x - 1);
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        xs.push_back(anchors[i].x);
        if (i + 1 < anchors.size()) xs.push_back((anchors[i].x + anchors[i + 1].x) / 2);
    }
    xs.push_back(anchors.back().x + 1);
    for (const auto& x : xs) {
        if (!iso_equal(convolve_stalk(sf, sg, x), sheaf_stalk(conv, x)))
            return {false, "convolution stalk differs from infimal convolution at x = " + to_string(x)};
    }
    for (const auto& y : probes) {
        if (!iso_equal(fourier_stalk(conv, y), tensor(fourier_stalk(sf, y), fourier_stalk(sg, y))))
            return {false, "transform of convolution differs from tensor of transforms at y = " + to_string(y)};
    }
    return {};
}

inline bool check_intertwining(const PLFunction& f, const PLFunction& g, std::span<const Rational> probes) {
    return intertwining_report(f, g, probes).ok;
}

/// pi_! of an external product with separable potential.
inline WObject kunneth(std::span<const WSheaf> sheaves) {
    WObject acc = unit();
    for (const auto& s : sheaves) acc = tensor(acc, pi_shriek(s));
    return acc;
}

}  // namespace wild

#endif  // WILD_FOURIER_HPP
