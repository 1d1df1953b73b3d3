#ifndef WILD_PERSIST_HPP
#define WILD_PERSIST_HPP

// Compactly supported cohomology of strict sublevel sets of PL potentials on
// locally closed intervals, as a persistence barcode.
//
// For a cell I with potential f, U_r = {x in I : f(x) < r} is a finite union
// of intervals, each relatively open in I. Its closed ends can only be closed
// endpoints of I. The contribution of a component J to H_c^*(U_r):
//
//   open-open      H^1_c(J) = k      (J is an open interval)
//   closed-closed  H^0_c(J) = k      (J is compact)
//   half-open      0                 (the one-point compactification of
//                                     [a, b) is contractible)
//
// Inclusions U_r -> U_r' induce extension by zero, which is the identity
// between open-open components and zero into half-open or compact ones. That
// gives the merge table used by the sweep:
//
//   oo + oo      -> oo    the younger degree-1 bar dies (elder rule)
//   oo + half    -> half  the degree-1 bar dies
//   half + half  -> cc    a degree-0 bar is born
//   oo  -> half           closing a closed endpoint kills the degree-1 bar
//   half -> cc            closing the second endpoint births a degree-0 bar

#include "wild/plfun.hpp"
#include "wild/wcore.hpp"

#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

namespace wild {

struct EndSpec {
    ExtReal position;
    bool closed = false;

    friend bool operator==(const EndSpec&, const EndSpec&) = default;
};

enum class ComponentType { OpenOpen, ClosedOpen, OpenClosed, ClosedClosed };

inline ComponentType component_type(bool left_closed, bool right_closed) {
    if (left_closed) return right_closed ? ComponentType::ClosedClosed : ComponentType::ClosedOpen;
    return right_closed ? ComponentType::OpenClosed : ComponentType::OpenOpen;
}

/// Cohomological degree carrying H_c of a component, if any.
inline std::optional<int> hc_degree(ComponentType t) {
    switch (t) {
        case ComponentType::OpenOpen: return 1;
        case ComponentType::ClosedClosed: return 0;
        default: return std::nullopt;
    }
}

/// j_!(S(f)|_I)[shift] for a locally closed interval I.
struct Cell {
    EndSpec left{ExtReal::neg_inf(), false};
    EndSpec right{ExtReal::pos_inf(), false};
    PLFunction potential;
    int shift = 0;

    friend bool operator==(const Cell&, const Cell&) = default;

    bool is_point() const { return left.position == right.position; }

    bool contains(const Rational& x) const {
        const ExtReal e(x);
        bool after_left = left.closed ? left.position <= e : left.position < e;
        bool before_right = right.closed ? e <= right.position : e < right.position;
        return after_left && before_right;
    }
};

inline void validate(const Cell& c) {
    if (!c.left.position.is_finite() && c.left.closed) throw ComputationError("malformed cell: infinite end marked closed");
    if (!c.right.position.is_finite() && c.right.closed)
        throw ComputationError("malformed cell: infinite end marked closed");
    if (c.left.position.is_pos_inf() || c.right.position.is_neg_inf())
        throw ComputationError("malformed cell: end at the wrong infinity");
    if (c.left.position < c.right.position) return;
    if (c.left.position == c.right.position && c.left.closed && c.right.closed) return;
    throw ComputationError("malformed cell: empty interval");
}

inline Cell whole_line_cell(PLFunction f, int shift = 0) {
    return Cell{{ExtReal::neg_inf(), false}, {ExtReal::pos_inf(), false}, std::move(f), shift};
}

inline Cell point_cell(const Rational& x, PLFunction f, int shift = 0) {
    return Cell{{ExtReal(x), true}, {ExtReal(x), true}, std::move(f), shift};
}

// ---------------------------------------------------------------------------
// Event sweep

namespace detail {

/// Atom of the sweep: an included point of I (a vertex) or an open piece of
/// I between consecutive marks (an edge). Atoms are indexed left to right.
struct Atom {
    bool vertex;
    ExtReal entry;  // the atom meets U_r exactly when r > entry
};

inline std::vector<Atom> cell_atoms(const Cell& cell) {
    const PLFunction& f = cell.potential;
    struct Mark {
        Rational x;
        bool included;
    };
    std::vector<Mark> marks;
    if (cell.left.position.is_finite()) marks.push_back({cell.left.position.value(), cell.left.closed});
    if (!cell.is_point()) {
        for (const auto& a : f.anchors()) {
            ExtReal ax(a.x);
            if (cell.left.position < ax && ax < cell.right.position) marks.push_back({a.x, true});
        }
        if (cell.right.position.is_finite()) marks.push_back({cell.right.position.value(), cell.right.closed});
    }

    std::vector<Atom> atoms;
    if (cell.left.position.is_neg_inf()) {
        // f -> -inf along the tail iff leftSlope > 0
        if (f.left_slope() > 0)
            atoms.push_back({false, ExtReal::neg_inf()});
        else
            atoms.push_back({false, ExtReal(f(marks.front().x))});
    }
    for (std::size_t i = 0; i < marks.size(); ++i) {
        if (i > 0) atoms.push_back({false, ExtReal(std::min(f(marks[i - 1].x), f(marks[i].x)))});
        if (marks[i].included) atoms.push_back({true, ExtReal(f(marks[i].x))});
    }
    if (cell.right.position.is_pos_inf()) {
        if (f.right_slope() < 0)
            atoms.push_back({false, ExtReal::neg_inf()});
        else
            atoms.push_back({false, ExtReal(f(marks.back().x))});
    }
    return atoms;
}

class ComponentForest {
  public:
    explicit ComponentForest(std::size_t n) : parent_(n), lo_(n), hi_(n) {
        std::iota(parent_.begin(), parent_.end(), 0);
        std::iota(lo_.begin(), lo_.end(), 0);
        std::iota(hi_.begin(), hi_.end(), 0);
    }

    std::size_t find(std::size_t i) {
        while (parent_[i] != i) {
            parent_[i] = parent_[parent_[i]];
            i = parent_[i];
        }
        return i;
    }

    std::size_t unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return a;
        if (lo_[b] < lo_[a]) std::swap(a, b);
        parent_[b] = a;
        hi_[a] = std::max(hi_[a], hi_[b]);
        return a;
    }

    std::size_t leftmost(std::size_t root) const { return lo_[root]; }
    std::size_t rightmost(std::size_t root) const { return hi_[root]; }

  private:
    std::vector<std::size_t> parent_, lo_, hi_;
};

inline void sweep_cell(const Cell& cell, std::vector<Bar>& out) {
    validate(cell);
    const std::vector<Atom> atoms = cell_atoms(cell);
    const std::size_t n = atoms.size();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return atoms[a].entry < atoms[b].entry; });

    ComponentForest forest(n);
    std::vector<bool> active(n, false);
    // live bar of each current root: index into `bars`
    std::vector<std::optional<std::size_t>> live(n);
    std::vector<Bar> bars;

    auto type_of = [&](std::size_t root) {
        return component_type(atoms[forest.leftmost(root)].vertex, atoms[forest.rightmost(root)].vertex);
    };

    std::size_t pos = 0;
    while (pos < n) {
        const ExtReal level = atoms[order[pos]].entry;

        struct Incoming {
            std::size_t root;
            std::size_t left;
            std::optional<std::size_t> bar;
        };
        std::vector<Incoming> before;
        for (std::size_t i = 0; i < n; ++i)
            if (active[i] && forest.find(i) == i) before.push_back({i, forest.leftmost(i), live[i]});

        std::vector<std::size_t> touched;
        for (; pos < n && atoms[order[pos]].entry == level; ++pos) {
            const std::size_t i = order[pos];
            active[i] = true;
            if (i > 0 && active[i - 1]) forest.unite(i, i - 1);
            if (i + 1 < n && active[i + 1]) forest.unite(i, i + 1);
            touched.push_back(i);
        }

        // Group the previous components by the component they now lie in.
        std::map<std::size_t, std::vector<Incoming>> into;
        for (const auto& inc : before) into[forest.find(inc.root)].push_back(inc);
        for (std::size_t i : touched) into[forest.find(i)];

        for (auto& [root, incoming] : into) {
            const ComponentType type = type_of(root);
            std::optional<std::size_t> survivor;
            std::vector<std::size_t> dying;
            for (const auto& inc : incoming) {
                if (!inc.bar) continue;
                const Bar& b = bars[*inc.bar];
                const bool keeps = (type == ComponentType::OpenOpen && b.degree == 1) ||
                                   (type == ComponentType::ClosedClosed && b.degree == 0);
                if (!keeps) {
                    dying.push_back(*inc.bar);
                } else if (!survivor) {
                    survivor = *inc.bar;
                } else {
                    // incoming is ordered left to right, so ties keep the leftmost
                    if (b.birth < bars[*survivor].birth) {
                        dying.push_back(*survivor);
                        survivor = *inc.bar;
                    } else {
                        dying.push_back(*inc.bar);
                    }
                }
            }
            for (std::size_t d : dying) bars[d].death = level;
            if (!survivor) {
                if (auto deg = hc_degree(type)) {
                    bars.push_back(Bar{*deg, level, ExtReal::pos_inf()});
                    survivor = bars.size() - 1;
                }
            }
            live[root] = survivor;
        }
    }

    for (auto b : bars) {
        if (!(b.birth < b.death)) continue;
        b.degree -= cell.shift;
        out.push_back(b);
    }
}

}  // namespace detail

/// Barcode of r -> H_c^*({f < r}) summed over the cells (before completion).
inline PreWObject sublevel_barcode(std::span<const Cell> cells) {
    PreWObject out;
    for (const auto& c : cells) detail::sweep_cell(c, out.bars);
    std::sort(out.bars.begin(), out.bars.end());
    return out;
}

inline PreWObject sublevel_barcode(const Cell& cell) { return sublevel_barcode(std::span<const Cell>(&cell, 1)); }

/// Per-degree dimension of Fil_{<r} read off a barcode: bars with b < r <= d.
inline std::map<int, int> strict_fil_dim(std::span<const Bar> bars, const Rational& r) {
    std::map<int, int> dims;
    const ExtReal e(r);
    for (const auto& b : bars)
        if (b.birth < e && e <= b.death) ++dims[b.degree];
    return dims;
}

// ---------------------------------------------------------------------------
// Brute-force oracle

/// An interval of the line with explicit end inclusion.
struct Interval {
    EndSpec lo;
    EndSpec hi;

    bool empty() const {
        if (lo.position < hi.position) return false;
        return !(lo.position == hi.position && lo.closed && hi.closed && lo.position.is_finite());
    }
};

inline Interval intersect(const Interval& a, const Interval& b) {
    Interval out;
    if (a.lo.position == b.lo.position)
        out.lo = {a.lo.position, a.lo.closed && b.lo.closed};
    else
        out.lo = a.lo.position < b.lo.position ? b.lo : a.lo;
    if (a.hi.position == b.hi.position)
        out.hi = {a.hi.position, a.hi.closed && b.hi.closed};
    else
        out.hi = a.hi.position < b.hi.position ? a.hi : b.hi;
    return out;
}

/// Components of {x in cell : f(x) < r}, left to right, by direct root finding.
inline std::vector<Interval> sublevel_components(const Cell& cell, const Rational& r) {
    validate(cell);
    const PLFunction& f = cell.potential;
    const Interval domain{cell.left, cell.right};

    std::vector<ExtReal> breaks{ExtReal::neg_inf()};
    for (const auto& a : f.anchors()) breaks.emplace_back(a.x);
    breaks.push_back(ExtReal::pos_inf());

    std::vector<Interval> pieces;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
        Interval seg{{breaks[k], breaks[k].is_finite()}, {breaks[k + 1], breaks[k + 1].is_finite()}};
        Interval part = intersect(seg, domain);
        if (part.empty()) continue;
        // f is affine on seg: f(x) = base + slope * (x - at)
        const Rational at = breaks[k].is_finite() ? breaks[k].value() : breaks[k + 1].value();
        const Rational base = f(at);
        const Rational slope = breaks[k].is_finite() ? f.slope_right_of(at) : f.left_slope();
        Interval below;  // {x : base + slope (x - at) < r}, open
        if (slope == 0) {
            if (!(base < r)) continue;
            below = {{ExtReal::neg_inf(), false}, {ExtReal::pos_inf(), false}};
        } else {
            const Rational root = at + (r - base) / slope;
            if (slope > 0)
                below = {{ExtReal::neg_inf(), false}, {ExtReal(root), false}};
            else
                below = {{ExtReal(root), false}, {ExtReal::pos_inf(), false}};
        }
        Interval s = intersect(part, below);
        if (!s.empty()) pieces.push_back(s);
    }

    std::vector<Interval> merged;
    for (const auto& p : pieces) {
        if (!merged.empty()) {
            Interval& last = merged.back();
            if (last.hi.position == p.lo.position && (last.hi.closed || p.lo.closed)) {
                last.hi = p.hi;
                continue;
            }
        }
        merged.push_back(p);
    }
    return merged;
}

inline std::map<int, int> sublevel_dims(std::span<const Cell> cells, const Rational& r) {
    std::map<int, int> dims;
    for (const auto& c : cells) {
        for (const auto& comp : sublevel_components(c, r)) {
            if (auto deg = hc_degree(component_type(comp.lo.closed, comp.hi.closed))) ++dims[*deg - c.shift];
        }
    }
    return dims;
}

inline std::map<int, int> sublevel_dims(const Cell& cell, const Rational& r) {
    return sublevel_dims(std::span<const Cell>(&cell, 1), r);
}

}  // namespace wild

#endif  // WILD_PERSIST_HPP
