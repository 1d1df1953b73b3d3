#ifndef WILD_PLFUN_HPP
#define WILD_PLFUN_HPP

// Exact piecewise-linear functions on the real line.
//
// A PLFunction is given by finitely many anchors (x_i, f(x_i)) with strictly
// increasing x, affine interpolation between them, and affine continuation
// with the two end slopes. The representation is normalized: no anchor sits
// where the slope does not change, except that an affine function keeps one
// anchor at x = 0.

#include "wild/extreal.hpp"

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

namespace wild {

struct Anchor {
    Rational x;
    Rational value;

    friend bool operator==(const Anchor&, const Anchor&) = default;
};

class PLFunction {
  public:
    PLFunction() : PLFunction({Anchor{0, 0}}, 0, 0) {}

    PLFunction(std::vector<Anchor> anchors, Rational left_slope, Rational right_slope)
        : anchors_(std::move(anchors)), left_slope_(std::move(left_slope)), right_slope_(std::move(right_slope)) {
        if (anchors_.empty()) throw ComputationError("PLFunction needs at least one anchor");
        for (std::size_t i = 1; i < anchors_.size(); ++i)
            if (!(anchors_[i - 1].x < anchors_[i].x))
                throw ComputationError("PLFunction anchors must be strictly increasing in x");
        normalize();
    }

    static PLFunction affine(const Rational& slope, const Rational& value_at_zero) {
        return PLFunction({Anchor{0, value_at_zero}}, slope, slope);
    }
    static PLFunction constant(const Rational& c) { return affine(0, c); }

    std::span<const Anchor> anchors() const { return anchors_; }
    const Rational& left_slope() const { return left_slope_; }
    const Rational& right_slope() const { return right_slope_; }

    /// Slopes in order: left end, one per segment between anchors, right end.
    std::vector<Rational> slopes() const {
        std::vector<Rational> s;
        s.reserve(anchors_.size() + 1);
        s.push_back(left_slope_);
        for (std::size_t i = 1; i < anchors_.size(); ++i)
            s.push_back((anchors_[i].value - anchors_[i - 1].value) / (anchors_[i].x - anchors_[i - 1].x));
        s.push_back(right_slope_);
        return s;
    }

    Rational operator()(const Rational& x) const {
        const auto& first = anchors_.front();
        const auto& last = anchors_.back();
        if (x <= first.x) return first.value + left_slope_ * (x - first.x);
        if (x >= last.x) return last.value + right_slope_ * (x - last.x);
        auto it = std::upper_bound(anchors_.begin(), anchors_.end(), x,
                                   [](const Rational& v, const Anchor& a) { return v < a.x; });
        const Anchor& hi = *it;
        const Anchor& lo = *(it - 1);
        return lo.value + (hi.value - lo.value) * (x - lo.x) / (hi.x - lo.x);
    }

    /// Slope of the affine piece immediately to the right of x.
    Rational slope_right_of(const Rational& x) const {
        if (x < anchors_.front().x) return left_slope_;
        if (x >= anchors_.back().x) return right_slope_;
        auto it = std::upper_bound(anchors_.begin(), anchors_.end(), x,
                                   [](const Rational& v, const Anchor& a) { return v < a.x; });
        return (it->value - (it - 1)->value) / (it->x - (it - 1)->x);
    }

    friend bool operator==(const PLFunction&, const PLFunction&) = default;

  private:
    void normalize() {
        auto s = slopes();
        std::vector<Anchor> kept;
        for (std::size_t i = 0; i < anchors_.size(); ++i)
            if (s[i] != s[i + 1]) kept.push_back(anchors_[i]);
        if (kept.empty()) {
            // affine: re-anchor at x = 0
            const Anchor& a = anchors_.front();
            kept.push_back(Anchor{0, a.value - left_slope_ * a.x});
        }
        anchors_ = std::move(kept);
    }

    std::vector<Anchor> anchors_;
    Rational left_slope_;
    Rational right_slope_;
};

inline Rational eval(const PLFunction& f, const Rational& x) { return f(x); }

namespace detail {

inline std::vector<Rational> merged_breaks(const PLFunction& f, const PLFunction& g) {
    std::vector<Rational> xs;
    for (const auto& a : f.anchors()) xs.push_back(a.x);
    for (const auto& a : g.anchors()) xs.push_back(a.x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

}  // namespace detail

inline PLFunction add(const PLFunction& f, const PLFunction& g) {
    std::vector<Anchor> out;
    for (const auto& x : detail::merged_breaks(f, g)) out.push_back(Anchor{x, f(x) + g(x)});
    return PLFunction(std::move(out), f.left_slope() + g.left_slope(), f.right_slope() + g.right_slope());
}

inline PLFunction negate(const PLFunction& f) {
    std::vector<Anchor> out(f.anchors().begin(), f.anchors().end());
    for (auto& a : out) a.value = -a.value;
    return PLFunction(std::move(out), -f.left_slope(), -f.right_slope());
}

inline PLFunction add_constant(const PLFunction& f, const Rational& c) {
    std::vector<Anchor> out(f.anchors().begin(), f.anchors().end());
    for (auto& a : out) a.value += c;
    return PLFunction(std::move(out), f.left_slope(), f.right_slope());
}

/// x -> f(x) + x*y
inline PLFunction add_linear(const PLFunction& f, const Rational& y) {
    std::vector<Anchor> out(f.anchors().begin(), f.anchors().end());
    for (auto& a : out) a.value += a.x * y;
    return PLFunction(std::move(out), f.left_slope() + y, f.right_slope() + y);
}

/// x -> f(-x)
inline PLFunction reflect(const PLFunction& f) {
    std::vector<Anchor> out;
    for (auto it = f.anchors().rbegin(); it != f.anchors().rend(); ++it) out.push_back(Anchor{-it->x, it->value});
    return PLFunction(std::move(out), -f.right_slope(), -f.left_slope());
}

/// x -> f(x - c)
inline PLFunction translate(const PLFunction& f, const Rational& c) {
    std::vector<Anchor> out(f.anchors().begin(), f.anchors().end());
    for (auto& a : out) a.x += c;
    return PLFunction(std::move(out), f.left_slope(), f.right_slope());
}

/// x -> t * f(x)
inline PLFunction scale_values(const PLFunction& f, const Rational& t) {
    std::vector<Anchor> out(f.anchors().begin(), f.anchors().end());
    for (auto& a : out) a.value *= t;
    return PLFunction(std::move(out), f.left_slope() * t, f.right_slope() * t);
}

inline bool is_convex(const PLFunction& f) {
    auto s = f.slopes();
    return std::is_sorted(s.begin(), s.end());
}

inline bool is_affine(const PLFunction& f) { return f.left_slope() == f.right_slope() && f.anchors().size() == 1; }

// ---------------------------------------------------------------------------
// Critical profile

enum class CriticalKind { LocalMin, LocalMax, Plateau, TailToFiniteLimit, TailToMinusInfinity, TailToPlusInfinity };

inline const char* to_string(CriticalKind k) {
    switch (k) {
        case CriticalKind::LocalMin: return "localMin";
        case CriticalKind::LocalMax: return "localMax";
        case CriticalKind::Plateau: return "plateau";
        case CriticalKind::TailToFiniteLimit: return "tailToFiniteLimit";
        case CriticalKind::TailToMinusInfinity: return "tailToMinusInfinity";
        case CriticalKind::TailToPlusInfinity: return "tailToPlusInfinity";
    }
    return "?";
}

/// One event of a critical profile. Tail events sit at x = -inf or +inf.
/// Flat extrema and plateaus span [x, x_end]; point events have x == x_end.
struct CriticalEvent {
    CriticalKind kind;
    ExtReal x;
    ExtReal x_end;
    ExtReal value;

    friend bool operator==(const CriticalEvent&, const CriticalEvent&) = default;
};

using CriticalProfile = std::vector<CriticalEvent>;

inline CriticalProfile critical_profile(const PLFunction& f) {
    auto sign = [](const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); };
    const auto anchors = f.anchors();
    const auto s = f.slopes();
    const std::size_t n = anchors.size();
    CriticalProfile out;

    auto tail = [&](int direction_sign, const ExtReal& at, const Rational& limit) {
        // direction_sign: sign of f's change moving outward along the tail
        if (direction_sign > 0) return CriticalEvent{CriticalKind::TailToPlusInfinity, at, at, ExtReal::pos_inf()};
        if (direction_sign < 0) return CriticalEvent{CriticalKind::TailToMinusInfinity, at, at, ExtReal::neg_inf()};
        return CriticalEvent{CriticalKind::TailToFiniteLimit, at, at, ExtReal(limit)};
    };

    out.push_back(tail(-sign(s.front()), ExtReal::neg_inf(), anchors.front().value));

    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && s[j + 1] == 0) ++j;
        const int before = sign(s[i]);
        const int after = sign(s[j + 1]);
        const ExtReal x0(anchors[i].x), x1(anchors[j].x), v(anchors[i].value);
        std::optional<CriticalKind> kind;
        if (before == 0 && after == 0)
            kind = CriticalKind::Plateau;
        else if ((before <= 0 && after > 0) || (before < 0 && after == 0))
            kind = CriticalKind::LocalMin;
        else if ((before >= 0 && after < 0) || (before > 0 && after == 0))
            kind = CriticalKind::LocalMax;
        else if (j > i)
            kind = CriticalKind::Plateau;
        if (kind) out.push_back(CriticalEvent{*kind, x0, x1, v});
        i = j + 1;
    }

    out.push_back(tail(sign(s.back()), ExtReal::pos_inf(), anchors.back().value));
    return out;
}

// ---------------------------------------------------------------------------
// Conjugation

/// Concave conjugate y -> inf_x (f(x) + x*y), finite exactly on [lo, hi].
/// `function` agrees with the conjugate on [lo, hi]; outside it is the
/// natural PL continuation, min over anchors of (f(x_i) + x_i*y).
struct Conjugate {
    Rational lo;
    Rational hi;
    PLFunction function;

    bool in_domain(const Rational& y) const { return lo <= y && y <= hi; }
};

inline Conjugate legendre(const PLFunction& f) {
    if (!is_convex(f)) throw ComputationError("legendre requires convex input; apply convexHull first");
    const auto anchors = f.anchors();
    const auto s = f.slopes();
    const std::size_t n = anchors.size();
    // On [-s[i+1], -s[i]] the infimum is attained at anchor i.
    std::vector<Anchor> out;
    for (std::size_t k = n - 1; k >= 1; --k) {
        const Rational y = -s[k];
        out.push_back(Anchor{y, anchors[k].value + anchors[k].x * y});
    }
    const Rational left = anchors.back().x;
    const Rational right = anchors.front().x;
    PLFunction conj = out.empty() ? PLFunction::affine(anchors.front().x, anchors.front().value)
                                  : PLFunction(std::move(out), left, right);
    return Conjugate{-f.right_slope(), -f.left_slope(), std::move(conj)};
}

/// Greatest convex PL minorant. Requires leftSlope <= rightSlope.
inline PLFunction convex_hull(const PLFunction& f) {
    const Rational& sl = f.left_slope();
    const Rational& sr = f.right_slope();
    if (sl > sr) throw ComputationError("no convex minorant: left end slope exceeds right end slope");
    const auto a = f.anchors();
    const std::size_t n = a.size();
    // The left ray of slope sl supports the anchor set at L, the right ray at R.
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (a[i].value - sl * a[i].x < a[lo].value - sl * a[lo].x) lo = i;
    for (std::size_t i = 1; i < n; ++i)
        if (a[i].value - sr * a[i].x <= a[hi].value - sr * a[hi].x) hi = i;
    std::vector<Anchor> chain;
    for (std::size_t i = lo; i <= hi; ++i) {
        while (chain.size() >= 2) {
            const Anchor& p = chain[chain.size() - 2];
            const Anchor& q = chain.back();
            // drop q unless p -> q -> a[i] turns strictly counter-clockwise
            Rational cross = (q.x - p.x) * (a[i].value - p.value) - (q.value - p.value) * (a[i].x - p.x);
            if (cross > 0) break;
            chain.pop_back();
        }
        chain.push_back(a[i]);
    }
    return PLFunction(std::move(chain), sl, sr);
}

/// Infimal convolution x -> inf_t f(t) + g(x - t) of convex functions,
/// computed as the Minkowski sum of epigraphs by merging sorted slopes.
inline PLFunction inf_conv(const PLFunction& f, const PLFunction& g) {
    if (!is_convex(f) || !is_convex(g)) throw ComputationError("infConv requires convex inputs");
    const Rational lo = std::max(f.left_slope(), g.left_slope());
    const Rational hi = std::min(f.right_slope(), g.right_slope());
    if (lo > hi) throw ComputationError("infimal convolution is identically -inf");

    struct Edge {
        Rational slope;
        Rational run;
    };
    Rational x0 = 0, v0 = 0;
    std::vector<Edge> edges;
    for (const PLFunction* h : {&f, &g}) {
        const auto a = h->anchors();
        const auto s = h->slopes();
        // start at the leftmost anchor whose right slope reaches lo
        std::size_t start = 0;
        while (start + 1 < a.size() && s[start + 1] < lo) ++start;
        x0 += a[start].x;
        v0 += a[start].value;
        for (std::size_t k = start + 1; k < a.size(); ++k) {
            const Rational& slope = s[k];
            if (slope > hi) break;
            edges.push_back(Edge{slope, a[k].x - a[k - 1].x});
        }
    }
    std::stable_sort(edges.begin(), edges.end(), [](const Edge& p, const Edge& q) { return p.slope < q.slope; });
    std::vector<Anchor> out{Anchor{x0, v0}};
    for (const auto& e : edges) {
        const Anchor& last = out.back();
        out.push_back(Anchor{last.x + e.run, last.value + e.slope * e.run});
    }
    return PLFunction(std::move(out), lo, hi);
}

}  // namespace wild

#endif  // WILD_PLFUN_HPP
