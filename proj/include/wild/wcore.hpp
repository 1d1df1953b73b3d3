#ifndef WILD_WCORE_HPP
#define WILD_WCORE_HPP

// Barcode model of finitely presented completely and continuously
// R-filtered objects over a field.
//
// Grading is cohomological: shift(M, n) moves degree d to d - n, so the
// twisted unit S(g)[-1] is the bar [g, +inf) in degree 1. Bars are
// birth-closed and death-open: a bar [a, b) contributes to Fil_r exactly
// when a <= r < b.

#include "wild/extreal.hpp"

#include <algorithm>
#include <map>
#include <span>
#include <tuple>
#include <vector>

namespace wild {

struct Bar {
    int degree = 0;
    ExtReal birth;
    ExtReal death = ExtReal::pos_inf();

    friend bool operator==(const Bar&, const Bar&) = default;
    friend auto operator<=>(const Bar& a, const Bar& b) {
        return std::tie(a.degree, a.birth, a.death) <=> std::tie(b.degree, b.birth, b.death);
    }

    bool contains(const Rational& r) const { return birth <= ExtReal(r) && ExtReal(r) < death; }
};

inline void check_bar(const Bar& b) {
    if (b.birth.is_pos_inf()) throw ComputationError("bar birth cannot be +inf");
    if (b.death.is_neg_inf()) throw ComputationError("bar death cannot be -inf");
    if (!(b.birth < b.death)) throw ComputationError("bar birth must lie strictly below its death");
}

/// A filtered object before completeness is enforced; births may be -inf.
struct PreWObject {
    std::vector<Bar> bars;
};

/// An object of the barcode model: finitely many bars, all births finite.
/// Bars are kept sorted by (degree, birth, death), which is the canonical
/// Krull-Schmidt normal form, so equality of values is isomorphism.
class WObject {
  public:
    WObject() = default;

    explicit WObject(std::vector<Bar> bars) : bars_(std::move(bars)) {
        for (const auto& b : bars_) {
            check_bar(b);
            if (!b.birth.is_finite()) throw ComputationError("WObject bars need finite births; use completion()");
        }
        std::sort(bars_.begin(), bars_.end());
    }

    std::span<const Bar> bars() const { return bars_; }
    bool empty() const { return bars_.empty(); }
    std::size_t size() const { return bars_.size(); }

    friend bool operator==(const WObject&, const WObject&) = default;

  private:
    std::vector<Bar> bars_;
};

/// The bar [r, +inf) in degree 0.
inline WObject twisted_unit(const Rational& r) { return WObject({Bar{0, ExtReal(r), ExtReal::pos_inf()}}); }
inline WObject unit() { return twisted_unit(0); }

/// Quotient by the part constant near -inf.
///
/// (-inf, +inf)_d is the constant object and is deleted; (-inf, b)_d is the
/// cofiber of the constant subobject onto it, which is [b, +inf)_{d-1}.
inline WObject completion(const PreWObject& p) {
    std::vector<Bar> out;
    out.reserve(p.bars.size());
    for (const auto& b : p.bars) {
        check_bar(b);
        if (b.birth.is_finite()) {
            out.push_back(b);
        } else if (b.death.is_finite()) {
            out.push_back(Bar{b.degree - 1, b.death, ExtReal::pos_inf()});
        }
    }
    return WObject(std::move(out));
}

inline PreWObject as_pre(const WObject& w) { return PreWObject{{w.bars().begin(), w.bars().end()}}; }

inline WObject shift(const WObject& a, int n) {
    std::vector<Bar> out(a.bars().begin(), a.bars().end());
    for (auto& b : out) b.degree -= n;
    return WObject(std::move(out));
}

inline WObject direct_sum(const WObject& a, const WObject& b) {
    std::vector<Bar> out(a.bars().begin(), a.bars().end());
    out.insert(out.end(), b.bars().begin(), b.bars().end());
    return WObject(std::move(out));
}

inline WObject direct_sum(std::span<const WObject> parts) {
    std::vector<Bar> out;
    for (const auto& w : parts) out.insert(out.end(), w.bars().begin(), w.bars().end());
    return WObject(std::move(out));
}

/// Derived tensor product of two bars, i.e. Tor of the cyclic modules
/// T^a1 L / T^b1 L and T^a2 L / T^b2 L over the Novikov ring.
inline void tensor_bars(const Bar& x, const Bar& y, std::vector<Bar>& out) {
    const ExtReal s = x.birth + y.birth;
    const ExtReal cross_lo = min(x.birth + y.death, y.birth + x.death);
    if (s < cross_lo) out.push_back(Bar{x.degree + y.degree, s, cross_lo});
    if (x.death.is_finite() && y.death.is_finite()) {
        ExtReal cross_hi = max(x.birth + y.death, y.birth + x.death);
        ExtReal top = x.death + y.death;
        if (cross_hi < top) out.push_back(Bar{x.degree + y.degree - 1, cross_hi, top});
    }
}

inline WObject tensor(const WObject& a, const WObject& b) {
    std::vector<Bar> out;
    for (const auto& x : a.bars())
        for (const auto& y : b.bars()) tensor_bars(x, y, out);
    return WObject(std::move(out));
}

/// Multiplicative rescaling of the filtration index by t > 0.
inline WObject scale(const WObject& a, const Rational& t) {
    if (t <= 0) throw ComputationError("scale factor must be positive");
    std::vector<Bar> out(a.bars().begin(), a.bars().end());
    for (auto& b : out) {
        b.birth = b.birth.scaled(t);
        b.death = b.death.scaled(t);
    }
    return WObject(std::move(out));
}

inline bool iso_equal(const WObject& a, const WObject& b) { return a == b; }

/// Per-degree dimension of Fil_r; degrees with dimension zero are omitted.
inline std::map<int, int> fil_dim(std::span<const Bar> bars, const Rational& r) {
    std::map<int, int> dims;
    for (const auto& b : bars)
        if (b.contains(r)) ++dims[b.degree];
    return dims;
}

inline std::map<int, int> fil_dim(const WObject& a, const Rational& r) { return fil_dim(a.bars(), r); }
inline std::map<int, int> fil_dim(const PreWObject& a, const Rational& r) { return fil_dim(a.bars, r); }

/// Signed count sum_d (-1)^d dim Fil_r in degree d.
inline int euler_characteristic(const WObject& a, const Rational& r) {
    int chi = 0;
    for (const auto& [deg, dim] : fil_dim(a, r)) chi += (deg % 2 == 0) ? dim : -dim;
    return chi;
}

}  // namespace wild

#endif  // WILD_WCORE_HPP
