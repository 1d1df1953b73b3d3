#ifndef WILD_NOVIKOV_HPP
#define WILD_NOVIKOV_HPP

// Cyclic modules over the Novikov monoid algebra and a brute-force Tor
// oracle on a truncated exponent grid.
//
// A bar [a, b)_d is the module T^a L / T^b L placed in degree d. The oracle
// resolves L/T^{l1} by L(-l1) --T^{l1}--> L, tensors with L/T^{l2}, and
// computes homology by rank of the resulting matrix over the truncated
// algebra with basis T^{k eps}, 0 <= k eps <= B. It shares no code with
// wcore's tensor formula.

#include "wild/wcore.hpp"

#include <map>
#include <span>
#include <utility>
#include <vector>

namespace wild {

struct NovikovPresentation {
    Rational offset;
    ExtReal length;
    int degree = 0;

    friend bool operator==(const NovikovPresentation&, const NovikovPresentation&) = default;
};

inline NovikovPresentation bar_to_module(const Bar& b) {
    if (!b.birth.is_finite()) throw ComputationError("bar with -inf birth has no cyclic presentation");
    check_bar(b);
    ExtReal length = b.death.is_finite() ? ExtReal(b.death.value() - b.birth.value()) : ExtReal::pos_inf();
    return NovikovPresentation{b.birth.value(), length, b.degree};
}

inline Bar module_to_bar(const NovikovPresentation& m) {
    if (!(ExtReal(0) < m.length)) throw ComputationError("module length must be positive");
    ExtReal death = m.length.is_finite() ? ExtReal(m.offset + m.length.value()) : ExtReal::pos_inf();
    return Bar{m.degree, ExtReal(m.offset), death};
}

struct TruncatedGrid {
    Rational step;
    Rational bound;

    std::size_t points() const { return static_cast<std::size_t>(bound / step) + 1; }
    Rational at(std::size_t k) const { return step * static_cast<long long>(k); }
};

/// Homology dimensions of L/T^{l1} (x)^L L/T^{l2} at each grid exponent,
/// keyed by cohomological degree (Tor_0 in degree 0, Tor_1 in degree -1).
struct KoszulProfile {
    TruncatedGrid grid;
    std::map<int, std::vector<int>> dims;

    int dim(int degree, std::size_t k) const {
        auto it = dims.find(degree);
        return it == dims.end() ? 0 : it->second[k];
    }
};

namespace detail {

inline bool is_multiple(const Rational& q, const Rational& step) {
    return boost::multiprecision::denominator(Rational(q / step)) == 1;
}

/// Incremental rank over Q of a growing set of sparse column vectors.
class IncrementalRank {
  public:
    /// Returns true when the column is independent of those added so far.
    bool add(std::map<std::size_t, Rational> column) {
        for (const auto& [pivot, row] : basis_) {
            auto it = column.find(pivot);
            if (it == column.end()) continue;
            const Rational factor = it->second / row.at(pivot);
            for (const auto& [i, v] : row) {
                Rational& entry = column[i];
                entry -= factor * v;
                if (entry == 0) column.erase(i);
            }
        }
        if (column.empty()) return false;
        const std::size_t pivot = column.begin()->first;
        basis_.emplace(pivot, std::move(column));
        return true;
    }

    std::size_t rank() const { return basis_.size(); }

  private:
    std::map<std::size_t, std::map<std::size_t, Rational>> basis_;
};

}  // namespace detail

inline KoszulProfile truncated_koszul_homology(const ExtReal& l1, const ExtReal& l2, const TruncatedGrid& grid) {
    if (!(grid.step > 0) || !(grid.bound > 0)) throw ComputationError("grid step and bound must be positive");
    if (!detail::is_multiple(grid.bound, grid.step)) throw ComputationError("grid too coarse: step must divide bound");
    for (const ExtReal* l : {&l1, &l2}) {
        if (!(ExtReal(0) < *l)) throw ComputationError("module lengths must be positive");
        if (l->is_finite() && !detail::is_multiple(l->value(), grid.step))
            throw ComputationError("grid too coarse: lengths must be multiples of the step");
    }
    if (l1.is_finite() && l2.is_finite() && l1.value() + l2.value() > grid.bound)
        throw ComputationError("grid bound must cover l1 + l2");

    const std::size_t n = grid.points();
    // Basis of C0 = L/T^{l2}: T^{k eps} with k eps < l2 (and <= B).
    // Basis of C1 = (L/T^{l2})(-l1): e T^{k eps}, exponent k eps + l1 <= B.
    auto below = [](const Rational& x, const ExtReal& bound) { return ExtReal(x) < bound; };
    std::vector<std::size_t> c0_index(n, SIZE_MAX);
    std::size_t c0_size = 0;
    for (std::size_t k = 0; k < n; ++k)
        if (below(grid.at(k), l2)) c0_index[k] = c0_size++;

    // columns of d: C1 -> C0, listed in order of exponent
    std::vector<std::pair<std::size_t, std::map<std::size_t, Rational>>> columns;  // (exponent index, column)
    if (l1.is_finite()) {
        const std::size_t shift = static_cast<std::size_t>(l1.value() / grid.step);
        for (std::size_t j = 0; j + shift < n; ++j) {
            if (!below(grid.at(j), l2)) continue;
            std::map<std::size_t, Rational> col;
            const std::size_t target = j + shift;
            if (c0_index[target] != SIZE_MAX) col.emplace(c0_index[target], Rational(1));
            columns.emplace_back(target, std::move(col));
        }
    }

    // cumulative dims over exponents <= r, then differences
    std::vector<int> tor0(n), tor1(n);
    detail::IncrementalRank rank;
    std::size_t next = 0;
    int c0_cum = 0, c1_cum = 0;
    int prev0 = 0, prev1 = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (c0_index[k] != SIZE_MAX) ++c0_cum;
        while (next < columns.size() && columns[next].first == k) {
            rank.add(columns[next].second);
            ++c1_cum;
            ++next;
        }
        const int h0 = c0_cum - static_cast<int>(rank.rank());
        const int h1 = c1_cum - static_cast<int>(rank.rank());
        tor0[k] = h0 - prev0;
        tor1[k] = h1 - prev1;
        prev0 = h0;
        prev1 = h1;
    }

    KoszulProfile out{grid, {}};
    out.dims[0] = std::move(tor0);
    out.dims[-1] = std::move(tor1);
    return out;
}

/// scale_t(a (x) b) == scale_t(a) (x) scale_t(b) for every pair.
inline bool scale_compatibility(const Rational& t, std::span<const std::pair<Bar, Bar>> pairs) {
    if (t <= 0) throw ComputationError("scale factor must be positive");
    for (const auto& [a, b] : pairs) {
        WObject wa({a}), wb({b});
        if (!iso_equal(scale(tensor(wa, wb), t), tensor(scale(wa, t), scale(wb, t)))) return false;
    }
    return true;
}

}  // namespace wild

#endif  // WILD_NOVIKOV_HPP
