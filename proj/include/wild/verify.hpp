#ifndef WILD_VERIFY_HPP
#define WILD_VERIFY_HPP

// Acceptance suite: random corpora, brute-force oracles and the ten checks
// run by `wildctl verify` and by the acceptance test binary.

#include "wild/fourier.hpp"
#include "wild/io.hpp"
#include "wild/novikov.hpp"

#include <chrono>
#include <climits>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iterator>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace wild::verify {

using Rng = std::mt19937_64;
using io::Json;

// ---------------------------------------------------------------------------
// Random generators

inline long long uniform(Rng& rng, long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

/// Rational p/q with q in [1, max_den] and value in [lo, hi].
inline Rational random_rational(Rng& rng, long long lo, long long hi, long long max_den) {
    const long long q = uniform(rng, 1, max_den);
    return make_rational(uniform(rng, lo * q, hi * q), q);
}

inline std::vector<Rational> distinct_sorted(Rng& rng, std::size_t n, long long lo, long long hi, long long max_den) {
    std::set<Rational> s;
    while (s.size() < n) s.insert(random_rational(rng, lo, hi, max_den));
    return {s.begin(), s.end()};
}

inline PLFunction from_slopes(const std::vector<Rational>& xs, const std::vector<Rational>& slopes, const Rational& v0) {
    std::vector<Anchor> anchors{Anchor{xs.front(), v0}};
    for (std::size_t i = 1; i < xs.size(); ++i)
        anchors.push_back(Anchor{xs[i], anchors.back().value + slopes[i] * (xs[i] - xs[i - 1])});
    return PLFunction(std::move(anchors), slopes.front(), slopes.back());
}

/// Convex PL function with 1..max_breaks breakpoints and strictly
/// increasing slopes. With straddle set, leftSlope < 0 < rightSlope.
inline PLFunction random_convex(Rng& rng, std::size_t max_breaks = 10, bool straddle = false) {
    const std::size_t k = static_cast<std::size_t>(uniform(rng, 1, static_cast<long long>(max_breaks)));
    const auto xs = distinct_sorted(rng, k, -6, 6, 4);
    auto slopes = distinct_sorted(rng, k + 1, -5, 5, 3);
    if (straddle) {
        if (!(slopes.front() < 0)) slopes.front() = -1 - random_rational(rng, 0, 2, 3);
        if (!(slopes.back() > 0)) slopes.back() = 1 + random_rational(rng, 0, 2, 3);
        std::sort(slopes.begin(), slopes.end());
        slopes.erase(std::unique(slopes.begin(), slopes.end()), slopes.end());
        while (slopes.size() < k + 1) slopes.push_back(slopes.back() + 1);
    }
    return from_slopes(xs, slopes, random_rational(rng, -4, 4, 4));
}

/// Arbitrary PL function with 1..max_breaks breakpoints.
inline PLFunction random_pl(Rng& rng, std::size_t max_breaks = 12) {
    const std::size_t k = static_cast<std::size_t>(uniform(rng, 1, static_cast<long long>(max_breaks)));
    const auto xs = distinct_sorted(rng, k, -6, 6, 4);
    std::vector<Anchor> anchors;
    for (const auto& x : xs) anchors.push_back(Anchor{x, random_rational(rng, -5, 5, 3)});
    // one in four ends is flat
    auto end_slope = [&] { return uniform(rng, 0, 3) == 0 ? Rational(0) : random_rational(rng, -3, 3, 3); };
    Rational l = end_slope(), r = end_slope();
    return PLFunction(std::move(anchors), l, r);
}

/// A cell with randomly chosen end types over a random PL potential.
inline Cell random_cell(Rng& rng) {
    PLFunction f = random_pl(rng, 8);
    const int shift = static_cast<int>(uniform(rng, -1, 1));
    if (uniform(rng, 0, 7) == 0) return point_cell(random_rational(rng, -6, 6, 4), std::move(f), shift);
    auto ends = distinct_sorted(rng, 2, -7, 7, 4);
    auto end = [&](const Rational& at, bool left) {
        switch (uniform(rng, 0, 2)) {
            case 0: return EndSpec{left ? ExtReal::neg_inf() : ExtReal::pos_inf(), false};
            case 1: return EndSpec{ExtReal(at), false};
            default: return EndSpec{ExtReal(at), true};
        }
    };
    return Cell{end(ends[0], true), end(ends[1], false), std::move(f), shift};
}

// ---------------------------------------------------------------------------
// Probe helpers

/// Critical values of the sweep for a cell list: values at the marks and
/// the finite tail limits.
inline std::vector<Rational> critical_values(std::span<const Cell> cells) {
    std::set<Rational> vs;
    for (const auto& c : cells) {
        for (const auto& a : c.potential.anchors()) {
            if (c.contains(a.x)) vs.insert(a.value);
        }
        if (c.left.position.is_finite()) vs.insert(c.potential(c.left.position.value()));
        if (c.right.position.is_finite()) vs.insert(c.potential(c.right.position.value()));
    }
    return {vs.begin(), vs.end()};
}

struct ProbeSet {
    std::vector<Rational> critical;
    std::vector<Rational> generic;
};

/// Critical values, and points offset from them that avoid every critical value.
inline ProbeSet level_probes(std::span<const Cell> cells) {
    ProbeSet p;
    p.critical = critical_values(cells);
    std::set<Rational> crit(p.critical.begin(), p.critical.end());
    std::set<Rational> gen;
    const Rational offsets[] = {make_rational(1, 997), make_rational(1, 7), Rational(1)};
    for (const auto& v : p.critical)
        for (const auto& d : offsets) {
            for (const Rational& r : {v - d, v + d})
                if (!crit.count(r)) gen.insert(r);
        }
    for (std::size_t i = 0; i + 1 < p.critical.size(); ++i) gen.insert((p.critical[i] + p.critical[i + 1]) / 2);
    if (p.critical.empty()) gen.insert(0);
    for (const auto& r : crit) gen.erase(r);
    p.generic.assign(gen.begin(), gen.end());
    return p;
}

/// Rational probes strictly inside the conjugate domain of a convex f:
/// its breakpoints, midpoints, and `extra` random points.
inline std::vector<Rational> interior_probes(const Conjugate& c, Rng& rng, int extra) {
    std::set<Rational> ys;
    std::vector<Rational> marks{c.lo};
    for (const auto& a : c.function.anchors())
        if (c.lo < a.x && a.x < c.hi) marks.push_back(a.x);
    marks.push_back(c.hi);
    for (std::size_t i = 0; i < marks.size(); ++i) {
        if (i > 0 && i + 1 < marks.size()) ys.insert(marks[i]);
        if (i + 1 < marks.size()) ys.insert((marks[i] + marks[i + 1]) / 2);
    }
    for (int k = 0; k < extra; ++k) {
        const long long q = uniform(rng, 2, 50);
        const Rational t = make_rational(uniform(rng, 1, q - 1), q);
        ys.insert(c.lo + (c.hi - c.lo) * t);
    }
    return {ys.begin(), ys.end()};
}

// ---------------------------------------------------------------------------
// 2-D grid oracle

/// Components of {(x, y) : f(x) + g(y) < r} counted on a square grid by
/// union-find. Needs both tails of f and g rising to +inf, and r at least
/// `margin` away from every sum of anchor values. The step h satisfies
/// 3 (Lf + Lg) h < margin, where Lf, Lg are the largest absolute slopes;
/// grid components with no point below r - 2 (Lf + Lg) h are discarded
/// as boundary artefacts.
class GridOracle {
  public:
    GridOracle(const PLFunction& f, const PLFunction& g, const Rational& margin) : f_(f), g_(g) {
        if (!(f.left_slope() < 0 && f.right_slope() > 0 && g.left_slope() < 0 && g.right_slope() > 0))
            throw ComputationError("grid oracle needs potentials rising to +inf at both ends");
        auto lip = [](const PLFunction& h) {
            Rational m = 0;
            for (const auto& s : h.slopes()) m = std::max(m, Rational(abs(s)));
            return m;
        };
        lipschitz_ = lip(f) + lip(g);
        // h = 1/n with n > 3 L / margin
        const Rational need = 3 * lipschitz_ / margin;
        n_ = static_cast<long long>(boost::multiprecision::numerator(need) / boost::multiprecision::denominator(need)) + 1;
        step_ = make_rational(1, n_);
    }

    const Rational& step() const { return step_; }

    int components(const Rational& r) const {
        const Rational gmin = minimum(g_), fmin = minimum(f_);
        const auto [x0, x1] = window(f_, r - gmin);
        const auto [y0, y1] = window(g_, r - fmin);
        // exact values on the grid, brought to a common integer scale
        std::vector<Rational> fx, gy;
        for (long long i = x0; i <= x1; ++i) fx.push_back(f_(make_rational(i, n_)));
        for (long long j = y0; j <= y1; ++j) gy.push_back(g_(make_rational(j, n_)));
        Integer den = boost::multiprecision::denominator(r);
        const Rational deep = r - 2 * lipschitz_ * step_;
        den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(deep));
        for (const auto& v : fx) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(v));
        for (const auto& v : gy) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(v));
        auto scaled = [&](const Rational& v) {
            Rational s = v * Rational(den);
            return static_cast<long long>(boost::multiprecision::numerator(s));
        };
        std::vector<long long> F, G;
        for (const auto& v : fx) F.push_back(scaled(v));
        for (const auto& v : gy) G.push_back(scaled(v));
        const long long R = scaled(r), D = scaled(deep);

        const std::size_t w = F.size(), h = G.size();
        std::vector<std::int32_t> parent(w * h, -1);
        std::vector<char> is_deep(w * h, 0);
        auto find = [&](std::int32_t i) {
            while (parent[i] != i) {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            return i;
        };
        auto unite = [&](std::int32_t a, std::int32_t b) {
            a = find(a);
            b = find(b);
            if (a == b) return;
            if (a > b) std::swap(a, b);
            parent[b] = a;
            is_deep[a] = is_deep[a] || is_deep[b];
        };
        for (std::size_t j = 0; j < h; ++j)
            for (std::size_t i = 0; i < w; ++i) {
                const long long v = F[i] + G[j];
                if (v >= R) continue;
                const auto id = static_cast<std::int32_t>(j * w + i);
                parent[id] = id;
                is_deep[id] = v < D;
                if (i > 0 && parent[id - 1] >= 0) unite(id, id - 1);
                if (j > 0 && parent[id - w] >= 0) unite(id, static_cast<std::int32_t>(id - w));
            }
        int count = 0;
        for (std::size_t k = 0; k < w * h; ++k)
            if (parent[k] == static_cast<std::int32_t>(k) && is_deep[k]) ++count;
        return count;
    }

  private:
    static Rational minimum(const PLFunction& h) {
        Rational m = h.anchors().front().value;
        for (const auto& a : h.anchors()) m = std::min(m, a.value);
        return m;
    }

    /// Grid index range covering {x : h(x) < level}, with one step of slack.
    std::pair<long long, long long> window(const PLFunction& h, const Rational& level) const {
        const auto& first = h.anchors().front();
        const auto& last = h.anchors().back();
        Rational lo = std::min(first.x, first.x + (level - first.value) / h.left_slope());
        Rational hi = std::max(last.x, last.x + (level - last.value) / h.right_slope());
        auto floor_idx = [&](const Rational& x) {
            Rational s = x * n_;
            Integer q = boost::multiprecision::numerator(s) / boost::multiprecision::denominator(s);
            return static_cast<long long>(q) - 2;
        };
        return {floor_idx(lo), floor_idx(hi) + 4};
    }

    PLFunction f_, g_;
    Rational lipschitz_;
    long long n_ = 1;
    Rational step_;
};

/// Potential with integer anchors and values, both tails rising.
inline PLFunction random_well(Rng& rng) {
    const std::size_t k = static_cast<std::size_t>(uniform(rng, 1, 4));
    std::vector<Anchor> anchors;
    long long x = uniform(rng, -3, 0);
    for (std::size_t i = 0; i < k; ++i) {
        anchors.push_back(Anchor{Rational(x), Rational(uniform(rng, 0, 4))});
        x += uniform(rng, 1, 2);
    }
    return PLFunction(std::move(anchors), Rational(-uniform(rng, 1, 2)), Rational(uniform(rng, 1, 2)));
}

// ---------------------------------------------------------------------------
// Criteria

struct Options {
    std::uint64_t seed = 20240601;
    int probes = 6;                          // random interior probes per function
    std::optional<Rational> grid_eps;        // fixed step for the Koszul oracle
    std::string golden_path;                 // doubleWell golden barcode
    std::string fixture_path;                // doubleWell potential
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
    std::optional<double> budget;  // seconds
    std::string tolerance = "exact";
};

namespace detail {

inline std::string describe(const WObject& w) { return io::to_json(w).dump(); }

struct Failure {
    std::string message;
};

inline void require(bool ok, const std::function<std::string()>& message) {
    if (!ok) throw Failure{message()};
}

inline std::vector<PLFunction> convex_corpus(std::uint64_t seed, std::size_t n) {
    Rng rng(seed ^ 0xC0FFEEULL);
    std::vector<PLFunction> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(random_convex(rng, 10));
    return out;
}

inline std::vector<PLFunction> pl_corpus(std::uint64_t seed, std::size_t n) {
    Rng rng(seed ^ 0xBADA55ULL);
    std::vector<PLFunction> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(random_pl(rng, 12));
    return out;
}

inline std::vector<std::vector<Cell>> cell_corpus(std::uint64_t seed, std::size_t n) {
    Rng rng(seed ^ 0x5EEDULL);
    std::vector<std::vector<Cell>> out;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Cell> cells;
        const long long k = uniform(rng, 1, 4);
        for (long long j = 0; j < k; ++j) cells.push_back(random_cell(rng));
        out.push_back(std::move(cells));
    }
    return out;
}

inline PLFunction double_well() {
    return PLFunction({Anchor{-1, 0}, Anchor{0, 2}, Anchor{1, 1}}, -2, 2);
}

inline std::string c1_exp_vanishing(const Options& o) {
    require(sublevel_barcode(exp_sheaf().summands).bars ==
                std::vector<Bar>{Bar{1, ExtReal::neg_inf(), ExtReal::pos_inf()}},
            [] { return "sublevel barcode of exp is not (-inf, inf)_1"; });
    require(pi_shriek(exp_sheaf()).empty(), [] { return "pi_! exp is nonzero"; });
    Rng rng(o.seed ^ 0xE4FULL);
    int checked = 1;
    for (int i = 0; i < 40; ++i) {
        Rational a = random_rational(rng, -5, 5, 6);
        if (a == 0) a = 1;
        const WSheaf s = sheaf_of(PLFunction::affine(a, random_rational(rng, -3, 3, 4)));
        const WObject w = pi_shriek(s);
        require(w.empty(), [&] { return "pi_! S(" + to_string(a) + " x + c) = " + describe(w); });
        const WSheaf other = sheaf_of(random_pl(rng, 6));
        const WSheaf pair[] = {s, other};
        require(kunneth(pair).empty(), [&] { return "Kunneth with a twisted exponential factor is nonzero"; });
        checked += 2;
    }
    require(pi_shriek(sheaf_of(PLFunction::constant(0))) == WObject({Bar{1, 0, ExtReal::pos_inf()}}),
            [] { return "pi_! S(0) is not [0, inf)_1"; });
    return std::to_string(checked) + " twisted exponentials vanish";
}

inline std::string c2_fourier_legendre(const Options& o) {
    const auto corpus = convex_corpus(o.seed, 60);
    Rng rng(o.seed ^ 0x1E6ULL);
    std::size_t probes = 0;
    for (const auto& f : corpus) {
        const Conjugate c = legendre(f);
        for (const auto& y : interior_probes(c, rng, o.probes)) {
            const WObject got = fourier_stalk(sheaf_of(f), y);
            const WObject want({Bar{1, ExtReal(c.function(y)), ExtReal::pos_inf()}});
            require(got == want, [&] {
                return "f = " + io::to_json(f).dump() + ", y = " + to_string(y) + ": got " + describe(got) + ", want " +
                       describe(want);
            });
            ++probes;
        }
    }
    return std::to_string(corpus.size()) + " functions, " + std::to_string(probes) + " probes";
}

inline std::string c3_inversion(const Options& o) {
    const auto corpus = convex_corpus(o.seed, 60);
    std::size_t probes = 0;
    for (const auto& f : corpus) {
        const InversionReport r = inversion_report(f);
        require(r.ok, [&] { return "f = " + io::to_json(f).dump() + " fails at x = " + to_string(*r.first_failure); });
        probes += r.probes.size();
    }
    return std::to_string(corpus.size()) + " functions, " + std::to_string(probes) + " probes";
}

inline std::string c4_koszul(const Options& o) {
    Rng rng(o.seed ^ 0x4B05ULL);
    std::size_t points = 0;
    for (int i = 0; i < 100; ++i) {
        const Rational eps = o.grid_eps ? *o.grid_eps : make_rational(1, uniform(rng, 1, 8));
        const long long max_units = static_cast<long long>(Rational(16 / eps).convert_to<double>());
        if (max_units < 2) throw ComputationError("grid too coarse: step must leave room below 16");
        const long long k1 = uniform(rng, 1, max_units - 1);
        const long long k2 = uniform(rng, 1, max_units - k1);
        const long long kb = uniform(rng, k1 + k2, max_units);
        const Rational l1 = eps * k1, l2 = eps * k2;
        const TruncatedGrid grid{eps, eps * kb};
        const KoszulProfile prof = truncated_koszul_homology(l1, l2, grid);
        const WObject t = tensor(WObject({Bar{0, 0, l1}}), WObject({Bar{0, 0, l2}}));
        for (std::size_t k = 0; k < grid.points(); ++k) {
            const auto dims = fil_dim(t, grid.at(k));
            for (int deg : {0, -1}) {
                const int want = dims.count(deg) ? dims.at(deg) : 0;
                require(prof.dim(deg, k) == want, [&] {
                    return "l1 = " + to_string(l1) + ", l2 = " + to_string(l2) + ", r = " + to_string(grid.at(k)) +
                           ", degree " + std::to_string(deg);
                });
            }
            for (const auto& [deg, d] : dims)
                require(deg == 0 || deg == -1, [&] { return "tensor produced degree " + std::to_string(deg); });
            ++points;
        }
    }
    return "100 pairs, " + std::to_string(points) + " grid points";
}

inline void compare_levels(std::span<const Cell> cells, std::size_t& checked) {
    const PreWObject bc = sublevel_barcode(cells);
    const ProbeSet p = level_probes(cells);
    auto fail = [&](const Rational& r, const char* conv) {
        return [cells, r, conv]() -> std::string {
            const Json j = io::to_json(WSheaf{{cells.begin(), cells.end()}});
            return std::string(conv) + " mismatch at r = " + to_string(r) + " for " + j.dump();
        };
    };
    for (const auto& r : p.generic) {
        const auto want = sublevel_dims(cells, r);
        require(fil_dim(bc, r) == want, fail(r, "closed"));
        require(strict_fil_dim(bc.bars, r) == want, fail(r, "strict"));
        ++checked;
    }
    for (const auto& r : p.critical) {
        require(strict_fil_dim(bc.bars, r) == sublevel_dims(cells, r), fail(r, "strict"));
        ++checked;
    }
}

inline std::string c5_persistence(const Options& o) {
    std::size_t checked = 0;
    const auto pls = pl_corpus(o.seed, 220);
    for (const auto& f : pls) {
        const Cell c = whole_line_cell(f);
        compare_levels(std::span<const Cell>(&c, 1), checked);
    }
    const auto configs = cell_corpus(o.seed, 40);
    for (const auto& cells : configs) compare_levels(cells, checked);
    return std::to_string(pls.size()) + " potentials, " + std::to_string(configs.size()) + " cell lists, " +
           std::to_string(checked) + " levels";
}

inline std::string c6_additivity(const Options& o) {
    Rng rng(o.seed ^ 0xADD5ULL);
    std::size_t checked = 0;
    for (int i = 0; i < 100; ++i) {
        const PLFunction f = random_pl(rng, 8), g = random_pl(rng, 8);
        const PLFunction sum = add(f, g);
        // independent rebuild of f + g from pointwise samples
        std::set<Rational> xs;
        for (const auto& a : f.anchors()) xs.insert(a.x);
        for (const auto& a : g.anchors()) xs.insert(a.x);
        for (int k = 0; k < 4; ++k) xs.insert(random_rational(rng, -8, 8, 5));
        std::vector<Anchor> samples;
        for (const auto& x : xs) samples.push_back(Anchor{x, eval(f, x) + eval(g, x)});
        const PLFunction rebuilt(std::move(samples), f.left_slope() + g.left_slope(), f.right_slope() + g.right_slope());
        require(rebuilt == sum, [&] { return "add(f, g) differs from the pointwise sum"; });

        // stalks: S(f) (x) S(g) = S(f + g) at every probe x
        for (const auto& x : xs) {
            const WObject lhs = tensor(sheaf_stalk(sheaf_of(f), x), sheaf_stalk(sheaf_of(g), x));
            const WObject rhs = sheaf_stalk(sheaf_of(sum), x);
            require(lhs == rhs && rhs == WObject({Bar{0, ExtReal(f(x) + g(x)), ExtReal::pos_inf()}}),
                    [&] { return "stalk tensor mismatch at x = " + to_string(x); });
            ++checked;
        }
        // transform stalks of S(f + g) against sublevel dimensions of f + g + x y
        for (int k = 0; k < 3; ++k) {
            const Rational y = random_rational(rng, -3, 3, 4);
            const Cell twisted = whole_line_cell(add_linear(rebuilt, y));
            const WObject stalk = fourier_stalk(sheaf_of(sum), y);
            const PreWObject raw = sublevel_barcode(twisted);
            require(stalk == completion(raw), [&] { return "transform stalk differs at y = " + to_string(y); });
            const ProbeSet p = level_probes(std::span<const Cell>(&twisted, 1));
            for (const auto& r : p.generic) {
                require(fil_dim(raw, r) == sublevel_dims(twisted, r),
                        [&] { return "sublevel count of f + g + xy differs at r = " + to_string(r); });
                ++checked;
            }
        }
    }
    return "100 pairs, " + std::to_string(checked) + " checks";
}

inline std::string c7_intertwining(const Options& o) {
    Rng rng(o.seed ^ 0x1A7ULL);
    std::size_t probes = 0;
    for (int i = 0; i < 25; ++i) {
        const PLFunction f = random_convex(rng, 6, true), g = random_convex(rng, 6, true);
        const Conjugate cf = legendre(f), cg = legendre(g);
        std::set<Rational> ys;
        for (const auto& y : interior_probes(cf, rng, 2)) ys.insert(y);
        for (const auto& y : interior_probes(cg, rng, 2)) ys.insert(y);
        for (const Rational* e : {&cf.lo, &cf.hi, &cg.lo, &cg.hi}) {
            ys.insert(*e);
            ys.insert(*e - make_rational(1, 3));
            ys.insert(*e + make_rational(1, 3));
        }
        const std::vector<Rational> probe_list(ys.begin(), ys.end());
        const IntertwiningReport rep = intertwining_report(f, g, probe_list);
        require(rep.ok, [&] { return rep.failure; });

        // (f box g)* = f* + g* on the common domain
        const Conjugate cfg = legendre(inf_conv(f, g));
        for (const auto& y : probe_list) {
            if (!cf.in_domain(y) || !cg.in_domain(y)) continue;
            require(cfg.in_domain(y) && cfg.function(y) == cf.function(y) + cg.function(y),
                    [&] { return "conjugate of infConv is not the sum of conjugates at y = " + to_string(y); });
        }
        probes += probe_list.size();
    }
    return "25 pairs, " + std::to_string(probes) + " probes";
}

inline std::string c8_kunneth(const Options& o) {
    Rng rng(o.seed ^ 0x2DULL);
    std::size_t levels = 0;
    for (int i = 0; i < 10; ++i) {
        const PLFunction f = random_well(rng), g = random_well(rng);
        // critical sums are integers; k + 1/4 and k + 3/4 sit 1/4 away from all of them
        long long lo = LLONG_MAX, hi = LLONG_MIN;
        for (const auto& a : f.anchors())
            for (const auto& b : g.anchors()) {
                const long long s = static_cast<long long>(boost::multiprecision::numerator(Rational(a.value + b.value)));
                lo = std::min(lo, s);
                hi = std::max(hi, s);
            }
        std::vector<Rational> rs;
        for (long long k = lo - 1; k <= hi + 3; ++k) {
            rs.push_back(make_rational(4 * k + 1, 4));
            rs.push_back(make_rational(4 * k + 3, 4));
        }
        std::shuffle(rs.begin(), rs.end(), rng);
        if (rs.size() > 10) rs.resize(10);
        std::sort(rs.begin(), rs.end());

        const WSheaf pair[] = {sheaf_of(f), sheaf_of(g)};
        const WObject k = kunneth(pair);
        const GridOracle grid(f, g, make_rational(1, 4));
        for (const auto& r : rs) {
            const auto dims = fil_dim(k, r);
            const int want = grid.components(r);
            const int got = dims.count(2) ? dims.at(2) : 0;
            require(got == want, [&] {
                return "f = " + io::to_json(f).dump() + ", g = " + io::to_json(g).dump() + ", r = " + to_string(r) +
                       ": kunneth " + std::to_string(got) + ", grid " + std::to_string(want);
            });
            ++levels;
        }
    }
    return "10 pairs, " + std::to_string(levels) + " levels";
}

inline std::string c9_scaling(const Options& o) {
    const Rational ts[] = {make_rational(1, 2), Rational(2), make_rational(7, 3)};
    Rng rng(o.seed ^ 0x5CA1EULL);
    std::vector<std::pair<Bar, Bar>> pairs;
    auto random_bar = [&] {
        const Rational b = random_rational(rng, -5, 5, 4);
        const ExtReal d = uniform(rng, 0, 3) == 0 ? ExtReal::pos_inf() : ExtReal(b + random_rational(rng, 1, 6, 4));
        return Bar{static_cast<int>(uniform(rng, -1, 2)), ExtReal(b), d};
    };
    for (int i = 0; i < 100; ++i) pairs.emplace_back(random_bar(), random_bar());
    const auto convex = convex_corpus(o.seed, 60);
    const auto general = pl_corpus(o.seed, 220);
    std::size_t checked = 0;
    for (const auto& t : ts) {
        require(scale_compatibility(t, pairs), [&] { return "tensor scaling fails for t = " + to_string(t); });
        for (const auto* corpus : {&convex, &general})
            for (const auto& f : *corpus) {
                const WObject base = pi_shriek(sheaf_of(f));
                require(scale(base, t) == pi_shriek(sheaf_of(scale_values(f, t))),
                        [&] { return "pi_! scaling fails for t = " + to_string(t) + ", f = " + io::to_json(f).dump(); });
                for (const Rational& r : {Rational(0), make_rational(3, 2), make_rational(-7, 5)})
                    require(fil_dim(scale(base, t), r * t) == fil_dim(base, r),
                            [&] { return "Fil_{rt} of the rescaled object differs"; });
                for (const Rational& y : {Rational(0), make_rational(1, 3), make_rational(-2, 1)}) {
                    require(fourier_stalk(sheaf_of(scale_values(f, t)), y) == scale(fourier_stalk(sheaf_of(f), y / t), t),
                            [&] { return "transform stalk scaling fails at y = " + to_string(y); });
                }
                ++checked;
            }
    }
    return "t in {1/2, 2, 7/3}, " + std::to_string(checked) + " functions, 100 bar pairs";
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{"cannot read " + path};
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::string c10_double_well(const Options& o) {
    PLFunction f = double_well();
    if (!o.fixture_path.empty()) f = io::plfunction_from_json(Json::parse(read_file(o.fixture_path)));
    require(f == double_well(), [] { return "doubleWell fixture differs from the reference potential"; });
    const WObject w = pi_shriek(sheaf_of(f));
    const WObject want({Bar{1, 0, ExtReal::pos_inf()}, Bar{1, 1, 2}});
    require(w == want, [&] { return "got " + describe(w); });
    std::string note = "matches {[0,inf)_1, [1,2)_1}";
    if (!o.golden_path.empty()) {
        const Json golden = Json::parse(read_file(o.golden_path));
        require(io::wobject_from_json(golden) == w && golden == io::to_json(w), [] { return "golden file differs"; });
        note += " and the golden file";
    }
    return note;
}

}  // namespace detail

struct Criterion {
    int id;
    const char* name;
    std::optional<double> budget;
    std::string (*run)(const Options&);
};

inline const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all = {
        {1, "prop-pi-shriek-exp-vanishes", 0.1, detail::c1_exp_vanishing},
        {2, "prop-fourier-legendre", 10.0, detail::c2_fourier_legendre},
        {3, "thm-fourier-inversion-d1", 20.0, detail::c3_inversion},
        {4, "tensor-vs-koszul-oracle", 10.0, detail::c4_koszul},
        {5, "persistence-vs-dimension-oracle", 10.0, detail::c5_persistence},
        {6, "prop-tensor-additivity", std::nullopt, detail::c6_additivity},
        {7, "convolution-intertwining", std::nullopt, detail::c7_intertwining},
        {8, "kunneth-2d-oracle", 30.0, detail::c8_kunneth},
        {9, "rescaling-coaction", std::nullopt, detail::c9_scaling},
        {10, "nonconvex-local-extrema", std::nullopt, detail::c10_double_well},
    };
    return all;
}

inline CriterionResult run_criterion(const Criterion& c, const Options& o) {
    CriterionResult res{c.id, c.name, false, "", 0, c.budget, "exact"};
    const auto start = std::chrono::steady_clock::now();
    try {
        res.detail = c.run(o);
        res.pass = true;
    } catch (const detail::Failure& f) {
        res.detail = f.message;
    } catch (const std::exception& e) {
        res.detail = std::string("error: ") + e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (res.pass && res.budget && res.seconds > *res.budget) {
        res.pass = false;
        res.detail += " (over the runtime budget)";
    }
    return res;
}

inline std::vector<CriterionResult> run_acceptance(const Options& o) {
    std::vector<CriterionResult> out;
    for (const auto& c : criteria()) out.push_back(run_criterion(c, o));
    return out;
}

/// One line per criterion.
inline std::string format_result(const CriterionResult& r) {
    std::ostringstream os;
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.3f", r.seconds);
    os << (r.pass ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.name << "  tolerance=" << r.tolerance << "  runtime=" << secs
       << "s";
    if (r.budget) {
        char b[32];
        std::snprintf(b, sizeof b, "%g", *r.budget);
        os << " (budget " << b << "s)";
    }
    os << "  " << r.detail;
    return os.str();
}

}  // namespace wild::verify

#endif  // WILD_VERIFY_HPP
