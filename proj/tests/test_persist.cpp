#include "wild/persist.hpp"
#include "wild/verify.hpp"

#include <gtest/gtest.h>

using namespace wild;

namespace {

const ExtReal inf = ExtReal::pos_inf();
const ExtReal ninf = ExtReal::neg_inf();
Rational q(long long n, long long d = 1) { return make_rational(n, d); }

const PLFunction absx({Anchor{0, 0}}, -1, 1);
const PLFunction double_well({Anchor{-1, 0}, Anchor{0, 2}, Anchor{1, 1}}, -2, 2);

Cell closed_cell(const Rational& a, const Rational& b, PLFunction f, int shift = 0) {
    return Cell{{ExtReal(a), true}, {ExtReal(b), true}, std::move(f), shift};
}

std::vector<Bar> sorted(std::vector<Bar> v) {
    std::sort(v.begin(), v.end());
    return v;
}

void expect_oracle_agreement(std::span<const Cell> cells) {
    const PreWObject bc = sublevel_barcode(cells);
    const auto p = verify::level_probes(cells);
    for (const auto& r : p.generic) {
        ASSERT_EQ(fil_dim(bc, r), sublevel_dims(cells, r)) << "r = " << r;
        ASSERT_EQ(strict_fil_dim(bc.bars, r), sublevel_dims(cells, r)) << "r = " << r;
    }
    for (const auto& r : p.critical) ASSERT_EQ(strict_fil_dim(bc.bars, r), sublevel_dims(cells, r)) << "r = " << r;
}

}  // namespace

TEST(ComponentTable, HcDegrees) {
    EXPECT_EQ(hc_degree(component_type(false, false)), 1);
    EXPECT_EQ(hc_degree(component_type(true, true)), 0);
    EXPECT_EQ(hc_degree(component_type(true, false)), std::nullopt);
    EXPECT_EQ(hc_degree(component_type(false, true)), std::nullopt);
}

TEST(Cell, Validation) {
    EXPECT_THROW(validate(Cell{{ninf, true}, {inf, false}, absx, 0}), ComputationError);
    EXPECT_THROW(validate(Cell{{ExtReal(1), false}, {ExtReal(0), false}, absx, 0}), ComputationError);
    EXPECT_THROW(validate(Cell{{ExtReal(1), true}, {ExtReal(1), false}, absx, 0}), ComputationError);
    EXPECT_THROW(validate(Cell{{inf, false}, {inf, false}, absx, 0}), ComputationError);
    EXPECT_NO_THROW(validate(point_cell(3, absx)));
    EXPECT_THROW(sublevel_barcode(Cell{{ExtReal(2), false}, {ExtReal(0), true}, absx, 0}), ComputationError);
}

TEST(SublevelBarcode, Examples) {
    const Cell exp_cell = whole_line_cell(PLFunction::affine(1, 0));
    EXPECT_EQ(sublevel_barcode(exp_cell).bars, (std::vector<Bar>{Bar{1, ninf, inf}}));
    EXPECT_TRUE(completion(sublevel_barcode(exp_cell)).empty());

    const Cell abs_cell = whole_line_cell(absx);
    EXPECT_EQ(sublevel_barcode(abs_cell).bars, (std::vector<Bar>{Bar{1, 0, inf}}));
    for (const Rational& r : {q(-1), q(0), q(1, 2), q(10)})
        EXPECT_EQ(strict_fil_dim(sublevel_barcode(abs_cell).bars, r), sublevel_dims(abs_cell, r));

    const Cell dw = whole_line_cell(double_well);
    EXPECT_EQ(sublevel_barcode(dw).bars, (std::vector<Bar>{Bar{1, 0, inf}, Bar{1, 1, 2}}));
    expect_oracle_agreement(std::span<const Cell>(&dw, 1));
}

TEST(SublevelBarcode, EndpointTransitions) {
    // open-open born at 0, closed to compact at 1: degree-1 death, degree-0 birth
    const Cell c = closed_cell(-1, 1, absx);
    EXPECT_EQ(sublevel_barcode(c).bars, sorted({Bar{1, 0, 1}, Bar{0, 1, inf}}));
    // half-open interval: its one-point compactification is contractible
    const Cell h{{ExtReal(0), true}, {inf, false}, PLFunction::constant(0), 0};
    EXPECT_TRUE(sublevel_barcode(h).bars.empty());
    // closing one endpoint kills the open-open class
    const Cell k{{ExtReal(-1), true}, {ExtReal(2), false}, absx, 0};
    EXPECT_EQ(sublevel_barcode(k).bars, (std::vector<Bar>{Bar{1, 0, 1}}));
    // two half-open pieces merging into a compact one: degree-0 birth at the merge
    const Cell m = closed_cell(-2, 2, PLFunction({Anchor{-2, 0}, Anchor{0, 3}, Anchor{2, 0}}, 0, 0));
    EXPECT_EQ(sublevel_barcode(m).bars, (std::vector<Bar>{Bar{0, 3, inf}}));
    // shift moves degrees down
    EXPECT_EQ(sublevel_barcode(closed_cell(-1, 1, absx, -1)).bars, sorted({Bar{2, 0, 1}, Bar{1, 1, inf}}));
    // point cells carry a degree-0 class from the value on
    EXPECT_EQ(sublevel_barcode(point_cell(2, absx)).bars, (std::vector<Bar>{Bar{0, 2, inf}}));
    for (const Cell& x : {c, h, k, m}) expect_oracle_agreement(std::span<const Cell>(&x, 1));
}

TEST(SublevelBarcode, PlateausAndFlatTails) {
    const Cell flat = whole_line_cell(PLFunction::constant(5));
    EXPECT_EQ(sublevel_barcode(flat).bars, (std::vector<Bar>{Bar{1, 5, inf}}));
    const Cell tail = whole_line_cell(PLFunction({Anchor{0, 0}, Anchor{1, 2}}, 0, 0));
    EXPECT_EQ(sublevel_barcode(tail).bars, (std::vector<Bar>{Bar{1, 0, inf}}));
    const Cell plateau_min = whole_line_cell(PLFunction({Anchor{0, 1}, Anchor{2, 1}}, -1, 1));
    EXPECT_EQ(sublevel_barcode(plateau_min).bars, (std::vector<Bar>{Bar{1, 1, inf}}));
    for (const Cell& x : {flat, tail, plateau_min}) expect_oracle_agreement(std::span<const Cell>(&x, 1));
}

TEST(SublevelDims, Examples) {
    EXPECT_EQ(sublevel_dims(whole_line_cell(PLFunction::affine(1, 0)), 0), (std::map<int, int>{{1, 1}}));
    EXPECT_EQ(sublevel_dims(closed_cell(-1, 1, PLFunction::constant(0)), 1), (std::map<int, int>{{0, 1}}));
    EXPECT_TRUE(sublevel_dims(closed_cell(-1, 1, PLFunction::affine(1, 0)), 0).empty());
}

TEST(SublevelBarcode, OracleAgreementRandom) {
    verify::Rng rng(71);
    for (int i = 0; i < 200; ++i) {
        const Cell c = whole_line_cell(verify::random_pl(rng));
        expect_oracle_agreement(std::span<const Cell>(&c, 1));
    }
    for (int i = 0; i < 60; ++i) {
        std::vector<Cell> cells;
        for (int k = 0; k < 3; ++k) cells.push_back(verify::random_cell(rng));
        expect_oracle_agreement(cells);
    }
}

TEST(SublevelBarcode, Monotonicity) {
    verify::Rng rng(72);
    for (int i = 0; i < 200; ++i) {
        Cell c = verify::random_cell(rng);
        c.shift = 0;
        for (const auto& b : sublevel_barcode(c).bars) {
            EXPECT_TRUE(b.degree == 0 || b.degree == 1);
            if (b.degree == 0) {
                EXPECT_TRUE(b.death.is_pos_inf());
            }
        }
    }
}

TEST(SublevelBarcode, Reparametrization) {
    verify::Rng rng(73);
    for (int i = 0; i < 100; ++i) {
        Cell c = verify::random_cell(rng);
        const PreWObject base = sublevel_barcode(c);
        const Rational shift = verify::random_rational(rng, -4, 4, 5);
        Cell moved = c;
        moved.potential = add_constant(c.potential, shift);
        std::vector<Bar> want = base.bars;
        for (auto& b : want) {
            b.birth = b.birth + ExtReal(shift);
            b.death = b.death + ExtReal(shift);
        }
        EXPECT_EQ(sublevel_barcode(moved).bars, sorted(want));

        const Rational t = verify::random_rational(rng, 1, 5, 3);
        Cell scaled = c;
        scaled.potential = scale_values(c.potential, t);
        std::vector<Bar> want_scaled = base.bars;
        for (auto& b : want_scaled) {
            b.birth = b.birth.scaled(t);
            b.death = b.death.scaled(t);
        }
        EXPECT_EQ(sublevel_barcode(scaled).bars, sorted(want_scaled));
        EXPECT_EQ(completion(sublevel_barcode(scaled)), scale(completion(base), t));
    }
}

TEST(SublevelBarcode, AdditiveOverDisjointUnion) {
    verify::Rng rng(74);
    for (int i = 0; i < 100; ++i) {
        std::vector<Cell> a{verify::random_cell(rng)}, b{verify::random_cell(rng), verify::random_cell(rng)};
        std::vector<Cell> ab = a;
        ab.insert(ab.end(), b.begin(), b.end());
        std::vector<Bar> want = sublevel_barcode(a).bars;
        const auto bb = sublevel_barcode(b).bars;
        want.insert(want.end(), bb.begin(), bb.end());
        EXPECT_EQ(sublevel_barcode(ab).bars, sorted(want));
    }
}
