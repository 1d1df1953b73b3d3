#include "wild/io.hpp"
#include "wild/svg.hpp"
#include "wild/verify.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <iterator>

using namespace wild;
using io::Json;

namespace {

const ExtReal inf = ExtReal::pos_inf();
Rational q(long long n, long long d = 1) { return make_rational(n, d); }

const PLFunction absx({Anchor{0, 0}}, -1, 1);
const PLFunction double_well({Anchor{-1, 0}, Anchor{0, 2}, Anchor{1, 1}}, -2, 2);

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::size_t count(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
    return n;
}

}  // namespace

TEST(Json, RationalEncoding) {
    EXPECT_EQ(io::to_json(q(6, -4)), Json("-3/2"));
    EXPECT_EQ(io::to_json(ExtReal::neg_inf()), Json("-inf"));
    EXPECT_EQ(io::extreal_from_json(Json(3)), ExtReal(3));
    EXPECT_EQ(io::extreal_from_json(Json("10/4")), ExtReal(q(5, 2)));
    EXPECT_THROW(io::extreal_from_json(Json(1.5)), SchemaError);
    EXPECT_THROW(io::extreal_from_json(Json("1/x")), SchemaError);
}

TEST(Json, WObjectRoundTripAndDeterminism) {
    verify::Rng rng(91);
    for (int i = 0; i < 100; ++i) {
        std::vector<Bar> bars;
        for (int k = 0; k < 4; ++k) {
            const Rational b = verify::random_rational(rng, -4, 4, 6);
            bars.push_back(Bar{static_cast<int>(verify::uniform(rng, -2, 2)), ExtReal(b),
                               verify::uniform(rng, 0, 1) ? inf : ExtReal(b + verify::random_rational(rng, 1, 3, 6))});
        }
        const WObject w(bars);
        std::reverse(bars.begin(), bars.end());
        const WObject w2(bars);
        EXPECT_EQ(io::to_json(w).dump(), io::to_json(w2).dump());
        EXPECT_EQ(io::wobject_from_json(Json::parse(io::to_json(w).dump())), w);
    }
}

TEST(Json, PLFunctionCellSheafTransformRoundTrip) {
    verify::Rng rng(92);
    for (int i = 0; i < 60; ++i) {
        const PLFunction f = verify::random_pl(rng);
        EXPECT_EQ(io::plfunction_from_json(Json::parse(io::to_json(f).dump())), f);
        WSheaf s;
        for (int k = 0; k < 3; ++k) s.summands.push_back(verify::random_cell(rng));
        EXPECT_EQ(io::wsheaf_from_json(Json::parse(io::to_json(s).dump())), s);
        const PiecewiseTransform t = fourier_transform(s);
        EXPECT_EQ(io::transform_from_json(Json::parse(io::to_json(t).dump())), t);
    }
    EXPECT_EQ(io::wsheaf_from_json(io::to_json(absx)), sheaf_of(absx));
    EXPECT_EQ(io::wsheaf_from_json(Json{{"cells", io::to_json(sheaf_of(absx))}}), sheaf_of(absx));
    EXPECT_EQ(io::wsheaf_from_json(io::to_json(whole_line_cell(absx))), sheaf_of(absx));
}

TEST(Json, SchemaErrors) {
    EXPECT_THROW(io::wobject_from_json(Json::object()), SchemaError);
    EXPECT_THROW(io::wobject_from_json(Json::parse(R"([{"degree": 0, "birth": "2", "death": "1"}])")), SchemaError);
    EXPECT_THROW(io::wobject_from_json(Json::parse(R"([{"degree": 0, "birth": "-inf", "death": "1"}])")), SchemaError);
    EXPECT_NO_THROW(io::pre_wobject_from_json(Json::parse(R"([{"degree": 0, "birth": "-inf", "death": "1"}])")));
    EXPECT_THROW(io::plfunction_from_json(Json::parse(R"({"anchors": [], "leftSlope": "0", "rightSlope": "0"})")), SchemaError);
    EXPECT_THROW(io::plfunction_from_json(Json::parse(R"({"anchors": [["1","0"],["0","0"]], "leftSlope": "0", "rightSlope": "0"})")),
                 SchemaError);
    EXPECT_THROW(io::plfunction_from_json(Json::parse(R"({"anchors": [["0","0"]], "leftSlope": "0"})")), SchemaError);
    EXPECT_THROW(io::cell_from_json(Json::parse(R"({"left": {"pos": "-inf", "closed": true}, "right": {"pos": "inf", "closed": false},
                                                   "potential": {"anchors": [["0","0"]], "leftSlope": "0", "rightSlope": "0"}})")),
                 SchemaError);
    EXPECT_THROW(io::wsheaf_from_json(Json(3)), SchemaError);
}

TEST(Fixtures, DataFilesAndGolden) {
    const std::string root = WILD_SOURCE_DIR;
    EXPECT_EQ(io::plfunction_from_json(Json::parse(slurp(root + "/data/absx.json"))), absx);
    EXPECT_EQ(io::plfunction_from_json(Json::parse(slurp(root + "/data/exp.json"))), PLFunction::affine(1, 0));
    const PLFunction dw = io::plfunction_from_json(Json::parse(slurp(root + "/data/doublewell.json")));
    EXPECT_EQ(dw, double_well);
    const Json golden = Json::parse(slurp(root + "/tests/golden/doublewell_pishriek.json"));
    EXPECT_EQ(io::to_json(pi_shriek(sheaf_of(dw))), golden);
}

TEST(Svg, ZeroObject) {
    const std::string s = svg::render_barcode(WObject{});
    EXPECT_NE(s.find("zero object"), std::string::npos);
    EXPECT_NE(svg::render_transform(PiecewiseTransform{}).find("zero object"), std::string::npos);
}

TEST(Svg, BarcodeSegments) {
    const std::string s = svg::render_barcode(pi_shriek(sheaf_of(double_well)));
    EXPECT_EQ(count(s, "class=\"bar\""), 2u);
    EXPECT_EQ(count(s, "marker-end=\"url(#arrow)\""), 1u);
    EXPECT_NE(s.find(">2</text>"), std::string::npos);
    const std::string t = svg::render_barcode(WObject({Bar{0, q(1, 3), q(5, 2)}}));
    EXPECT_NE(t.find(">1/3</text>"), std::string::npos);
    EXPECT_NE(t.find(">5/2</text>"), std::string::npos);
    EXPECT_EQ(svg::render_barcode(pi_shriek(sheaf_of(double_well))), s);
}

TEST(Svg, TransformRegion) {
    const std::string s = svg::render_transform(fourier_transform(sheaf_of(absx)));
    EXPECT_EQ(count(s, "class=\"family\""), 1u);
    // rectangle: four corners, two at the y = -1 edge and two at y = 1
    const auto start = s.find("<polygon");
    ASSERT_NE(start, std::string::npos);
    const auto pts_at = s.find("points=\"", start) + 8;
    const std::string pts = s.substr(pts_at, s.find('"', pts_at) - pts_at);
    EXPECT_EQ(count(pts, ","), 4u);
    EXPECT_NE(s.find(">-1</text>"), std::string::npos);
    EXPECT_NE(s.find(">1</text>"), std::string::npos);
}
