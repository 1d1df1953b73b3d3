#ifndef WILD_IO_HPP
#define WILD_IO_HPP

// JSON encodings. Rationals travel as strings "p/q" (lowest terms, "p" for
// integers) and the infinities as "-inf" / "inf"; integer JSON numbers are
// accepted on input.
//
//   WObject            [{"degree": d, "birth": "a", "death": "b"}, ...]
//   PLFunction         {"anchors": [["x", "v"], ...], "leftSlope": "s", "rightSlope": "t"}
//   Cell               {"left": {"pos": p, "closed": c}, "right": {...}, "potential": PLFunction, "shift": n}
//   WSheaf             [Cell, ...]
//   PiecewiseTransform {"pieces": [{"lo": EndSpec, "hi": EndSpec,
//                                   "families": [{"degree": d, "birth": PLFunction, "death": PLFunction | "inf"}]}]}

#include "wild/fourier.hpp"
#include "wild/novikov.hpp"

#include <json.hpp>

#include <string>

namespace wild::io {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& q) { return to_string(q); }
inline Json to_json(const ExtReal& e) { return to_string(e); }

inline const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) throw SchemaError(std::string("expected an object with field '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(std::string("missing field '") + key + "'");
    return *it;
}

inline ExtReal extreal_from_json(const Json& j) {
    if (j.is_string()) return parse_extreal(j.get<std::string>());
    if (j.is_number_integer()) return ExtReal(Rational(j.get<long long>()));
    throw SchemaError("expected a rational string, \"inf\" or \"-inf\"");
}

inline Rational rational_from_json(const Json& j) {
    ExtReal e = extreal_from_json(j);
    if (!e.is_finite()) throw SchemaError("expected a finite rational");
    return e.value();
}

inline int int_from_json(const Json& j) {
    if (!j.is_number_integer()) throw SchemaError("expected an integer");
    return j.get<int>();
}

// --- WObject ----------------------------------------------------------------

inline Json to_json(const Bar& b) { return Json{{"degree", b.degree}, {"birth", to_json(b.birth)}, {"death", to_json(b.death)}}; }

inline Json to_json(const WObject& w) {
    Json arr = Json::array();
    for (const auto& b : w.bars()) arr.push_back(to_json(b));
    return arr;
}

inline Json to_json(const PreWObject& w) {
    Json arr = Json::array();
    for (const auto& b : w.bars) arr.push_back(to_json(b));
    return arr;
}

inline Bar bar_from_json(const Json& j) {
    Bar b{int_from_json(field(j, "degree")), extreal_from_json(field(j, "birth")), extreal_from_json(field(j, "death"))};
    try {
        check_bar(b);
    } catch (const ComputationError& e) {
        throw SchemaError(e.what());
    }
    return b;
}

inline PreWObject pre_wobject_from_json(const Json& j) {
    if (!j.is_array()) throw SchemaError("a barcode is a JSON array of bars");
    PreWObject p;
    for (const auto& b : j) p.bars.push_back(bar_from_json(b));
    return p;
}

inline WObject wobject_from_json(const Json& j) {
    PreWObject p = pre_wobject_from_json(j);
    for (const auto& b : p.bars)
        if (!b.birth.is_finite()) throw SchemaError("WObject bars need finite births");
    return WObject(std::move(p.bars));
}

// --- PLFunction -------------------------------------------------------------

inline Json to_json(const PLFunction& f) {
    Json anchors = Json::array();
    for (const auto& a : f.anchors()) anchors.push_back(Json::array({to_json(a.x), to_json(a.value)}));
    return Json{{"anchors", anchors}, {"leftSlope", to_json(f.left_slope())}, {"rightSlope", to_json(f.right_slope())}};
}

inline PLFunction plfunction_from_json(const Json& j) {
    const Json& anchors = field(j, "anchors");
    if (!anchors.is_array() || anchors.empty()) throw SchemaError("'anchors' must be a nonempty array");
    std::vector<Anchor> out;
    for (const auto& a : anchors) {
        if (!a.is_array() || a.size() != 2) throw SchemaError("each anchor is a pair [x, value]");
        out.push_back(Anchor{rational_from_json(a[0]), rational_from_json(a[1])});
    }
    try {
        return PLFunction(std::move(out), rational_from_json(field(j, "leftSlope")), rational_from_json(field(j, "rightSlope")));
    } catch (const ComputationError& e) {
        throw SchemaError(e.what());
    }
}

inline Json to_json(const Conjugate& c) {
    return Json{{"domain", Json::array({to_json(c.lo), to_json(c.hi)})}, {"conjugate", to_json(c.function)}};
}

// --- Cells and sheaves --------------------------------------------------------

inline Json to_json(const EndSpec& e) { return Json{{"pos", to_json(e.position)}, {"closed", e.closed}}; }

inline EndSpec endspec_from_json(const Json& j) {
    const Json& closed = field(j, "closed");
    if (!closed.is_boolean()) throw SchemaError("'closed' must be a boolean");
    return EndSpec{extreal_from_json(field(j, "pos")), closed.get<bool>()};
}

inline Json to_json(const Cell& c) {
    return Json{{"left", to_json(c.left)}, {"right", to_json(c.right)}, {"potential", to_json(c.potential)}, {"shift", c.shift}};
}

inline Cell cell_from_json(const Json& j) {
    Cell c{endspec_from_json(field(j, "left")), endspec_from_json(field(j, "right")),
           plfunction_from_json(field(j, "potential")), j.contains("shift") ? int_from_json(j["shift"]) : 0};
    try {
        validate(c);
    } catch (const ComputationError& e) {
        throw SchemaError(e.what());
    }
    return c;
}

inline Json to_json(const WSheaf& s) {
    Json arr = Json::array();
    for (const auto& c : s.summands) arr.push_back(to_json(c));
    return arr;
}

/// Accepts an array of cells, {"cells": [...]}, a single cell, or a bare
/// PLFunction f, read as S(f).
inline WSheaf wsheaf_from_json(const Json& j) {
    WSheaf s;
    if (j.is_array()) {
        for (const auto& c : j) s.summands.push_back(cell_from_json(c));
    } else if (j.is_object() && j.contains("cells")) {
        return wsheaf_from_json(j["cells"]);
    } else if (j.is_object() && j.contains("anchors")) {
        s = sheaf_of(plfunction_from_json(j));
    } else if (j.is_object() && j.contains("potential")) {
        s.summands.push_back(cell_from_json(j));
    } else {
        throw SchemaError("expected a sheaf: array of cells, a cell, or a PL function");
    }
    return s;
}

// --- Transforms ---------------------------------------------------------------

inline Json to_json(const PiecewiseTransform& t) {
    Json pieces = Json::array();
    for (const auto& p : t.pieces) {
        Json fams = Json::array();
        for (const auto& f : p.families)
            fams.push_back(Json{{"degree", f.degree},
                                {"birth", to_json(f.birth)},
                                {"death", f.death ? to_json(*f.death) : Json("inf")}});
        pieces.push_back(Json{{"lo", to_json(p.lo)}, {"hi", to_json(p.hi)}, {"families", fams}});
    }
    return Json{{"pieces", pieces}};
}

inline PiecewiseTransform transform_from_json(const Json& j) {
    PiecewiseTransform t;
    const Json& pieces = field(j, "pieces");
    if (!pieces.is_array()) throw SchemaError("'pieces' must be an array");
    for (const auto& p : pieces) {
        TransformPiece piece{endspec_from_json(field(p, "lo")), endspec_from_json(field(p, "hi")), {}};
        const Json& fams = field(p, "families");
        if (!fams.is_array()) throw SchemaError("'families' must be an array");
        for (const auto& f : fams) {
            BarFamily fam{int_from_json(field(f, "degree")), plfunction_from_json(field(f, "birth")), std::nullopt};
            const Json& death = field(f, "death");
            if (death.is_string()) {
                if (death.get<std::string>() != "inf") throw SchemaError("a string death must be \"inf\"");
            } else {
                fam.death = plfunction_from_json(death);
            }
            piece.families.push_back(std::move(fam));
        }
        t.pieces.push_back(std::move(piece));
    }
    return t;
}

inline Json to_json(const CriticalProfile& profile) {
    Json arr = Json::array();
    for (const auto& e : profile)
        arr.push_back(Json{{"kind", to_string(e.kind)}, {"x", to_json(e.x)}, {"xEnd", to_json(e.x_end)}, {"value", to_json(e.value)}});
    return arr;
}

inline Json to_json(const KoszulProfile& k) {
    Json dims = Json::object();
    for (const auto& [deg, v] : k.dims) dims[std::to_string(deg)] = v;
    return Json{{"step", to_json(k.grid.step)}, {"bound", to_json(k.grid.bound)}, {"dims", dims}};
}

}  // namespace wild::io

#endif  // WILD_IO_HPP
