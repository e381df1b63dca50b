#include "phaseret/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "phaseret/errors.hpp"

namespace phaseret::io {

namespace {

const Json& field(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path + ": expected an object");
    const auto it = j.find(key);
    if (it == j.end()) throw SchemaError(path + ": missing field '" + key + "'");
    return *it;
}

double number(const Json& j, const std::string& path) {
    if (!j.is_number()) throw SchemaError(path + ": expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw SchemaError(path + ": must be finite");
    return v;
}

long integer(const Json& j, const std::string& path, long min) {
    if (!j.is_number_integer()) throw SchemaError(path + ": expected an integer");
    const long v = j.get<long>();
    if (v < min) throw SchemaError(path + ": must be >= " + std::to_string(min));
    return v;
}

std::string text(const Json& j, const std::string& path) {
    if (!j.is_string()) throw SchemaError(path + ": expected a string");
    return j.get<std::string>();
}

const Json& array(const Json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path + ": expected an array");
    return j;
}

void only_keys(const Json& j, std::initializer_list<const char*> keys, const std::string& path) {
    for (const auto& [k, v] : j.items()) {
        bool known = false;
        for (const char* allowed : keys) known = known || k == allowed;
        if (!known) throw SchemaError(path + ": unknown field '" + k + "'");
    }
}

// Library preconditions found while reading are schema errors for the caller.
template <class F>
auto checked(const std::string& path, F&& f) {
    try {
        return f();
    } catch (const SchemaError&) {
        throw;
    } catch (const Error& e) {
        throw SchemaError(path + ": " + e.what());
    }
}

PairConstraint::Kind kind_from_string(const std::string& s, const std::string& path) {
    if (s == "single_line") return PairConstraint::Kind::single_line;
    if (s == "rational_angle") return PairConstraint::Kind::rational_angle;
    if (s == "parallel") return PairConstraint::Kind::parallel;
    if (s == "infinite_lines") return PairConstraint::Kind::infinite_lines;
    throw SchemaError(path + ": unknown constraint kind '" + s + "'");
}

}  // namespace

Json to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const RootSystem& rs) {
    Json j;
    j["explicit"] = Json::array();
    for (const auto& p : rs.explicit_roots) j["explicit"].push_back({{"z", to_json(p.z)}, {"multiplicity", p.multiplicity}});
    j["orbits"] = Json::array();
    for (const auto& o : rs.orbits) {
        Json jo;
        if (o.kind == RootOrbit::Kind::translation) {
            jo = {{"kind", "translation"}, {"base", to_json(o.base)}, {"step", to_json(o.step)}};
        } else {
            jo = {{"kind", "rotation"}, {"base", to_json(o.base)}, {"angle", o.angle}};
        }
        jo["multiplicity"] = o.multiplicity;
        j["orbits"].push_back(jo);
    }
    j["origin_multiplicity"] = rs.origin_multiplicity;
    if (std::isfinite(rs.exact_within)) j["exact_within"] = rs.exact_within;
    return j;
}

Json to_json(const HadamardForm& form) {
    Json poly = Json::array();
    for (const auto& c : form.poly) poly.push_back({{"a", c.a}, {"b", c.b}});
    return Json{{"r", form.r},   {"phi", form.phi},          {"poly", poly},
                {"m", form.m},   {"p", form.p.value()},      {"roots", to_json(form.roots)}};
}

Json to_json(const PairConstraint& c) {
    Json j{{"kind", to_string(c.kind)}};
    if (c.kind == PairConstraint::Kind::rational_angle) {
        j["theta"] = c.theta;
        j["n"] = c.n;
        j["pinned"] = c.pinned;
    }
    if (c.kind == PairConstraint::Kind::parallel || c.kind == PairConstraint::Kind::infinite_lines) j["tau"] = c.tau;
    return j;
}

Json to_json(const AmbiguityPair& pair) {
    const auto& c = pair.constraint;
    return Json{{"constraint", to_json(c)},
                {"f", to_json(pair.f)},
                {"g", to_json(pair.g)},
                {"series", {{"K", c.series_K}, {"value", c.series_value}, {"tail", c.series_tail}}},
                {"decomposition",
                 {{"common", to_json(pair.decomposition.common)},
                  {"exclusive", to_json(pair.decomposition.exclusive)},
                  {"fundamental", to_json(pair.decomposition.fundamental)}}}};
}

Json to_json(const AgreementReport& rep) {
    return Json{{"line", rep.line_id},
                {"verdict", to_string(rep.verdict)},
                {"deviation", rep.deviation},
                {"witness", {{"x", rep.argmax_x}, {"z", to_json(rep.witness)}}},
                {"tolerance", rep.tolerance},
                {"tail", rep.tail},
                {"combined_tolerance", rep.combined_tolerance}};
}

Complex complex_from_json(const Json& j, const std::string& path) {
    only_keys(j, {"re", "im"}, path);
    return {number(field(j, "re", path), path + ".re"), number(field(j, "im", path), path + ".im")};
}

RootSystem root_system_from_json(const Json& j, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path + ": expected an object");
    only_keys(j, {"explicit", "orbits", "origin_multiplicity", "exact_within"}, path);
    RootSystem rs;
    if (j.contains("explicit")) {
        const auto& arr = array(j["explicit"], path + ".explicit");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string p = path + ".explicit[" + std::to_string(i) + "]";
            only_keys(arr[i], {"z", "multiplicity"}, p);
            rs.explicit_roots.push_back({complex_from_json(field(arr[i], "z", p), p + ".z"),
                                         static_cast<int>(integer(field(arr[i], "multiplicity", p), p + ".multiplicity", 1))});
        }
    }
    if (j.contains("orbits")) {
        const auto& arr = array(j["orbits"], path + ".orbits");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string p = path + ".orbits[" + std::to_string(i) + "]";
            const auto& jo = arr[i];
            const std::string kind = text(field(jo, "kind", p), p + ".kind");
            const Complex base = complex_from_json(field(jo, "base", p), p + ".base");
            const int mult = static_cast<int>(integer(field(jo, "multiplicity", p), p + ".multiplicity", 1));
            if (kind == "translation") {
                only_keys(jo, {"kind", "base", "step", "multiplicity"}, p);
                const Complex step = complex_from_json(field(jo, "step", p), p + ".step");
                rs.orbits.push_back(checked(p, [&] { return RootOrbit::translation(base, step, mult); }));
            } else if (kind == "rotation") {
                only_keys(jo, {"kind", "base", "angle", "multiplicity"}, p);
                const double angle = number(field(jo, "angle", p), p + ".angle");
                rs.orbits.push_back(checked(p, [&] { return RootOrbit::rotation(base, angle, mult); }));
            } else {
                throw SchemaError(p + ".kind: expected 'translation' or 'rotation'");
            }
        }
    }
    if (j.contains("origin_multiplicity")) {
        rs.origin_multiplicity = static_cast<int>(integer(j["origin_multiplicity"], path + ".origin_multiplicity", 0));
    }
    if (j.contains("exact_within")) rs.exact_within = number(j["exact_within"], path + ".exact_within");
    return rs;
}

HadamardForm form_from_json(const Json& j, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path + ": expected an object");
    only_keys(j, {"r", "phi", "poly", "m", "p", "roots"}, path);
    HadamardForm form;
    form.r = number(field(j, "r", path), path + ".r");
    form.phi = j.contains("phi") ? number(j["phi"], path + ".phi") : 0.0;
    if (j.contains("poly")) {
        const auto& arr = array(j["poly"], path + ".poly");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string p = path + ".poly[" + std::to_string(i) + "]";
            only_keys(arr[i], {"a", "b"}, p);
            form.poly.push_back({number(field(arr[i], "a", p), p + ".a"), number(field(arr[i], "b", p), p + ".b")});
        }
    }
    form.m = j.contains("m") ? static_cast<int>(integer(j["m"], path + ".m", 0)) : 0;
    const long p = j.contains("p") ? integer(j["p"], path + ".p", 0) : 0;
    form.p = checked(path + ".p", [&] { return Genus{static_cast<int>(p)}; });
    form.roots = j.contains("roots") ? root_system_from_json(j["roots"], path + ".roots") : RootSystem{};
    checked(path, [&] {
        form.validate();
        return 0;
    });
    return form;
}

PairConstraint constraint_from_json(const Json& j, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path + ": expected an object");
    only_keys(j, {"kind", "theta", "n", "tau", "pinned"}, path);
    PairConstraint c;
    c.kind = kind_from_string(text(field(j, "kind", path), path + ".kind"), path + ".kind");
    if (c.kind == PairConstraint::Kind::rational_angle) {
        c.theta = number(field(j, "theta", path), path + ".theta");
        c.n = static_cast<int>(integer(field(j, "n", path), path + ".n", 1));
        if (j.contains("pinned")) {
            for (const auto& v : array(j["pinned"], path + ".pinned")) {
                c.pinned.push_back(static_cast<int>(integer(v, path + ".pinned[]", 1)));
            }
        }
    }
    if (c.kind == PairConstraint::Kind::parallel || c.kind == PairConstraint::Kind::infinite_lines) {
        c.tau = number(field(j, "tau", path), path + ".tau");
    }
    checked(path, [&] {
        c.validate();
        return 0;
    });
    return c;
}

AmbiguityPair pair_from_json(const Json& j) {
    if (!j.is_object()) throw SchemaError("$: expected an object");
    only_keys(j, {"constraint", "f", "g", "series", "decomposition"}, "$");
    AmbiguityPair pair;
    pair.constraint = constraint_from_json(field(j, "constraint", "$"), "$.constraint");
    pair.f = form_from_json(field(j, "f", "$"), "$.f");
    pair.g = form_from_json(field(j, "g", "$"), "$.g");
    if (j.contains("series")) {
        const auto& s = j["series"];
        only_keys(s, {"K", "value", "tail"}, "$.series");
        pair.constraint.series_K = integer(field(s, "K", "$.series"), "$.series.K", 0);
        pair.constraint.series_value = number(field(s, "value", "$.series"), "$.series.value");
        pair.constraint.series_tail = number(field(s, "tail", "$.series"), "$.series.tail");
    }
    if (j.contains("decomposition")) {
        const auto& d = j["decomposition"];
        only_keys(d, {"common", "exclusive", "fundamental"}, "$.decomposition");
        pair.decomposition.common = root_system_from_json(field(d, "common", "$.decomposition"), "$.decomposition.common");
        pair.decomposition.exclusive =
            root_system_from_json(field(d, "exclusive", "$.decomposition"), "$.decomposition.exclusive");
        pair.decomposition.fundamental =
            root_system_from_json(field(d, "fundamental", "$.decomposition"), "$.decomposition.fundamental");
    }
    return pair;
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(path.string() + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw PreconditionError("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

}  // namespace phaseret::io
