#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rcfm/errors.hpp"
#include "rcfm/fredholm.hpp"
#include "rcfm/matrix.hpp"
#include "rcfm/tj.hpp"

namespace rcfm {

/// Reports and files keep insertion order so serialized output is
/// byte-deterministic.
using Json = nlohmann::ordered_json;

namespace jsonio {

[[noreturn]] inline void schema_fail(const std::string& path, const std::string& what) {
    fail("SchemaError", "at " + path + ": " + what);
}

inline const Json& member(const Json& j, const std::string& path, const std::string& key) {
    if (!j.is_object()) schema_fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) schema_fail(path, "missing required key \"" + key + "\"");
    return *it;
}

inline long integer_at(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) schema_fail(path, "expected an integer");
    return j.get<long>();
}

inline Scalar scalar_at(const Json& j, const std::string& path) {
    if (!j.is_string()) schema_fail(path, "expected a rational string \"p/q\"");
    try {
        return scalar_from_string(j.get<std::string>());
    } catch (const Error& e) {
        schema_fail(path, e.what());
    }
}

// -- scalars / polynomials / rational functions ------------------------------

inline Json to_json(const Polynomial& p) {
    Json out = Json::array();
    for (const auto& c : p.coeffs()) out.push_back(scalar_to_string(c));
    return out;
}

inline Polynomial polynomial_from_json(const Json& j, const std::string& path) {
    if (!j.is_array()) schema_fail(path, "expected an array of rational strings");
    std::vector<Scalar> coeffs;
    for (std::size_t k = 0; k < j.size(); ++k)
        coeffs.push_back(scalar_at(j[k], path + "[" + std::to_string(k) + "]"));
    return Polynomial(std::move(coeffs));
}

inline Json to_json(const RationalFunction& f) {
    return Json{{"num", to_json(f.num())}, {"den", to_json(f.den())}};
}

inline RationalFunction ratfunc_from_json(const Json& j, const std::string& path) {
    Polynomial num = polynomial_from_json(member(j, path, "num"), path + ".num");
    Polynomial den = polynomial_from_json(member(j, path, "den"), path + ".den");
    if (den.is_zero_poly()) schema_fail(path + ".den", "denominator is zero");
    return RationalFunction(std::move(num), std::move(den));
}

// -- profiles and matrices ----------------------------------------------------

inline Json to_json(const DiagonalProfile& p) {
    Json head = Json::array();
    for (const auto& v : p.head()) head.push_back(scalar_to_string(v));
    return Json{{"offset", p.offset()}, {"head", std::move(head)}, {"tail", to_json(p.tail())}};
}

inline DiagonalProfile profile_from_json(const Json& j, const std::string& path) {
    long offset = integer_at(member(j, path, "offset"), path + ".offset");
    const Json& head_json = member(j, path, "head");
    if (!head_json.is_array()) schema_fail(path + ".head", "expected an array");
    std::vector<Scalar> head;
    for (std::size_t k = 0; k < head_json.size(); ++k)
        head.push_back(scalar_at(head_json[k], path + ".head[" + std::to_string(k) + "]"));
    RationalFunction tail = ratfunc_from_json(member(j, path, "tail"), path + ".tail");
    try {
        return DiagonalProfile(offset, std::move(head), std::move(tail));
    } catch (const Error& e) {
        schema_fail(path, e.what());
    }
}

/// Matrix schema v1: {"v":1, "band":[profile...], "patch":[{"row","col","value"}...]}.
inline Json to_json(const RcfMatrix& a) {
    Json band = Json::array();
    for (const auto& [d, p] : a.band()) band.push_back(to_json(p));
    Json patch = Json::array();
    for (const auto& e : a.patch().entries())
        patch.push_back(Json{{"row", e.row}, {"col", e.col}, {"value", scalar_to_string(e.value)}});
    return Json{{"v", 1}, {"band", std::move(band)}, {"patch", std::move(patch)}};
}

inline RcfMatrix matrix_from_json(const Json& j, const std::string& path = "$") {
    if (integer_at(member(j, path, "v"), path + ".v") != 1)
        schema_fail(path + ".v", "unsupported schema version");
    const Json& band_json = member(j, path, "band");
    if (!band_json.is_array()) schema_fail(path + ".band", "expected an array");
    std::map<long, DiagonalProfile> band;
    for (std::size_t k = 0; k < band_json.size(); ++k) {
        std::string p = path + ".band[" + std::to_string(k) + "]";
        DiagonalProfile prof = profile_from_json(band_json[k], p);
        if (prof.is_zero_profile()) schema_fail(p, "zero profile stored in band");
        if (!band.emplace(prof.offset(), prof).second)
            schema_fail(p, "duplicate band offset " + std::to_string(prof.offset()));
    }
    const Json& patch_json = member(j, path, "patch");
    if (!patch_json.is_array()) schema_fail(path + ".patch", "expected an array");
    std::map<std::pair<long, long>, Scalar> cells;
    for (std::size_t k = 0; k < patch_json.size(); ++k) {
        std::string p = path + ".patch[" + std::to_string(k) + "]";
        long row = integer_at(member(patch_json[k], p, "row"), p + ".row");
        long col = integer_at(member(patch_json[k], p, "col"), p + ".col");
        if (row < 1 || col < 1) schema_fail(p, "patch position must be >= 1");
        Scalar v = scalar_at(member(patch_json[k], p, "value"), p + ".value");
        if (is_zero(v)) schema_fail(p + ".value", "patch values must be nonzero");
        if (!cells.emplace(std::make_pair(row, col), v).second)
            schema_fail(p, "duplicate patch position");
    }
    return RcfMatrix::make(band, cells);
}

// -- vectors, dimension reports, TJ elements -----------------------------------

inline Json to_json(const FinSuppVector& v) {
    Json out = Json::array();
    for (const auto& [i, c] : v.entries())
        out.push_back(Json{{"index", i}, {"value", scalar_to_string(c)}});
    return out;
}

inline Json to_json(const DimReport& r) {
    Json out;
    out["value"] = r.infinite() ? Json("infinite") : Json(*r.value);
    if (const auto* k = std::get_if<KernelCertificate>(&r.certificate)) {
        out["certificate"] = Json{{"kind", "kernel-truncation"},
                                  {"support_bound", k->support_bound},
                                  {"rows", k->rows},
                                  {"cols", k->cols}};
    } else {
        const auto& c = std::get<CokernelCertificate>(r.certificate);
        out["certificate"] = Json{{"kind", "witness-generators"},
                                  {"witness_bound", c.witness_bound},
                                  {"generators", c.generators}};
    }
    return out;
}

inline Json to_json(const RefutationCertificate& c) {
    return Json{{"bandwidth", c.bandwidth},
                {"tail_degree", c.tail_degree},
                {"head_bound", c.head_bound},
                {"unknowns", c.unknowns},
                {"equations", c.equations},
                {"system_rank", c.system_rank},
                {"augmented_rank", c.augmented_rank}};
}

inline Json to_json(const TJElement& t) {
    Json terms = Json::array();
    for (const auto& [m, c] : t.terms())
        terms.push_back(Json{{"a", m.a}, {"b", m.b}, {"c", scalar_to_string(c)}});
    return Json{{"terms", std::move(terms)}};
}

inline TJElement tj_from_json(const Json& j, const std::string& path = "$") {
    const Json& terms = member(j, path, "terms");
    if (!terms.is_array()) schema_fail(path + ".terms", "expected an array");
    std::map<TJMonomial, Scalar> out;
    for (std::size_t k = 0; k < terms.size(); ++k) {
        std::string p = path + ".terms[" + std::to_string(k) + "]";
        long a = integer_at(member(terms[k], p, "a"), p + ".a");
        long b = integer_at(member(terms[k], p, "b"), p + ".b");
        if (a < 0 || b < 0) schema_fail(p, "monomial exponents must be nonnegative");
        out[TJMonomial{a, b}] += scalar_at(member(terms[k], p, "c"), p + ".c");
    }
    return TJElement(std::move(out));
}

}  // namespace jsonio
}  // namespace rcfm
