#pragma once

// JSON forms of polytopes and piecewise-affine functions. Rationals travel as
// "num/den" strings; plain JSON numbers are accepted when they are integers.

#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "toric/pa_convex.hpp"
#include "toric/polytope.hpp"
#include "toric/rational.hpp"

namespace toric::io {

using nlohmann::json;

inline Rational rational_from_json(const json& j)
{
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    if (j.is_number_integer())
        return Rational(j.get<long long>());
    throw ParseError("expected a rational string such as \"3/10\", got " + j.dump());
}

inline RationalVector vector_from_json(const json& j)
{
    if (!j.is_array())
        throw ParseError("expected an array of rationals, got " + j.dump());
    RationalVector v;
    for (const auto& x : j)
        v.push_back(rational_from_json(x));
    return v;
}

inline json to_json(const RationalVector& v)
{
    json a = json::array();
    for (const auto& x : v)
        a.push_back(to_string(x));
    return a;
}

/// {"dim": n, "vertices": [["p/q", ...], ...]}
inline LatticePolytope polytope_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("vertices"))
        throw ParseError("polytope JSON needs a \"vertices\" array");
    std::vector<RationalVector> pts;
    for (const auto& v : j.at("vertices"))
        pts.push_back(vector_from_json(v));
    if (j.contains("dim")) {
        const auto n = j.at("dim").get<std::size_t>();
        for (const auto& p : pts)
            if (p.size() != n)
                throw ParseError("vertex of length " + std::to_string(p.size()) + " in a polytope of dim " + std::to_string(n));
    }
    return build_polytope(std::move(pts));
}

inline json to_json(const LatticePolytope& P)
{
    json j;
    j["dim"] = P.dimension();
    j["vertices"] = json::array();
    for (const auto& v : P.vertices())
        j["vertices"].push_back(to_json(v));
    return j;
}

/// {"pieces": [{"eta": [...], "lambda": "c/d"}, ...]}, q = max(<μ,η> - λ)
inline PiecewiseAffineConvex pa_from_json(const json& j, std::shared_ptr<const LatticePolytope> P)
{
    if (!j.is_object() || !j.contains("pieces"))
        throw ParseError("q JSON needs a \"pieces\" array");
    std::vector<AffineForm> pieces;
    for (const auto& p : j.at("pieces")) {
        auto eta = vector_from_json(p.at("eta"));
        Rational lambda = p.contains("lambda") ? rational_from_json(p.at("lambda")) : Rational(0);
        pieces.push_back(affine_piece(std::move(eta), lambda));
    }
    return make_pa(std::move(pieces), std::move(P));
}

inline json to_json(const PiecewiseAffineConvex& q)
{
    json j;
    j["pieces"] = json::array();
    for (const auto& p : q.pieces())
        j["pieces"].push_back({{"eta", to_json(p.gradient)}, {"lambda", to_string(Rational(-p.constant))}});
    return j;
}

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

} // namespace toric::io
