#include <gtest/gtest.h>

#include "toric/builtin.hpp"
#include "toric/io.hpp"

using namespace toric;
using builtin::point;
using nlohmann::json;

TEST(Json, PolytopeRoundTrip)
{
    auto j = json::parse(R"({"dim": 2, "vertices": [["-1","-1"],["2-1","-1"]]})", nullptr, false);
    EXPECT_THROW(io::polytope_from_json(j), ParseError);

    auto P = builtin::donaldson(5);
    auto back = io::polytope_from_json(io::to_json(*P));
    EXPECT_EQ(back.vertices(), P->vertices());
    EXPECT_EQ(back.volume(), Rational(71, 10));
    EXPECT_EQ(io::to_json(*P)["vertices"][0][0], "0");
}

TEST(Json, RationalsAsStrings)
{
    EXPECT_EQ(io::rational_from_json(json("3/10")), Rational(3, 10));
    EXPECT_EQ(io::rational_from_json(json(-4)), -4);
    EXPECT_THROW(io::rational_from_json(json(0.3)), ParseError);
    EXPECT_THROW(io::rational_from_json(json("3/0")), ParseError);
}

TEST(Json, PiecewiseAffine)
{
    auto P = builtin::unit_square();
    auto j = json::parse(R"({"pieces": [{"eta": [0, 0], "lambda": "1/30"}, {"eta": ["-25", "-25"], "lambda": "-149/30"}]})");
    auto q = io::pa_from_json(j, P);
    auto ref = builtin::square_qn(5, P);
    for (const auto& v : ref.cell_vertices())
        EXPECT_EQ(q(v), ref(v));
    auto again = io::pa_from_json(io::to_json(q), P);
    EXPECT_EQ(again.pieces(), q.pieces());
    EXPECT_THROW(io::pa_from_json(json::parse(R"({"pieces": []})"), P), EmptyPieces);
    EXPECT_THROW(io::pa_from_json(json::parse(R"({"pieces": [{"eta": [1]}]})"), P), std::invalid_argument);
}
