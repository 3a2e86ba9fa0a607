#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "toric/builtin.hpp"
#include "toric/polytope.hpp"

using namespace toric;
using builtin::point;

namespace {

// Shoelace area of a polygon given in cyclic order.
Rational shoelace(const std::vector<RationalVector>& cyc)
{
    Rational a = 0;
    for (std::size_t i = 0; i < cyc.size(); ++i) {
        const auto& p = cyc[i];
        const auto& q = cyc[(i + 1) % cyc.size()];
        a += p[0] * q[1] - p[1] * q[0];
    }
    return abs(a) / 2;
}

std::set<RationalVector> as_set(const std::vector<RationalVector>& v) { return {v.begin(), v.end()}; }

Integer gcd_of(const RationalVector& v)
{
    Integer g = 0;
    for (const auto& x : v)
        g = boost::multiprecision::gcd(g, Integer(boost::multiprecision::numerator(x)));
    return g;
}

} // namespace

TEST(Polytope, UnitSquare)
{
    auto P = builtin::unit_square();
    EXPECT_EQ(P->dimension(), 2u);
    EXPECT_EQ(P->volume(), 1);
    ASSERT_EQ(P->facets().size(), 4u);
    std::set<RationalVector> normals;
    for (const auto& f : P->facets()) {
        normals.insert(f.normal);
        EXPECT_EQ(f.measure, 1);
    }
    EXPECT_EQ(normals, (std::set<RationalVector>{point({1, 0}), point({-1, 0}), point({0, 1}), point({0, -1})}));
    for (const auto& c : P->vertex_cones()) {
        EXPECT_TRUE(c.simple);
        EXPECT_EQ(c.index, 1);
    }
    EXPECT_EQ(P->boundary_measure(), 4);
}

TEST(Polytope, BlowupDeltaOne)
{
    auto P = builtin::blowup(1);
    EXPECT_EQ(P->facets().size(), 5u);
    const std::vector<RationalVector> cyc{point({-1, -1}), point({1, -1}), point({1, 0}), point({0, 1}), point({-1, 1})};
    EXPECT_EQ(P->volume(), shoelace(cyc));
    EXPECT_EQ(P->volume(), Rational(7, 2));

    const auto& V = P->vertices();
    auto it = std::find(V.begin(), V.end(), point({1, 0}));
    ASSERT_NE(it, V.end());
    const auto& cone = P->vertex_cones()[static_cast<std::size_t>(it - V.begin())];
    EXPECT_EQ(as_set(cone.generators), (std::set<RationalVector>{point({-1, 1}), point({0, -1})}));
    EXPECT_EQ(cone.index, 1);
}

TEST(Polytope, BlowupDiagonalFacetMeasure)
{
    for (Rational delta : {Rational(1), Rational(1, 2), Rational(5, 4)}) {
        auto P = builtin::blowup(delta);
        auto f = P->find_facet(point({1, 1}), 1);
        ASSERT_TRUE(f.has_value());
        EXPECT_EQ(facet_measure(*P, *f), 3 - 2 * delta);
    }
}

TEST(Polytope, DonaldsonIndices)
{
    auto P = builtin::donaldson(5);
    EXPECT_EQ(builtin::donaldson_r(5), Rational(3, 10));
    std::multiset<Integer> idx;
    for (const auto& c : P->vertex_cones()) {
        ASSERT_TRUE(c.simple);
        idx.insert(c.index);
    }
    EXPECT_EQ(idx, (std::multiset<Integer>{3, 3, 3, 3, 3, 3, 40, 40, 40}));
    const auto& V = P->vertices();
    for (std::size_t i = 0; i < V.size(); ++i)
        if (V[i] == point({Rational(3, 10), Rational(3, 10)}))
            EXPECT_EQ(P->vertex_cones()[i].index, 40);
}

TEST(Polytope, SegmentVolume)
{
    auto P = builtin::unit_segment();
    EXPECT_EQ(P->volume(), 1);
    EXPECT_EQ(P->boundary_measure(), 2);
}

TEST(Polytope, PrimitiveNormalsAndIncidence)
{
    for (auto P : {builtin::unit_square(), builtin::blowup(Rational(1, 3)), builtin::donaldson(5), builtin::donaldson(7)}) {
        for (const auto& f : P->facets()) {
            EXPECT_EQ(gcd_of(f.normal), 1);
            for (std::size_t vi = 0; vi < P->vertices().size(); ++vi) {
                const bool on = dot(P->vertices()[vi], f.normal) == f.offset;
                const bool listed = std::find(f.vertices.begin(), f.vertices.end(), vi) != f.vertices.end();
                EXPECT_EQ(on, listed);
                EXPECT_LE(dot(P->vertices()[vi], f.normal), f.offset);
            }
        }
        for (const auto& c : P->vertex_cones())
            for (const auto& g : c.generators)
                EXPECT_EQ(gcd_of(g), 1);
    }
}

TEST(Polytope, DegenerateHullThrows)
{
    EXPECT_THROW(build_polytope({point({0, 0}), point({1, 1}), point({2, 2})}), DegenerateHull);
    EXPECT_THROW(build_polytope({point({0, 0}), point({1, 0})}), DegenerateHull);
}

TEST(Polytope, NonSimpleVertexIsFlagged)
{
    // square pyramid: apex has four incident facets
    auto P = build_polytope({point({0, 0, 0}), point({2, 0, 0}), point({0, 2, 0}), point({2, 2, 0}), point({1, 1, 1})});
    EXPECT_FALSE(P.is_simple());
    int non_simple = 0;
    for (const auto& c : P.vertex_cones())
        non_simple += c.simple ? 0 : 1;
    EXPECT_EQ(non_simple, 1);
    EXPECT_EQ(P.volume(), Rational(4, 3));
}

TEST(Polytope, Clip)
{
    auto P = builtin::unit_square();
    auto half = clip(*P, Halfspace{point({1, 0}), Rational(1, 2)});
    ASSERT_TRUE(half);
    EXPECT_EQ(half->volume(), Rational(1, 2));
    EXPECT_FALSE(clip(*P, Halfspace{point({1, 0}), -1}).has_value());
    auto tri = clip(*P, Halfspace{point({1, 1}), 1});
    ASSERT_TRUE(tri);
    EXPECT_EQ(tri->volume(), shoelace({point({0, 0}), point({1, 0}), point({0, 1})}));
}

TEST(Polytope, ClipComplementsAddUp)
{
    auto P = builtin::donaldson(5);
    for (const auto& [a, b] : std::vector<std::pair<RationalVector, Rational>>{{point({1, 2}), 3}, {point({-3, 1}), Rational(-1, 2)}, {point({1, 0}), 2}}) {
        auto lo = clip(*P, Halfspace{a, b});
        auto hi = clip(*P, Halfspace{Rational(-1) * a, -b});
        Rational total = (lo ? lo->volume() : Rational(0)) + (hi ? hi->volume() : Rational(0));
        EXPECT_EQ(total, P->volume());
    }
}

TEST(Polytope, Triangulation)
{
    auto sq = builtin::unit_square();
    ASSERT_EQ(triangulate(*sq).size(), 2u);
    for (const auto& s : triangulate(*sq))
        EXPECT_EQ(s.measure, Rational(1, 2));

    auto P = builtin::blowup(1);
    Rational total = 0;
    for (const auto& s : triangulate(*P)) {
        EXPECT_GT(s.measure, 0);
        EXPECT_EQ(s.measure, shoelace(s.vertices));
        total += s.measure;
    }
    EXPECT_EQ(total, Rational(7, 2));

    auto T = build_polytope({point({0, 0}), point({3, 0}), point({0, 2})});
    ASSERT_EQ(triangulate(T).size(), 1u);
    EXPECT_EQ(as_set(triangulate(T)[0].vertices), as_set(T.vertices()));
    EXPECT_EQ(T.volume(), 3);
}

TEST(Polytope, HalfspaceRoundTrip)
{
    for (auto P : {builtin::unit_square(), builtin::blowup(Rational(2, 3)), builtin::donaldson(5)}) {
        auto Q = LatticePolytope::from_halfspaces(P->dimension(), P->halfspaces());
        ASSERT_TRUE(Q);
        EXPECT_EQ(Q->vertices(), P->vertices());
        EXPECT_EQ(Q->volume(), P->volume());
    }
}

TEST(Polytope, CubeMeasures)
{
    auto C = build_polytope({point({0, 0, 0}), point({1, 0, 0}), point({0, 1, 0}), point({0, 0, 1}), point({1, 1, 0}),
                             point({1, 0, 1}), point({0, 1, 1}), point({1, 1, 1})});
    EXPECT_EQ(C.volume(), 1);
    EXPECT_EQ(C.facets().size(), 6u);
    EXPECT_EQ(C.boundary_measure(), 6);
    // standard simplex: slanted facet has lattice measure 1/2 (index-one facet lattice)
    auto S = build_polytope({point({0, 0, 0}), point({1, 0, 0}), point({0, 1, 0}), point({0, 0, 1})});
    EXPECT_EQ(S.volume(), Rational(1, 6));
    auto f = S.find_facet(point({1, 1, 1}), 1);
    ASSERT_TRUE(f);
    EXPECT_EQ(facet_measure(S, *f), Rational(1, 2));
}
