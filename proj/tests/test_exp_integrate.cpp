#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "toric/builtin.hpp"
#include "toric/divided_difference.hpp"
#include "toric/exp_integrate.hpp"

using namespace toric;
using builtin::point;
using boost::math::quadrature::gauss_kronrod;

namespace {

const double e = std::numbers::e;

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// ∫ over the triangle (p0, p1, p2) of f, by iterated adaptive quadrature.
template <class F>
double triangle_quadrature(const std::array<std::array<double, 2>, 3>& p, F f)
{
    const double J = std::abs((p[1][0] - p[0][0]) * (p[2][1] - p[0][1]) - (p[2][0] - p[0][0]) * (p[1][1] - p[0][1]));
    auto inner = [&](double s) {
        return gauss_kronrod<double, 31>::integrate(
            [&](double t) {
                const double x = p[0][0] + s * (p[1][0] - p[0][0]) + t * (p[2][0] - p[0][0]);
                const double y = p[0][1] + s * (p[1][1] - p[0][1]) + t * (p[2][1] - p[0][1]);
                return f(x, y);
            },
            0.0, 1.0 - s, 8, 1e-14);
    };
    return J * gauss_kronrod<double, 31>::integrate(inner, 0.0, 1.0, 8, 1e-14);
}

// Hermite–Genocchi: [a,b,c]exp = ∫_{s+t<=1} exp(a + s(b-a) + t(c-a)).
double dd3_quadrature(double a, double b, double c)
{
    return triangle_quadrature({{{0, 0}, {1, 0}, {0, 1}}}, [&](double s, double t) { return std::exp(a + s * (b - a) + t * (c - a)); });
}

PiecewiseAffineConvex linear(builtin::PolytopePtr P, RationalVector eta) { return make_pa({AffineForm{std::move(eta), 0}}, std::move(P)); }

double donaldson_interior(double x, double eps)
{
    const double s = 3.0 / (-7 + 3 * eps) * std::exp(x) + 3.0 / ((3 - 7 * eps) * eps) * std::exp(eps * x)
                     + 40.0 / ((7 - 3 * eps) * (-3 + 7 * eps)) * std::exp((0.3 + 0.3 * eps) * x)
                     - 3.0 / ((1 - eps) * (4 - 7 * eps)) * std::exp((3 + eps) * x) - 3.0 / (4 + 3 * eps) * std::exp(3 * x)
                     + 40.0 / ((4 - 7 * eps) * (4 + 3 * eps)) * std::exp((3.4 + 0.3 * eps) * x)
                     - 3.0 / (eps * (3 + 4 * eps)) * std::exp(3 * eps * x) - 3.0 / ((7 - 4 * eps) * (1 - eps)) * std::exp((1 + 3 * eps) * x)
                     - 40.0 / ((3 + 4 * eps) * (7 - 4 * eps)) * std::exp((0.3 + 3.4 * eps) * x);
    return s / (x * x);
}

double donaldson_boundary(double x, double eps)
{
    const double s = (-6 + 3 * eps) / (-7 + 3 * eps) * std::exp(x) + (3 - 6 * eps) / ((3 - 7 * eps) * eps) * std::exp(eps * x)
                     + (4 + 4 * eps) / ((7 - 3 * eps) * (-3 + 7 * eps)) * std::exp((0.3 + 0.3 * eps) * x)
                     - (3 - 6 * eps) / ((1 - eps) * (4 - 7 * eps)) * std::exp((3 + eps) * x) - (3 + 3 * eps) / (4 + 3 * eps) * std::exp(3 * x)
                     + (-8 + 4 * eps) / ((4 - 7 * eps) * (4 + 3 * eps)) * std::exp((3.4 + 0.3 * eps) * x)
                     - (3 + 3 * eps) / (eps * (3 + 4 * eps)) * std::exp(3 * eps * x)
                     - (-6 + 3 * eps) / ((7 - 4 * eps) * (1 - eps)) * std::exp((1 + 3 * eps) * x)
                     - (4 - 8 * eps) / ((3 + 4 * eps) * (7 - 4 * eps)) * std::exp((0.3 + 3.4 * eps) * x);
    return -s / x;
}

} // namespace

TEST(DividedDifference, HandValues)
{
    EXPECT_NEAR(divided_difference_exp({0.0}), 1.0, 1e-15);
    EXPECT_NEAR(divided_difference_exp({0.0, 1.0}), e - 1, 1e-15);
    EXPECT_NEAR(divided_difference_exp({0.0, 0.0}), 1.0, 1e-15);
    EXPECT_NEAR(divided_difference_exp({0.0, 0.0, 0.0}), 0.5, 1e-15);
    EXPECT_NEAR(divided_difference_exp({2.0, 2.0, 2.0, 2.0}), std::exp(2.0) / 6, 1e-14);
    EXPECT_NEAR(divided_difference_exp({0.0, 1.0, 2.0}), (e * e - 2 * e + 1) / 2, 1e-14);
    // [a,a,b] = (e^b - e^a - (b-a)e^a)/(b-a)^2
    EXPECT_NEAR(divided_difference_exp({1.0, 1.0, 3.0}), (std::exp(3.0) - e - 2 * e) / 4, 1e-13);
}

TEST(DividedDifference, AgreesWithHermiteGenocchi)
{
    for (auto [a, b, c] : std::vector<std::array<double, 3>>{{0, 1e-9, 5}, {-3, 2, 2.0000001}, {10, -10, 0.5}, {-30, -29.9, -30.05}, {0.1, 0.1, 0.1}}) {
        const double z[] = {a, b, c};
        EXPECT_LT(rel(divided_difference_exp(z), dd3_quadrature(a, b, c)), 1e-12) << a << " " << b << " " << c;
    }
}

TEST(DividedDifference, SymmetricInNodes)
{
    const double a[] = {0.3, -1.7, 4.2, 0.3001};
    const double b[] = {4.2, 0.3001, 0.3, -1.7};
    EXPECT_LT(rel(divided_difference_exp(a), divided_difference_exp(b)), 1e-14);
}

TEST(SimplexKernel, Examples)
{
    Simplex tri{{point({0, 0}), point({1, 0}), point({0, 1})}, Rational(1, 2)};
    EXPECT_NEAR(simplex_exp_integral(tri, AffineForm{point({1, 0}), 0}), e - 2, 1e-14);
    Simplex big{{point({-1, 0}), point({4, 1}), point({2, 7})}, Rational(33, 2)};
    EXPECT_NEAR(simplex_exp_integral(big, AffineForm{point({0, 0}), 0}), 16.5, 1e-12);
    Simplex seg{{point({0}), point({1})}, 1};
    EXPECT_NEAR(simplex_exp_integral(seg, AffineForm{point({1}), 0}, AffineForm{point({1}), 0}), 1.0, 1e-14);
}

TEST(SimplexKernel, AgreesWithQuadratureOracle)
{
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> coord(-4, 4), grad(-3, 3);
    int done = 0;
    while (done < 12) {
        RationalVector p0 = point({coord(rng), coord(rng)}), p1 = point({coord(rng), coord(rng)}), p2 = point({coord(rng), coord(rng)});
        const Rational det = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
        if (det == 0)
            continue;
        ++done;
        Simplex s{{p0, p1, p2}, abs(det) / 2};
        AffineForm ex{point({Rational(grad(rng), 2), Rational(grad(rng), 3)}), Rational(grad(rng), 5)};
        AffineForm w{point({grad(rng), grad(rng)}), grad(rng)};
        std::array<std::array<double, 2>, 3> pts{{{to_double(p0[0]), to_double(p0[1])}, {to_double(p1[0]), to_double(p1[1])}, {to_double(p2[0]), to_double(p2[1])}}};
        auto L = [&](const AffineForm& f, double x, double y) { return to_double(f.gradient[0]) * x + to_double(f.gradient[1]) * y + to_double(f.constant); };
        const double plain = triangle_quadrature(pts, [&](double x, double y) { return std::exp(L(ex, x, y)); });
        const double weighted = triangle_quadrature(pts, [&](double x, double y) { return L(w, x, y) * std::exp(L(ex, x, y)); });
        EXPECT_LT(rel(simplex_exp_integral(s, ex), plain), 1e-11);
        EXPECT_NEAR(simplex_exp_integral(s, ex, w), weighted, 1e-11 * std::max(1.0, std::abs(plain)));
    }
}

TEST(ExpIntegral, SquareExamples)
{
    auto P = builtin::unit_square();
    EXPECT_NEAR(polytope_exp_integral(constant_pa(P, 0), 1.0).value, 1.0, 1e-15);
    const double expect = (e - 1) * (e * e - 1) / 2;
    for (Method m : {Method::triangulation, Method::localization}) {
        auto r = polytope_exp_integral(linear(P, point({1, 2})), 1.0, unit_weight(), m);
        EXPECT_EQ(r.method, m);
        EXPECT_LT(rel(r.value, expect), 1e-13);
    }
    EXPECT_NEAR(boundary_exp_integral(constant_pa(P, 0), 1.0).value, 4.0, 1e-14);
}

TEST(ExpIntegral, BlowupClosedForms)
{
    auto P = builtin::blowup(1);
    auto q = linear(P, point({1, 1}));
    for (double x : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0}) {
        const double in = (std::exp(-2 * x) - 2 + (1 + x) * std::exp(x)) / (x * x);
        const double bd = -(2 * std::exp(-2 * x) - (2 + x) * std::exp(x)) / x;
        for (Method m : {Method::triangulation, Method::localization}) {
            EXPECT_LT(rel(polytope_exp_integral(q, x, unit_weight(), m).value, in), 1e-10);
            EXPECT_LT(rel(boundary_exp_integral(q, x, unit_weight(), m).value, bd), 1e-10);
        }
    }
}

TEST(ExpIntegral, SegmentBoundary)
{
    auto P = builtin::unit_segment();
    for (double x : {0.3, 1.0, 4.0})
        EXPECT_LT(rel(boundary_exp_integral(linear(P, point({-1})), x).value, 1 + std::exp(-x)), 1e-15);
}

TEST(ExpIntegral, ScalingAndMonotonicity)
{
    auto P = builtin::donaldson(5);
    auto q = make_pa({AffineForm{point({1, 0}), 0}, AffineForm{point({-1, 2}), -1}, AffineForm{point({0, 0}), Rational(1, 2)}}, P);
    EXPECT_LT(rel(polytope_exp_integral(q, 0.0).value, to_double(P->volume())), 1e-14);
    EXPECT_LT(rel(polytope_exp_integral(q, 0.7).value, polytope_exp_integral(q.scaled(Rational(7, 10)), 1.0).value), 1e-13);
    ASSERT_GE(q.min_value(), 0);
    double prev = 0.0;
    for (double rho = 0.0; rho <= 2.0; rho += 0.25) {
        const double v = polytope_exp_integral(q, rho).value;
        EXPECT_GT(v, prev);
        prev = v;
    }
}

TEST(ExpIntegral, WeightsAgreeWithPolynomialOracle)
{
    // ∫_[0,1]² (2 + q) e^q with q = x + 2y, by separable 1-D antiderivatives
    auto P = builtin::unit_square();
    auto q = linear(P, point({1, 2}));
    const double I0 = (e - 1) * (e * e - 1) / 2;
    const double Ix = 1.0 * (e * e - 1) / 2;                    // ∫ x e^x = 1
    const double Iy = (e - 1) * ((e * e + 1) / 4);              // ∫ y e^{2y} = (e²+1)/4
    const double expect = 2 * I0 + Ix + 2 * Iy;
    auto w = 2.0 * unit_weight() + q_weight(1);
    EXPECT_LT(rel(polytope_exp_integral(q, 1.0, w).value, expect), 1e-13);
}

TEST(Brion, SquareAndSingularDirection)
{
    auto P = builtin::unit_square();
    const double xi[] = {1.0, 2.0};
    EXPECT_LT(rel(brion_localize(*P, xi).value, (e - 1) * (e * e - 1) / 2), 1e-13);
    const double bad[] = {1.0, 0.0};
    EXPECT_THROW(brion_localize(*P, bad), NearSingularDirection);
    // the limit form still evaluates there: ∫ e^x dx dy = e - 1
    EXPECT_LT(rel(localize(*P, bad).value, e - 1), 1e-9);
}

TEST(Brion, DonaldsonNineTermFormula)
{
    auto P = builtin::donaldson(5);
    for (double eps : {1.0 / 3, 0.17}) {
        for (double x : {0.5, 1.3}) {
            const double xi[] = {x, x * eps};
            EXPECT_LT(rel(brion_localize(*P, xi).value, donaldson_interior(x, eps)), 1e-9);
            EXPECT_LT(rel(brion_localize(*P, xi, true).value, donaldson_boundary(x, eps)), 1e-9);
            auto q = make_pa({AffineForm{point({1, from_double(eps)}), 0}}, P);
            EXPECT_LT(rel(polytope_exp_integral(q, x).value, donaldson_interior(x, eps)), 1e-9);
        }
    }
}

TEST(Brion, NonSimpleRefused)
{
    auto P = build_polytope({point({0, 0, 0}), point({2, 0, 0}), point({0, 2, 0}), point({2, 2, 0}), point({1, 1, 1})});
    const double xi[] = {0.3, 0.7, 1.1};
    EXPECT_THROW(brion_localize(P, xi), NonSimpleVertex);
}

TEST(Brion, CubeInteriorAndBoundary)
{
    auto C = builtin::share(build_polytope({point({0, 0, 0}), point({1, 0, 0}), point({0, 1, 0}), point({0, 0, 1}), point({1, 1, 0}),
                                            point({1, 0, 1}), point({0, 1, 1}), point({1, 1, 1})}));
    const double a = 0.4, b = -1.3, c = 2.1;
    auto E = [](double t) { return (std::exp(t) - 1) / t; };
    const double interior = E(a) * E(b) * E(c);
    // each pair of opposite faces contributes (1 + e^t)·E(other)·E(other)
    const double boundary = (1 + std::exp(a)) * E(b) * E(c) + (1 + std::exp(b)) * E(a) * E(c) + (1 + std::exp(c)) * E(a) * E(b);
    const double xi[] = {a, b, c};
    EXPECT_LT(rel(brion_localize(*C, xi).value, interior), 1e-12);
    EXPECT_LT(rel(brion_localize(*C, xi, true).value, boundary), 1e-12);
    auto q = make_pa({AffineForm{point({from_double(a), from_double(b), from_double(c)}), 0}}, C);
    EXPECT_LT(rel(polytope_exp_integral(q, 1.0).value, interior), 1e-12);
    EXPECT_LT(rel(boundary_exp_integral(q, 1.0).value, boundary), 1e-12);
}

TEST(Brion, InvariantUnderLatticeAutomorphism)
{
    // g = [[1,1],[0,1]] maps the square to a parallelogram; ∫_{gP} e^<μ,ξ> = ∫_P e^<μ,gᵀξ>
    auto P = builtin::unit_square();
    auto Q = build_polytope({point({0, 0}), point({1, 0}), point({1, 1}), point({2, 1})});
    EXPECT_EQ(Q.volume(), 1);
    EXPECT_EQ(Q.boundary_measure(), 4);
    const double xi[] = {0.7, -1.9};
    const double gt_xi[] = {0.7, 0.7 - 1.9};
    EXPECT_LT(rel(brion_localize(Q, xi).value, brion_localize(*P, gt_xi).value), 1e-13);
    EXPECT_LT(rel(brion_localize(Q, xi, true).value, brion_localize(*P, gt_xi, true).value), 1e-13);
}

TEST(CrossValidate, Examples)
{
    auto sq = builtin::unit_square();
    EXPECT_LE(cross_validate(constant_pa(sq, 0), 1.0).max_relative_discrepancy, 1e-12);
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> d(-9, 9);
    auto P1 = builtin::blowup(1);
    for (int i = 0; i < 5; ++i) {
        auto q = linear(P1, point({Rational(d(rng), 7), Rational(d(rng), 5)}));
        EXPECT_LE(cross_validate(q, 1.0).max_relative_discrepancy, 1e-9);
    }
    auto D = builtin::donaldson(5);
    EXPECT_LE(cross_validate(linear(D, point({1, Rational(1, 3)})), 1.0).max_relative_discrepancy, 1e-9);
    auto qn = builtin::square_qn(3);
    EXPECT_LE(cross_validate(qn, 2.0).max_relative_discrepancy, 1e-9);
}
