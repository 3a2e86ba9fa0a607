#pragma once

// Named polytopes, functions and filtrations used by the CLI and the tests.

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "toric/filtration.hpp"
#include "toric/pa_convex.hpp"
#include "toric/polytope.hpp"
#include "toric/rational.hpp"

namespace toric::builtin {

using PolytopePtr = std::shared_ptr<const LatticePolytope>;

inline PolytopePtr share(LatticePolytope P) { return std::make_shared<const LatticePolytope>(std::move(P)); }

inline RationalVector point(std::initializer_list<Rational> xs) { return RationalVector(xs); }

inline PolytopePtr unit_square()
{
    return share(build_polytope({point({0, 0}), point({1, 0}), point({0, 1}), point({1, 1})}));
}

inline PolytopePtr unit_segment() { return share(build_polytope({point({0}), point({1})})); }

/// The two-point blow-up of CP², P_δ, for 0 < δ < 3/2.
inline PolytopePtr blowup(const Rational& delta)
{
    if (delta <= 0 || delta >= Rational(3, 2))
        throw std::invalid_argument("blow-up parameter must lie in (0, 3/2)");
    return share(build_polytope({point({-1, -1}), point({2 - delta, -1}), point({2 - delta, -1 + delta}),
                                 point({-1 + delta, 2 - delta}), point({-1, 2 - delta})}));
}

inline Rational donaldson_r(unsigned n) { return Rational(static_cast<int>(n) - 2, 3 * static_cast<int>(n) - 5); }

/// The nine-vertex orbifold polytope with r_n = (n-2)/(3n-5).
inline PolytopePtr donaldson(unsigned n = 5)
{
    if (n < 3)
        throw std::invalid_argument("Donaldson polytope needs n >= 3");
    const Rational r = donaldson_r(n);
    return share(build_polytope({point({1, 0}), point({0, 1}), point({r, r}),
                                 point({3, 1}), point({3, 0}), point({4 - 2 * r, r}),
                                 point({0, 3}), point({1, 3}), point({r, 4 - 2 * r})}));
}

/// q_n = max{0, n - n²(x+y)} - 1/(6n) on the unit square.
inline PiecewiseAffineConvex square_qn(unsigned n, PolytopePtr square = unit_square())
{
    const Rational nn(n);
    const Rational shift = Rational(1, 6 * static_cast<int>(n));
    return make_pa({AffineForm{point({0, 0}), -shift}, AffineForm{point({-nn * nn, -nn * nn}), nn - shift}}, std::move(square));
}

/// q_d(t) = max{0, d(t-1) + 1} on [0, 1].
inline PiecewiseAffineConvex segment_qd(unsigned d, PolytopePtr segment = unit_segment())
{
    const Rational dd(d);
    return make_pa({AffineForm{point({0}), 0}, AffineForm{point({dd}), 1 - dd}}, std::move(segment));
}

/// On C[x,y] = ⊕ H^0(CP¹, O(m)): ‖f‖_m = e^m unless x | f. The one monomial
/// not divisible by x sits at the end μ = m of mP = [0, m] and jumps at -m.
inline MonomialFiltration bj38(PolytopePtr segment = unit_segment())
{
    MonomialFiltration f;
    f.polytope = std::move(segment);
    f.weight = [](unsigned m, const RationalVector& mu) { return mu[0] == Rational(m) ? Integer(-static_cast<long>(m)) : Integer(0); };
    f.name = "bj38";
    return f;
}

/// The finitely generated approximant F_d, the filtration of q_d (m ∈ dℕ).
inline MonomialFiltration bj38_flat(unsigned d, PolytopePtr segment = unit_segment())
{
    return filtration_from_q(segment_qd(d, std::move(segment)), d, "bj38-flat:" + std::to_string(d));
}

} // namespace toric::builtin
