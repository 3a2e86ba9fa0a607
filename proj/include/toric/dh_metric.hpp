#pragma once

// Duistermaat-Heckman pushforward (-q)_* dμ and the d_p / d_exp distances
// between piecewise-affine functions on the same polytope.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "toric/exp_integrate.hpp"
#include "toric/pa_convex.hpp"
#include "toric/polytope.hpp"
#include "toric/rational.hpp"

namespace toric {

namespace detail {

// complete homogeneous symmetric polynomial h_k of the given values
inline Rational complete_homogeneous(const std::vector<Rational>& a, unsigned k)
{
    std::vector<Rational> h(k + 1, Rational(0));
    h[0] = 1;
    for (const auto& x : a)
        for (unsigned j = 1; j <= k; ++j)
            h[j] += x * h[j - 1];
    return h[k];
}

// ∫_Δ ℓ^k for a simplex with d+1 vertices: measure · k! d! / (d+k)! · h_k(ℓ(v_i))
inline Rational simplex_power_integral(const Simplex& s, const AffineForm& l, unsigned k)
{
    std::vector<Rational> a;
    for (const auto& v : s.vertices)
        a.push_back(l(v));
    const unsigned d = static_cast<unsigned>(s.vertices.size() - 1);
    return s.measure * factorial(k) * factorial(d) / factorial(d + k) * complete_homogeneous(a, k);
}

} // namespace detail

/// ∫_P q^k dμ, or ∫_∂P q^k dσ, exactly.
inline Rational q_moment(const PiecewiseAffineConvex& q, unsigned k, bool boundary = false)
{
    const LatticePolytope& P = q.domain();
    Rational total = 0;
    for (const auto& c : q.cells()) {
        const AffineForm& piece = q.pieces()[c.piece];
        if (!boundary) {
            for (const auto& s : c.polytope.simplices())
                total += detail::simplex_power_integral(s, piece, k);
            continue;
        }
        for (const auto& f : c.polytope.facets()) {
            if (!P.find_facet(f.normal, f.offset))
                continue;
            for (const auto& s : f.simplices)
                total += detail::simplex_power_integral(s, piece, k);
        }
    }
    return total;
}

/// F(τ) = DH([τ, ∞)) = vol{μ ∈ P : q(μ) <= -τ}, exactly.
inline Rational dh_cdf_exact(const PiecewiseAffineConvex& q, const Rational& tau)
{
    auto hs = q.domain().halfspaces();
    for (const auto& p : q.pieces())
        hs.push_back({p.gradient, Rational(-tau - p.constant)});
    auto sub = LatticePolytope::from_halfspaces(q.dimension(), hs);
    return sub ? sub->volume() : Rational(0);
}

inline double dh_cdf(const PiecewiseAffineConvex& q, double tau) { return to_double(dh_cdf_exact(q, from_double(tau))); }

class DHSummary {
public:
    explicit DHSummary(PiecewiseAffineConvex q)
        : q_(std::move(q)), volume_(q_.domain().volume()), int_q_(q_moment(q_, 1)), int_q2_(q_moment(q_, 2))
    {
    }

    const Rational& volume() const { return volume_; }

    double cdf(double tau) const { return dh_cdf(q_, tau); }

    /// ∫ t^k DH = (-1)^k ∫_P q^k dμ
    Rational moment(unsigned k) const
    {
        if (k > 4)
            throw std::invalid_argument("DH moments are exposed up to order 4");
        Rational m = q_moment(q_, k);
        return (k % 2 == 0) ? m : Rational(-m);
    }

    /// ∫ e^{-ρt} DH = ∫_P e^{ρq} dμ
    double laplace(double rho) const { return polytope_exp_integral(q_, rho).value; }

    /// b = ∫ t DH / ∫ DH
    Rational barycenter() const { return -int_q_ / volume_; }

    /// ‖φ̄‖² = ∫ q² dμ - (∫ q dμ)² / vol
    Rational variance_norm_sq() const { return int_q2_ - int_q_ * int_q_ / volume_; }

    /// sup of the support of DH, i.e. -inf_P q
    Rational support_max() const { return -q_.min_value(); }
    Rational support_min() const { return -q_.max_value(); }

private:
    PiecewiseAffineConvex q_;
    Rational volume_, int_q_, int_q2_;
};

inline DHSummary dh_summary(const PiecewiseAffineConvex& q) { return DHSummary(q); }

/// Cells of the common refinement of q and q', further split by the sign of
/// q - q', each carrying |q - q'| as an affine form.
struct DifferenceCell {
    LatticePolytope polytope;
    AffineForm abs_diff;
};

inline std::vector<DifferenceCell> difference_cells(const PiecewiseAffineConvex& q, const PiecewiseAffineConvex& q2)
{
    std::vector<PiecewiseAffineConvex> fs{q, q2};
    std::vector<DifferenceCell> out;
    const std::size_t n = q.dimension();
    for (auto& c : common_refinement(fs)) {
        const AffineForm& a = q.pieces()[c.pieces[0]];
        const AffineForm& b = q2.pieces()[c.pieces[1]];
        AffineForm d{a.gradient - b.gradient, a.constant - b.constant};
        AffineForm neg{RationalVector(n), -d.constant};
        for (std::size_t i = 0; i < n; ++i)
            neg.gradient[i] = -d.gradient[i];
        if (std::all_of(d.gradient.begin(), d.gradient.end(), [](const Rational& x) { return x == 0; })) {
            out.push_back({std::move(c.polytope), d.constant >= 0 ? d : neg});
            continue;
        }
        // d >= 0 part: <μ, -∇d> <= c_d ; d <= 0 part: <μ, ∇d> <= -c_d
        auto hs = c.polytope.halfspaces();
        hs.push_back({neg.gradient, d.constant});
        if (auto pos = LatticePolytope::from_halfspaces(n, hs))
            out.push_back({std::move(*pos), d});
        hs.back() = {d.gradient, neg.constant};
        if (auto m = LatticePolytope::from_halfspaces(n, hs))
            out.push_back({std::move(*m), neg});
    }
    return out;
}

namespace detail {

// ∫_Δ g(ℓ) over a simplex in collapsed (Duffy) coordinates with Gauss-Legendre
template <class G>
double duffy_integral(const Simplex& s, const std::vector<double>& a, G&& g)
{
    using Rule = boost::math::quadrature::gauss<double, 24>;
    const std::size_t d = a.size() - 1;
    double scale = to_double(s.measure);
    for (std::size_t i = 2; i <= d; ++i)
        scale *= static_cast<double>(i);
    // level i fixes the barycentric weight of vertex i as a fraction u of what remains
    auto rec = [&](auto&& self, std::size_t level, double remaining, double acc) -> double {
        if (level == d)
            return g(acc + remaining * a[d]);
        return Rule::integrate(
            [&](double u) {
                return std::pow(1.0 - u, static_cast<double>(d - level - 1)) *
                       self(self, level + 1, remaining * (1.0 - u), acc + remaining * u * a[level]);
            },
            0.0, 1.0);
    };
    return scale * rec(rec, 0, 1.0, 0.0);
}

} // namespace detail

/// d_p(q, q') = (∫_P |q - q'|^p dμ)^{1/p}, p >= 1. Integer p is exact up to
/// the final root; other p use collapsed Gauss-Legendre quadrature.
inline double metric_dp(const PiecewiseAffineConvex& q, const PiecewiseAffineConvex& q2, double p)
{
    if (!(p >= 1.0))
        throw std::invalid_argument("metric_dp needs p >= 1");
    const auto cells = difference_cells(q, q2);
    if (p == std::floor(p) && p <= 64) {
        Rational total = 0;
        for (const auto& c : cells)
            for (const auto& s : c.polytope.simplices())
                total += detail::simplex_power_integral(s, c.abs_diff, static_cast<unsigned>(p));
        return std::pow(to_double(total), 1.0 / p);
    }
    double total = 0.0;
    for (const auto& c : cells)
        for (const auto& s : c.polytope.simplices()) {
            std::vector<double> a;
            for (const auto& v : s.vertices)
                a.push_back(to_double(c.abs_diff(v)));
            total += detail::duffy_integral(s, a, [p](double t) { return t > 0 ? std::pow(t, p) : 0.0; });
        }
    return std::pow(total, 1.0 / p);
}

/// inf{β > 0 : ∫_P (e^{|q - q'|/β} - 1) dμ <= 1}, by geometric bisection.
inline double metric_dexp(const PiecewiseAffineConvex& q, const PiecewiseAffineConvex& q2)
{
    const auto cells = difference_cells(q, q2);
    Rational sup = 0;
    for (const auto& c : cells)
        for (const auto& v : c.polytope.vertices())
            sup = std::max(sup, c.abs_diff(v));
    if (sup == 0)
        return 0.0;
    const double vol = to_double(q.domain().volume());

    std::vector<std::pair<const Simplex*, std::vector<double>>> simplices;
    for (const auto& c : cells)
        for (const auto& s : c.polytope.simplices()) {
            std::vector<double> a;
            for (const auto& v : s.vertices)
                a.push_back(to_double(c.abs_diff(v)));
            simplices.emplace_back(&s, std::move(a));
        }
    auto excess = [&](double beta) {
        detail::CompensatedSum acc;
        std::vector<double> nodes;
        for (const auto& [s, a] : simplices) {
            nodes.resize(a.size());
            for (std::size_t i = 0; i < a.size(); ++i)
                nodes[i] = a[i] / beta;
            acc.add(simplex_kernel(to_double(s->measure), nodes, {}));
        }
        return acc.value() - vol;
    };

    double lo = 1e-14;
    double hi = to_double(sup) / std::log1p(1.0 / vol) + 1.0;
    while (hi / lo - 1.0 > 1e-12) {
        const double mid = std::sqrt(lo * hi);
        if (mid <= lo || mid >= hi)
            break;
        const double g = excess(mid);
        if (std::isfinite(g) && g <= 1.0)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

} // namespace toric
