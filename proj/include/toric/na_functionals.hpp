#pragma once

// Toric forms of the non-archimedean μ-entropy, σ-entropy, Futaki invariant
// and Calabi-type quantities, all as integrals over P and ∂P.

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <thread>
#include <vector>

#include "toric/dh_metric.hpp"
#include "toric/exp_integrate.hpp"
#include "toric/pa_convex.hpp"
#include "toric/rational.hpp"

namespace toric {

/// Z = ∫_P e^{ρq} dμ, B = ∫_∂P e^{ρq} dσ, A = ∫_P (n + ρq) e^{ρq} dμ
struct EntropyTerms {
    double Z = 0.0, B = 0.0, A = 0.0;
};

inline EntropyTerms entropy_terms(const PiecewiseAffineConvex& q, double rho = 1.0)
{
    const double n = static_cast<double>(q.dimension());
    EntropyTerms t;
    t.Z = polytope_exp_integral(q, rho).value;
    t.B = boundary_exp_integral(q, rho).value;
    t.A = polytope_exp_integral(q, rho, n * unit_weight() + rho * q_weight(1)).value;
    return t;
}

inline double mu_from(const EntropyTerms& t) { return -2.0 * std::numbers::pi * t.B / t.Z; }
inline double sigma_from(const EntropyTerms& t) { return t.A / t.Z - std::log(t.Z); }

/// μ̌*(ρq) = -2π ∫_∂P e^{ρq} dσ / ∫_P e^{ρq} dμ
inline double mu_star(const PiecewiseAffineConvex& q, double rho = 1.0) { return mu_from(entropy_terms(q, rho)); }

/// σ̌*(ρq) = ∫_P (n + ρq) e^{ρq} dμ / ∫_P e^{ρq} dμ - log ∫_P e^{ρq} dμ
inline double sigma_star(const PiecewiseAffineConvex& q, double rho = 1.0) { return sigma_from(entropy_terms(q, rho)); }

inline double mu_lambda(const PiecewiseAffineConvex& q, double lambda, double rho = 1.0)
{
    auto t = entropy_terms(q, rho);
    return mu_from(t) + lambda * sigma_from(t);
}

/// q + f for an affine f (cells are unchanged).
inline PiecewiseAffineConvex add_affine(const PiecewiseAffineConvex& q, const AffineForm& f)
{
    auto p = q.pieces();
    for (auto& e : p) {
        e.gradient = e.gradient + f.gradient;
        e.constant += f.constant;
    }
    return {std::move(p), q.domain_ptr()};
}

/// The exponent q_ξ + ρ q₀ as s·g with g convex and s = ±1, so that it can
/// be integrated for either sign of ρ.
struct Ray {
    PiecewiseAffineConvex g;
    double s;
};

inline Ray ray_point(const PiecewiseAffineConvex& q0, std::span<const double> xi, double rho)
{
    const std::size_t n = q0.dimension();
    RationalVector x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = from_double(xi[i]);
    const double s = rho >= 0 ? 1.0 : -1.0;
    // s·g = ρ q₀ - <μ, ξ>  with  g = |ρ| q₀ - s <μ, ξ>
    AffineForm lin{RationalVector(n), 0};
    for (std::size_t i = 0; i < n; ++i)
        lin.gradient[i] = s > 0 ? Rational(-x[i]) : x[i];
    return {add_affine(q0.scaled(from_double(std::abs(rho))), lin), s};
}

/// -d/dρ|₀ μ̌*^λ(q + ρ q₀), from first-variation integrals at q.
inline double futaki(const PiecewiseAffineConvex& q, const PiecewiseAffineConvex& q0, double lambda)
{
    const double n = static_cast<double>(q.dimension());
    const auto t = entropy_terms(q);
    const Weight w0 = pa_weight(q0);
    const double dZ = polytope_exp_integral(q, 1.0, w0).value;
    const double dB = boundary_exp_integral(q, 1.0, w0).value;
    const double dA = dZ + polytope_exp_integral(q, 1.0, (n * unit_weight() + q_weight(1)) * w0).value;
    const double dmu = -2.0 * std::numbers::pi * (dB * t.Z - t.B * dZ) / (t.Z * t.Z);
    const double dsigma = (dA * t.Z - t.A * dZ) / (t.Z * t.Z) - dZ / t.Z;
    return -(dmu + lambda * dsigma);
}

/// Futaki invariant at the proper vector ξ (q_ξ = -<μ, ξ>).
inline double futaki(const PiecewiseAffineConvex& q0, std::span<const double> xi, double lambda)
{
    auto r = ray_point(q0, xi, 0.0);
    return futaki(r.g, q0, lambda);
}

struct EntropyRecord {
    double parameter = 0.0;
    double numerator = 0.0;   // ∫_∂P e^q dσ
    double denominator = 0.0; // ∫_P e^q dμ
    double mu = 0.0;
    double sigma = 0.0;
    double mu_lambda = 0.0;
};

struct EntropyReport {
    double lambda = 0.0;
    std::vector<double> grid;
    std::vector<EntropyRecord> records;
};

namespace detail {

template <class F>
void parallel_for(std::size_t count, F&& body)
{
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(count, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers)
                body(i);
        });
    for (auto& t : pool)
        t.join();
}

} // namespace detail

inline EntropyRecord entropy_record(const Ray& r, double parameter, double lambda)
{
    const auto t = entropy_terms(r.g, r.s);
    EntropyRecord rec;
    rec.parameter = parameter;
    rec.numerator = t.B;
    rec.denominator = t.Z;
    rec.mu = mu_from(t);
    rec.sigma = sigma_from(t);
    rec.mu_lambda = rec.mu + lambda * rec.sigma;
    return rec;
}

/// μ̌*^λ(q_ξ + ρ q₀) over a grid of ρ.
inline EntropyReport entropy_curve(const PiecewiseAffineConvex& q0, std::span<const double> xi, double lambda,
                                   std::span<const double> grid)
{
    EntropyReport rep;
    rep.lambda = lambda;
    rep.grid.assign(grid.begin(), grid.end());
    rep.records.resize(grid.size());
    detail::parallel_for(grid.size(), [&](std::size_t i) {
        rep.records[i] = entropy_record(ray_point(q0, xi, grid[i]), grid[i], lambda);
    });
    return rep;
}

/// (K_X·e^L)/(e^L), taken as -(boundary measure)/volume.
inline Rational canonical_slope(const LatticePolytope& P) { return -P.boundary_measure() / P.volume(); }

/// M_NA = ∫_∂P q dσ + ((K_X·e^L)/(e^L)) ∫_P q dμ, exactly.
inline Rational mabuchi_slope_exact(const PiecewiseAffineConvex& q)
{
    return q_moment(q, 1, true) + canonical_slope(q.domain()) * q_moment(q, 1);
}

inline double mabuchi_slope(const PiecewiseAffineConvex& q) { return to_double(mabuchi_slope_exact(q)); }

struct CalabiReport {
    double mabuchi = 0.0;     // M_NA
    double norm_sq = 0.0;     // ‖φ̄‖²
    double c_na = 0.0;        // C_NA
    double rho_max = 0.0;     // argmax over ρ >= 0 of C_NA(ρq)
    double normalized_df = 0.0; // sup over ρ >= 0 of C_NA(ρq)
    Rational mabuchi_exact = 0;
    Rational norm_sq_exact = 0;
};

inline CalabiReport calabi(const PiecewiseAffineConvex& q)
{
    const double pi = std::numbers::pi;
    CalabiReport r;
    r.mabuchi_exact = mabuchi_slope_exact(q);
    r.norm_sq_exact = dh_summary(q).variance_norm_sq();
    r.mabuchi = to_double(r.mabuchi_exact);
    r.norm_sq = to_double(r.norm_sq_exact);
    const double vol = to_double(q.domain().volume());
    r.c_na = -(2.0 * pi * r.mabuchi + 0.5 * r.norm_sq) / vol;
    if (r.mabuchi_exact >= 0) {
        r.rho_max = 0.0;
        r.normalized_df = 0.0;
    } else if (r.norm_sq_exact == 0) {
        r.rho_max = std::numeric_limits<double>::infinity();
        r.normalized_df = std::numeric_limits<double>::infinity();
    } else {
        r.rho_max = -2.0 * pi * r.mabuchi / r.norm_sq;
        r.normalized_df = 2.0 * pi * pi * r.mabuchi * r.mabuchi / (vol * r.norm_sq);
    }
    return r;
}

struct ExtremalCheck {
    double lhs = 0.0, rhs = 0.0, gap = 0.0;
};

/// lhs = ρ⁻¹(μ̌*^{-1/ρ}(ρq) - μ̌*^{-1/ρ}(0)), rhs = C_NA(q).
inline ExtremalCheck extremal_limit_check(const PiecewiseAffineConvex& q, double rho)
{
    const auto a = entropy_terms(q, rho);
    const auto b = entropy_terms(q, 0.0);
    const double dmu = mu_from(a) - mu_from(b);
    const double dsigma = sigma_from(a) - sigma_from(b);
    ExtremalCheck c;
    c.lhs = dmu / rho - dsigma / (rho * rho);
    c.rhs = calabi(q).c_na;
    c.gap = std::abs(c.lhs - c.rhs);
    return c;
}

/// 2ρ⁻²(σ̌*(ρq) - σ̌*(0)), which tends to ‖φ̄‖²/vol.
inline double sigma_curvature(const PiecewiseAffineConvex& q, double rho)
{
    return 2.0 * (sigma_star(q, rho) - sigma_star(q, 0.0)) / (rho * rho);
}

} // namespace toric
