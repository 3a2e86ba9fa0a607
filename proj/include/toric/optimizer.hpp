#pragma once

// Maximizing μ̌*^λ over proper vectors ξ ∈ t, with the Futaki invariant as
// the exact gradient, and along one-parameter rays.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "toric/na_functionals.hpp"
#include "toric/pa_convex.hpp"
#include "toric/polytope.hpp"

namespace toric {

enum class OptimizationStatus { converged, boundary_hit, max_iter };

inline const char* to_string(OptimizationStatus s)
{
    switch (s) {
    case OptimizationStatus::converged:
        return "converged";
    case OptimizationStatus::boundary_hit:
        return "boundary-hit";
    default:
        return "max-iter";
    }
}

struct OptimizationResult {
    std::vector<double> xi;
    double value = 0.0;
    double gradient_norm = 0.0;
    std::vector<std::vector<double>> trace; // accepted iterates
    std::vector<double> trace_values;
    OptimizationStatus status = OptimizationStatus::max_iter;
    bool lambda_outside_proper_range = false;
};

class MaxIterExceeded : public std::runtime_error {
public:
    explicit MaxIterExceeded(OptimizationResult r)
        : std::runtime_error("optimizer did not converge within the iteration limit"), result(std::move(r))
    {
    }
    OptimizationResult result;
};

struct OptimizerOptions {
    double gradient_tolerance = 1e-8;
    int max_iterations = 500;
    double box_radius = 100.0; // |ξ_i| bound; only reached when properness fails
};

/// Objective ξ ↦ μ̌*^λ(q_ξ) and its gradient, ∂_i = -Fut(ξ; q₀ = -μ_i).
class ProperVectorObjective {
public:
    ProperVectorObjective(std::shared_ptr<const LatticePolytope> P, double lambda) : P_(std::move(P)), lambda_(lambda)
    {
        const std::size_t n = P_->dimension();
        for (std::size_t i = 0; i < n; ++i) {
            RationalVector g(n, Rational(0));
            g[i] = -1;
            coordinate_.push_back(make_pa({AffineForm{g, 0}}, P_));
        }
    }

    PiecewiseAffineConvex q_xi(const std::vector<double>& xi) const
    {
        return proper_vector_pa(P_, from_double(std::span<const double>(xi)));
    }

    double value(const std::vector<double>& xi) const { return mu_lambda(q_xi(xi), lambda_); }

    std::vector<double> gradient(const std::vector<double>& xi) const
    {
        auto q = q_xi(xi);
        std::vector<double> g;
        for (const auto& c : coordinate_)
            g.push_back(-futaki(q, c, lambda_));
        return g;
    }

    std::size_t dimension() const { return P_->dimension(); }

private:
    std::shared_ptr<const LatticePolytope> P_;
    double lambda_;
    std::vector<PiecewiseAffineConvex> coordinate_;
};

namespace detail {

inline double norm2(const std::vector<double>& v)
{
    double s = 0.0;
    for (double x : v)
        s += x * x;
    return std::sqrt(s);
}

inline OptimizationResult bfgs_ascent(const ProperVectorObjective& obj, std::vector<double> x, const OptimizerOptions& opt)
{
    const std::size_t n = x.size();
    OptimizationResult r;
    double f = obj.value(x);
    auto g = obj.gradient(x);
    // inverse Hessian approximation of -f
    std::vector<std::vector<double>> H(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        H[i][i] = 1.0;
    double radius = 1.0;
    r.trace.push_back(x);
    r.trace_values.push_back(f);

    auto finish = [&](OptimizationStatus st) {
        r.xi = x;
        r.value = f;
        r.gradient_norm = norm2(g);
        r.status = st;
        return r;
    };

    for (int it = 0; it < opt.max_iterations; ++it) {
        const double gn = norm2(g);
        if (gn <= opt.gradient_tolerance)
            return finish(OptimizationStatus::converged);

        std::vector<double> p(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                p[i] += H[i][j] * g[j];
        double slope = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            slope += p[i] * g[i];
        if (slope <= 0.0) {
            for (std::size_t i = 0; i < n; ++i) {
                std::fill(H[i].begin(), H[i].end(), 0.0);
                H[i][i] = 1.0;
            }
            p = g;
            slope = gn * gn;
        }
        const double pn = norm2(p);
        bool clipped = false;
        if (pn > radius) {
            for (auto& v : p)
                v *= radius / pn;
            slope *= radius / pn;
            clipped = true;
        }

        std::vector<double> xn(n);
        double t = 1.0, fn = 0.0;
        bool accepted = false;
        for (int k = 0; k < 40; ++k) {
            for (std::size_t i = 0; i < n; ++i)
                xn[i] = x[i] + t * p[i];
            fn = obj.value(xn);
            if (fn >= f + 1e-4 * t * slope) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        std::vector<double> gn_vec;
        if (!accepted) {
            // near the optimum f is flat to rounding; take the quasi-Newton step
            // if it shrinks the gradient without losing value
            for (std::size_t i = 0; i < n; ++i)
                xn[i] = x[i] + p[i];
            fn = obj.value(xn);
            gn_vec = obj.gradient(xn);
            if (!(norm2(gn_vec) < gn && fn >= f - 4e-16 * std::abs(f)))
                return finish(OptimizationStatus::max_iter);
            t = 1.0;
        } else {
            gn_vec = obj.gradient(xn);
        }

        bool at_box = false;
        for (auto& v : xn)
            if (std::abs(v) > opt.box_radius) {
                v = std::clamp(v, -opt.box_radius, opt.box_radius);
                at_box = true;
            }
        if (at_box) {
            fn = obj.value(xn);
            gn_vec = obj.gradient(xn);
        }

        std::vector<double> s(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = xn[i] - x[i];
            y[i] = -(gn_vec[i] - g[i]);
        }
        double sy = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            sy += s[i] * y[i];
        if (sy > 1e-14 * norm2(s) * norm2(y) && sy > 0.0) {
            std::vector<double> Hy(n, 0.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    Hy[i] += H[i][j] * y[j];
            double yHy = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                yHy += y[i] * Hy[i];
            const double rho = 1.0 / sy;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    H[i][j] += (1.0 + yHy * rho) * rho * s[i] * s[j] - rho * (Hy[i] * s[j] + s[i] * Hy[j]);
        }

        if (clipped && t == 1.0)
            radius *= 2.0;
        else if (t < 1.0)
            radius = std::max(0.5 * radius, 1e-8);

        x = xn;
        f = fn;
        g = gn_vec;
        r.trace.push_back(x);
        r.trace_values.push_back(f);
        if (at_box)
            return finish(norm2(g) <= opt.gradient_tolerance ? OptimizationStatus::converged : OptimizationStatus::boundary_hit);
    }
    return finish(norm2(g) <= opt.gradient_tolerance ? OptimizationStatus::converged : OptimizationStatus::max_iter);
}

} // namespace detail

/// Default seeds {0, ±e_i, ±Σe_i}.
inline std::vector<std::vector<double>> default_seeds(std::size_t n)
{
    std::vector<std::vector<double>> seeds{std::vector<double>(n, 0.0)};
    for (std::size_t i = 0; i < n; ++i)
        for (double s : {1.0, -1.0}) {
            std::vector<double> e(n, 0.0);
            e[i] = s;
            seeds.push_back(e);
        }
    if (n > 1)
        for (double s : {1.0, -1.0})
            seeds.push_back(std::vector<double>(n, s));
    return seeds;
}

/// Multi-start BFGS ascent of ξ ↦ μ̌*^λ(q_ξ). Seeds run concurrently; the best
/// value wins, ties broken lexicographically on ξ.
inline OptimizationResult maximize_over_vectors(std::shared_ptr<const LatticePolytope> P, double lambda,
                                                std::vector<std::vector<double>> seeds = {},
                                                const OptimizerOptions& opt = {})
{
    if (seeds.empty())
        seeds = default_seeds(P->dimension());
    ProperVectorObjective obj(P, lambda);
    std::vector<OptimizationResult> results(seeds.size());
    detail::parallel_for(seeds.size(), [&](std::size_t i) { results[i] = detail::bfgs_ascent(obj, seeds[i], opt); });

    std::size_t best = 0;
    for (std::size_t i = 1; i < results.size(); ++i) {
        const double a = results[i].value, b = results[best].value;
        const double tie = 1e-12 * std::max(1.0, std::abs(b));
        if (a > b + tie || (std::abs(a - b) <= tie && results[i].xi < results[best].xi))
            best = i;
    }
    OptimizationResult r = std::move(results[best]);
    r.lambda_outside_proper_range = lambda > 0;
    if (r.status == OptimizationStatus::max_iter)
        throw MaxIterExceeded(std::move(r));
    return r;
}

struct RayResult {
    double x = 0.0;
    double value = 0.0;
    double derivative = 0.0;
};

/// x ↦ μ̌*^λ(x<μ, η>) and its exact derivative.
class RayObjective {
public:
    RayObjective(std::shared_ptr<const LatticePolytope> P, const RationalVector& eta, double lambda)
        : P_(std::move(P)), eta_(eta), lambda_(lambda), direction_(make_pa({AffineForm{eta, 0}}, P_))
    {
    }

    PiecewiseAffineConvex q_at(double x) const { return make_pa({AffineForm{from_double(x) * eta_, 0}}, P_); }
    double value(double x) const { return mu_lambda(q_at(x), lambda_); }
    double derivative(double x) const { return -futaki(q_at(x), direction_, lambda_); }

private:
    std::shared_ptr<const LatticePolytope> P_;
    RationalVector eta_;
    double lambda_;
    PiecewiseAffineConvex direction_;
};

/// Global max over x of μ̌*^λ(x<μ,η>): grid scan on an expanding bracket,
/// golden-section refinement, then bisection on the sign of the derivative.
inline RayResult maximize_along_ray(std::shared_ptr<const LatticePolytope> P, const RationalVector& eta, double lambda,
                                    double bracket = 1.0)
{
    RayObjective obj(P, eta, lambda);
    constexpr int points = 41;
    double R = bracket;
    std::vector<double> xs(points), fs(points);
    std::size_t k = 0;
    for (int expand = 0; expand < 12; ++expand) {
        for (int i = 0; i < points; ++i) {
            xs[i] = -R + 2.0 * R * i / (points - 1);
            fs[i] = obj.value(xs[i]);
        }
        k = static_cast<std::size_t>(std::max_element(fs.begin(), fs.end()) - fs.begin());
        if (k != 0 && k != points - 1)
            break;
        R *= 2.0;
    }
    double a = xs[k > 0 ? k - 1 : 0], b = xs[k + 1 < points ? k + 1 : k];

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double fc = obj.value(c), fd = obj.value(d);
    while (b - a > 1e-5) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = obj.value(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = obj.value(d);
        }
    }
    double x = 0.5 * (a + b);

    // sign change of the derivative around x
    double lo = x - 1e-4, hi = x + 1e-4;
    double dlo = obj.derivative(lo), dhi = obj.derivative(hi);
    for (int i = 0; i < 30 && !(dlo >= 0 && dhi <= 0); ++i) {
        lo -= (hi - lo);
        hi += (hi - lo) / 3.0;
        dlo = obj.derivative(lo);
        dhi = obj.derivative(hi);
    }
    if (dlo >= 0 && dhi <= 0) {
        while (hi - lo > 1e-10) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi)
                break;
            if (obj.derivative(mid) >= 0)
                lo = mid;
            else
                hi = mid;
        }
        x = 0.5 * (lo + hi);
    }
    return {x, obj.value(x), obj.derivative(x)};
}

/// sup over ρ >= 0 of C_NA(ρq₀), in closed form.
inline CalabiReport normalized_df(const PiecewiseAffineConvex& q0) { return calabi(q0); }

/// The same supremum found numerically: golden section on ρ ↦ C_NA(ρq₀),
/// evaluating C_NA afresh at each rational ρ.
inline std::pair<double, double> normalized_df_numeric(const PiecewiseAffineConvex& q0, double rho_hi = 0.0)
{
    auto C = [&](double rho) { return calabi(q0.scaled(from_double(rho))).c_na; };
    if (rho_hi <= 0.0) {
        rho_hi = 1.0;
        while (C(2.0 * rho_hi) > C(rho_hi) && rho_hi < 1e8)
            rho_hi *= 2.0;
        rho_hi *= 2.0;
    }
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 0.0, b = rho_hi;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double fc = C(c), fd = C(d);
    while (b - a > 1e-10 * std::max(1.0, b)) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = C(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = C(d);
        }
    }
    const double rho = 0.5 * (a + b);
    return {rho, std::max(C(rho), C(0.0))};
}

} // namespace toric
