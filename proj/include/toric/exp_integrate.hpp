#pragma once

// ∫_P w e^{ρq} dμ and ∫_∂P w e^{ρq} dσ for piecewise-affine q and polynomial
// weights, plus vertex localization of ∫ e^{<μ,ξ>}.

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "toric/divided_difference.hpp"
#include "toric/pa_convex.hpp"
#include "toric/polytope.hpp"
#include "toric/rational.hpp"

namespace toric {

class NearSingularDirection : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class NonSimpleVertex : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ValidationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Method { automatic, triangulation, localization };

inline const char* to_string(Method m)
{
    switch (m) {
    case Method::triangulation:
        return "triangulation";
    case Method::localization:
        return "localization";
    default:
        return "auto";
    }
}

struct IntegralResult {
    double value = 0.0;
    Method method = Method::triangulation;
    double estimated_abs_error = 0.0;
    double genericity_margin = std::numeric_limits<double>::quiet_NaN();
};

/// coeff · Π affine · q^q_power · Π pa, where q is the exponent function.
struct WeightTerm {
    double coeff = 1.0;
    std::vector<AffineForm> affine;
    unsigned q_power = 0;
    std::vector<PiecewiseAffineConvex> pa;
};

using Weight = std::vector<WeightTerm>;

inline Weight unit_weight() { return {WeightTerm{}}; }
inline Weight affine_weight(AffineForm f) { return {WeightTerm{1.0, {std::move(f)}, 0, {}}}; }
inline Weight q_weight(unsigned power = 1) { return {WeightTerm{1.0, {}, power, {}}}; }
inline Weight pa_weight(const PiecewiseAffineConvex& f) { return {WeightTerm{1.0, {}, 0, {f}}}; }

inline Weight operator+(Weight a, const Weight& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

inline Weight operator*(double c, Weight w)
{
    for (auto& t : w)
        t.coeff *= c;
    return w;
}

inline Weight operator*(const Weight& a, const Weight& b)
{
    Weight out;
    for (const auto& s : a)
        for (const auto& t : b) {
            WeightTerm u = s;
            u.coeff *= t.coeff;
            u.affine.insert(u.affine.end(), t.affine.begin(), t.affine.end());
            u.q_power += t.q_power;
            u.pa.insert(u.pa.end(), t.pa.begin(), t.pa.end());
            out.push_back(std::move(u));
        }
    return out;
}

namespace detail {

// Neumaier summation, so the result does not depend on cancellation luck.
struct CompensatedSum {
    double sum = 0.0, comp = 0.0, abs = 0.0;
    void add(double x)
    {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
        abs += std::abs(x);
    }
    double value() const { return sum + comp; }
};

} // namespace detail

/// ∫_Δ Π_j L_j e^ℓ over a simplex with k+1 vertices and lattice measure
/// `measure`, given ℓ(v_i) = a[i] and L_j(v_i) = f[j][i].
///
/// Differentiating k!·measure·exp[a_0..a_k] in the node values gives one
/// extra (confluent) node per factor.
inline double simplex_kernel(double measure, std::span<const double> a, const std::vector<std::vector<double>>& f)
{
    const std::size_t m = a.size();
    double scale = measure;
    for (std::size_t i = 2; i < m; ++i)
        scale *= static_cast<double>(i);
    if (f.empty())
        return scale * divided_difference_exp(a);

    const std::size_t k = f.size();
    std::vector<double> nodes(a.begin(), a.end());
    nodes.resize(m + k);
    std::vector<std::size_t> tuple(k, 0);
    std::vector<unsigned> mult(m, 0);
    detail::CompensatedSum acc;
    while (true) {
        double coef = 1.0;
        std::fill(mult.begin(), mult.end(), 0u);
        for (std::size_t j = 0; j < k; ++j) {
            coef *= f[j][tuple[j]];
            nodes[m + j] = a[tuple[j]];
            coef *= static_cast<double>(++mult[tuple[j]]);
        }
        if (coef != 0.0)
            acc.add(coef * divided_difference_exp(nodes));
        std::size_t j = 0;
        while (j < k && ++tuple[j] == m)
            tuple[j++] = 0;
        if (j == k)
            break;
    }
    return scale * acc.value();
}

/// ∫_Δ w e^{e(μ)} dμ; w defaults to 1.
inline double simplex_exp_integral(const Simplex& s, const AffineForm& e, const std::optional<AffineForm>& w = std::nullopt)
{
    std::vector<double> a;
    std::vector<std::vector<double>> f;
    if (w)
        f.emplace_back();
    for (const auto& v : s.vertices) {
        a.push_back(to_double(e(v)));
        if (w)
            f.front().push_back(to_double((*w)(v)));
    }
    return simplex_kernel(to_double(s.measure), a, f);
}

namespace detail {

struct ActiveCell {
    const LatticePolytope* polytope;
    std::vector<std::size_t> pieces; // [0] is the exponent function
};

inline IntegralResult integrate_pa(const PiecewiseAffineConvex& q, double rho, const Weight& weight, bool boundary)
{
    // functions that must be affine on each cell: q first, then every distinct PA factor
    std::vector<PiecewiseAffineConvex> fs{q};
    std::vector<std::vector<std::size_t>> term_pa(weight.size());
    for (std::size_t t = 0; t < weight.size(); ++t)
        for (const auto& g : weight[t].pa) {
            std::size_t idx = fs.size();
            for (std::size_t i = 0; i < fs.size(); ++i)
                if (fs[i].same_as(g))
                    idx = i;
            if (idx == fs.size())
                fs.push_back(g);
            term_pa[t].push_back(idx);
        }

    std::vector<RefinedCell> refined;
    std::vector<ActiveCell> cells;
    if (fs.size() == 1) {
        for (const auto& c : q.cells())
            cells.push_back({&c.polytope, {c.piece}});
    } else {
        refined = common_refinement(fs);
        for (const auto& c : refined)
            cells.push_back({&c.polytope, c.pieces});
    }

    const LatticePolytope& P = q.domain();
    CompensatedSum total;
    std::vector<double> a;
    std::vector<std::vector<double>> f;
    auto run_simplex = [&](const ActiveCell& cell, const Simplex& s) {
        const AffineForm& piece = q.pieces()[cell.pieces[0]];
        a.clear();
        std::vector<double> qv;
        for (const auto& v : s.vertices) {
            qv.push_back(to_double(piece(v)));
            a.push_back(rho * qv.back());
        }
        const double measure = to_double(s.measure);
        for (std::size_t t = 0; t < weight.size(); ++t) {
            const auto& term = weight[t];
            f.clear();
            for (const auto& l : term.affine) {
                f.emplace_back();
                for (const auto& v : s.vertices)
                    f.back().push_back(to_double(l(v)));
            }
            for (unsigned k = 0; k < term.q_power; ++k)
                f.push_back(qv);
            for (auto idx : term_pa[t]) {
                const AffineForm& g = fs[idx].pieces()[cell.pieces[idx]];
                f.emplace_back();
                for (const auto& v : s.vertices)
                    f.back().push_back(to_double(g(v)));
            }
            total.add(term.coeff * simplex_kernel(measure, a, f));
        }
    };

    for (const auto& cell : cells) {
        if (!boundary) {
            for (const auto& s : cell.polytope->simplices())
                run_simplex(cell, s);
            continue;
        }
        for (const auto& facet : cell.polytope->facets()) {
            if (!P.find_facet(facet.normal, facet.offset))
                continue;
            for (const auto& s : facet.simplices)
                run_simplex(cell, s);
        }
    }
    IntegralResult r;
    r.value = total.value();
    r.method = Method::triangulation;
    r.estimated_abs_error = 64.0 * std::numeric_limits<double>::epsilon() * total.abs;
    return r;
}

inline double vector_norm(std::span<const double> v)
{
    double s = 0.0;
    for (double x : v)
        s += x * x;
    return std::sqrt(s);
}

} // namespace detail

/// Vertex localization of ∫_P e^{<μ,ξ>} dμ (or of the boundary integral
/// against dσ). Needs a simple polytope and a direction that is not nearly
/// orthogonal to any edge.
inline IntegralResult brion_localize(const LatticePolytope& P, std::span<const double> xi, bool boundary = false)
{
    const std::size_t n = P.dimension();
    if (xi.size() != n)
        throw std::invalid_argument("brion_localize: dimension mismatch");
    const double xi_norm = detail::vector_norm(xi);
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& c : P.vertex_cones()) {
        if (!c.simple)
            throw NonSimpleVertex("localization needs a simple polytope");
        for (const auto& g : c.generators) {
            auto gd = to_double(g);
            double m = std::abs(dot(gd, xi)) / (xi_norm * detail::vector_norm(gd));
            if (!(m >= 0))
                m = 0;
            margin = std::min(margin, m);
        }
    }
    if (xi_norm == 0.0 || margin < 1e-6)
        throw NearSingularDirection("direction is nearly orthogonal to an edge (margin " + std::to_string(xi_norm == 0.0 ? 0.0 : margin) + ")");

    const double sign_n = (n % 2 == 0) ? 1.0 : -1.0;
    detail::CompensatedSum acc;
    for (std::size_t vi = 0; vi < P.vertices().size(); ++vi) {
        const auto& c = P.vertex_cones()[vi];
        const double ev = std::exp(dot(to_double(P.vertices()[vi]), xi));
        std::vector<double> pairing;
        for (const auto& g : c.generators)
            pairing.push_back(dot(to_double(g), xi));
        if (!boundary) {
            double den = 1.0;
            for (double p : pairing)
                den *= p;
            acc.add(sign_n * ev * c.index.convert_to<double>() / den);
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) {
            const auto& u = P.facets()[c.facets[i]].normal;
            RationalMatrix m{u};
            double den = 1.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) {
                    m.push_back(c.generators[j]);
                    den *= pairing[j];
                }
            Rational idx = determinant(m);
            if (idx < 0)
                idx = -idx;
            idx /= squared_norm(u);
            acc.add(-sign_n * ev * to_double(idx) / den);
        }
    }
    IntegralResult r;
    r.value = acc.value();
    r.method = Method::localization;
    r.estimated_abs_error = 64.0 * std::numeric_limits<double>::epsilon() * acc.abs;
    r.genericity_margin = margin;
    return r;
}

/// Localization at a degenerate ξ as a limit: the integral is entire in ξ, so
/// average Brion at ξ ± h·d and extrapolate h → 0 (Richardson, error O(h^4)).
inline IntegralResult brion_limit(const LatticePolytope& P, std::span<const double> xi, bool boundary = false)
{
    const std::size_t n = P.dimension();
    if (detail::vector_norm(xi) == 0.0) {
        IntegralResult r;
        r.value = to_double(boundary ? P.boundary_measure() : P.volume());
        r.method = Method::localization;
        return r;
    }
    double diam = 0.0;
    for (const auto& v : P.vertices())
        for (const auto& w : P.vertices())
            diam = std::max(diam, detail::vector_norm(to_double(v - w)));
    const double h = 4e-3 / (1.0 + diam);

    for (int attempt = 0; attempt < 8; ++attempt) {
        std::vector<double> d(n);
        for (std::size_t i = 0; i < n; ++i)
            d[i] = std::sin(1.0 + 2.3 * static_cast<double>(i) + 0.77 * attempt);
        const double dn = detail::vector_norm(d);
        for (auto& x : d)
            x /= dn;
        try {
            double err = 0.0, margin = std::numeric_limits<double>::infinity();
            auto sym = [&](double step) {
                std::vector<double> plus(n), minus(n);
                for (std::size_t i = 0; i < n; ++i) {
                    plus[i] = xi[i] + step * d[i];
                    minus[i] = xi[i] - step * d[i];
                }
                auto a = brion_localize(P, plus, boundary);
                auto b = brion_localize(P, minus, boundary);
                err = std::max({err, a.estimated_abs_error, b.estimated_abs_error});
                margin = std::min({margin, a.genericity_margin, b.genericity_margin});
                return 0.5 * (a.value + b.value);
            };
            const double s1 = sym(h), s2 = sym(0.5 * h);
            IntegralResult r;
            r.value = (4.0 * s2 - s1) / 3.0;
            r.method = Method::localization;
            r.estimated_abs_error = 2.0 * err + std::abs(s2 - s1) * 1e-3;
            r.genericity_margin = margin;
            return r;
        } catch (const NearSingularDirection&) {
        }
    }
    throw NearSingularDirection("no generic perturbation found for the limit");
}

/// Brion when ξ is generic, its limit form otherwise.
inline IntegralResult localize(const LatticePolytope& P, std::span<const double> xi, bool boundary = false)
{
    try {
        return brion_localize(P, xi, boundary);
    } catch (const NearSingularDirection&) {
        return brion_limit(P, xi, boundary);
    }
}

namespace detail {

inline bool is_unit(const Weight& w)
{
    return w.size() == 1 && w.front().affine.empty() && w.front().q_power == 0 && w.front().pa.empty();
}

inline IntegralResult integrate(const PiecewiseAffineConvex& q, double rho, const Weight& w, Method method, bool boundary)
{
    const bool can_localize = is_unit(w) && q.is_affine() && q.domain().is_simple();
    if (method == Method::localization && can_localize) {
        const AffineForm& piece = q.pieces()[q.cells().front().piece];
        std::vector<double> xi = to_double(piece.gradient);
        for (auto& x : xi)
            x *= rho;
        auto r = localize(q.domain(), xi, boundary);
        const double c = std::exp(rho * to_double(piece.constant)) * w.front().coeff;
        r.value *= c;
        r.estimated_abs_error *= std::abs(c);
        return r;
    }
    return integrate_pa(q, rho, w, boundary);
}

} // namespace detail

/// ∫_P w e^{ρq} dμ. Localization is used only when asked for and applicable
/// (unit weight, affine q, simple P); otherwise the cell triangulation runs.
inline IntegralResult polytope_exp_integral(const PiecewiseAffineConvex& q, double rho, const Weight& w = unit_weight(),
                                            Method method = Method::automatic)
{
    return detail::integrate(q, rho, w, method, false);
}

/// ∫_∂P w e^{ρq} dσ
inline IntegralResult boundary_exp_integral(const PiecewiseAffineConvex& q, double rho, const Weight& w = unit_weight(),
                                            Method method = Method::automatic)
{
    return detail::integrate(q, rho, w, method, true);
}

struct ValidationReport {
    double max_relative_discrepancy = 0.0;
    int comparisons = 0;
    int skipped_cells = 0;
};

/// Runs triangulation and localization on q and on a few generic linear
/// perturbations of it; throws ValidationFailure above 1e-7.
inline ValidationReport cross_validate(const PiecewiseAffineConvex& q, double rho)
{
    ValidationReport rep;
    const std::size_t n = q.dimension();
    auto compare = [&](double a, double b) {
        double scale = std::max({std::abs(a), std::abs(b), 1e-300});
        rep.max_relative_discrepancy = std::max(rep.max_relative_discrepancy, std::abs(a - b) / scale);
        ++rep.comparisons;
    };
    for (int k = 0; k < 3; ++k) {
        RationalVector eps(n);
        for (std::size_t i = 0; i < n; ++i)
            eps[i] = k == 0 ? Rational(0) : Rational(k * static_cast<int>(i + 2), 97 + 11 * static_cast<int>(i));
        auto p = q.pieces();
        for (auto& f : p)
            f.gradient = f.gradient + eps;
        PiecewiseAffineConvex qk(std::move(p), q.domain_ptr());

        const double tri = polytope_exp_integral(qk, rho).value;
        double loc = 0.0;
        for (const auto& c : qk.cells()) {
            const AffineForm& piece = qk.pieces()[c.piece];
            const double scale = std::exp(rho * to_double(piece.constant));
            if (!c.polytope.is_simple()) {
                ++rep.skipped_cells;
                PiecewiseAffineConvex local({piece}, c.polytope);
                loc += polytope_exp_integral(local, rho).value;
                continue;
            }
            std::vector<double> xi = to_double(piece.gradient);
            for (auto& x : xi)
                x *= rho;
            loc += scale * localize(c.polytope, xi).value;
        }
        compare(tri, loc);
        if (qk.is_affine() && qk.domain().is_simple()) {
            compare(boundary_exp_integral(qk, rho).value, boundary_exp_integral(qk, rho, unit_weight(), Method::localization).value);
        }
    }
    if (rep.max_relative_discrepancy > 1e-7)
        throw ValidationFailure("triangulation and localization disagree: relative discrepancy " +
                                std::to_string(rep.max_relative_discrepancy));
    return rep;
}

} // namespace toric
