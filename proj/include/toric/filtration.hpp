#pragma once

// Monomial filtrations of toric section rings, their spectral measures ν_m,
// and the m·log limit defining the characteristic μ-entropy.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "toric/exp_integrate.hpp"
#include "toric/pa_convex.hpp"
#include "toric/polytope.hpp"
#include "toric/rational.hpp"

namespace toric {

class NonConvergent : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Lattice points of mP: the monomial basis of H^0(X, L^m).
struct GradedSections {
    unsigned m = 0;
    std::vector<RationalVector> points;
    std::size_t dimension() const { return points.size(); }
};

inline GradedSections sections(const LatticePolytope& P, unsigned m)
{
    if (m == 0)
        throw std::invalid_argument("sections: level must be >= 1");
    const std::size_t n = P.dimension();
    std::vector<Integer> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rational a = P.vertices().front()[i], b = a;
        for (const auto& v : P.vertices()) {
            a = std::min(a, v[i]);
            b = std::max(b, v[i]);
        }
        lo[i] = ceil_int(a * m);
        hi[i] = floor_int(b * m);
    }
    GradedSections s;
    s.m = m;
    RationalVector p(n);
    for (std::size_t i = 0; i < n; ++i)
        p[i] = Rational(lo[i]);
    const Rational inv_m(1, m);
    while (true) {
        if (P.contains(inv_m * p))
            s.points.push_back(p);
        std::size_t i = 0;
        while (i < n) {
            p[i] += 1;
            if (p[i] <= Rational(hi[i]))
                break;
            p[i] = Rational(lo[i]);
            ++i;
        }
        if (i == n)
            break;
    }
    return s;
}

/// λ(m, μ): the jump of the filtration at the monomial μ ∈ mP.
struct MonomialFiltration {
    std::shared_ptr<const LatticePolytope> polytope;
    std::function<Integer(unsigned, const RationalVector&)> weight;
    std::string name;
    std::optional<PiecewiseAffineConvex> source; // set when generated from q
    unsigned step = 1;                            // defined for m in step·ℕ
};

/// λ(m, μ) = floor(-m q(μ/m)), the filtration of the test configuration of q.
inline MonomialFiltration filtration_from_q(const PiecewiseAffineConvex& q, unsigned step = 1, std::string name = "q")
{
    MonomialFiltration f;
    f.polytope = q.domain_ptr();
    f.weight = [q](unsigned m, const RationalVector& mu) {
        return floor_int(-Rational(m) * q(Rational(1, m) * mu));
    };
    f.name = std::move(name);
    f.source = q;
    f.step = step;
    return f;
}

inline MonomialFiltration trivial_filtration(std::shared_ptr<const LatticePolytope> P)
{
    MonomialFiltration f;
    f.polytope = P;
    f.weight = [](unsigned, const RationalVector&) { return Integer(0); };
    f.name = "trivial";
    f.source = constant_pa(std::move(P), 0);
    return f;
}

enum class Normalization { per_dimension, per_volume };

inline const char* to_string(Normalization n) { return n == Normalization::per_dimension ? "per-dimension" : "per-volume"; }

/// Atoms λ/m with their masses, sorted by position.
struct SpectralMeasure {
    unsigned m = 0;
    Normalization normalization = Normalization::per_dimension;
    std::vector<std::pair<Rational, Rational>> atoms;

    Rational total_mass() const
    {
        Rational s = 0;
        for (const auto& a : atoms)
            s += a.second;
        return s;
    }

    /// ∫ e^{-t} ν_m
    double laplace() const
    {
        detail::CompensatedSum acc;
        for (const auto& [t, w] : atoms)
            acc.add(to_double(w) * std::exp(-to_double(t)));
        return acc.value();
    }

    /// ν_m([τ, ∞))
    Rational tail(const Rational& tau) const
    {
        Rational s = 0;
        for (const auto& [t, w] : atoms)
            if (t >= tau)
                s += w;
        return s;
    }
};

inline SpectralMeasure spectral_measure(const MonomialFiltration& F, unsigned m, Normalization norm = Normalization::per_dimension)
{
    if (m % F.step != 0)
        throw std::invalid_argument("filtration '" + F.name + "' is only defined for m divisible by " + std::to_string(F.step));
    const auto s = sections(*F.polytope, m);
    std::map<Rational, std::size_t> count;
    for (const auto& p : s.points)
        ++count[Rational(F.weight(m, p)) / m];
    Rational denom = norm == Normalization::per_dimension ? Rational(s.dimension())
                                                          : Rational(boost::multiprecision::pow(Integer(m), static_cast<unsigned>(F.polytope->dimension())));
    SpectralMeasure nu;
    nu.m = m;
    nu.normalization = norm;
    for (const auto& [t, c] : count)
        nu.atoms.emplace_back(t, Rational(c) / denom);
    return nu;
}

/// ∫ e^{-t} ν_∞: from the DH pushforward of the source q when there is one
/// (divided by vol for the per-dimension normalization).
inline std::optional<double> limit_laplace(const MonomialFiltration& F, Normalization norm)
{
    if (!F.source)
        return std::nullopt;
    double z = polytope_exp_integral(*F.source, 1.0).value;
    if (norm == Normalization::per_dimension)
        z /= to_double(F.polytope->volume());
    return z;
}

struct CharMuEstimate {
    std::vector<unsigned> levels;
    std::vector<double> sequence;     // m log(∫e^{-t}ν_m / ∫e^{-t}ν_∞)
    std::vector<double> extrapolated; // Neville diagonal, one per level
    double limit = 0.0;               // lim of the sequence
    double mu = 0.0;                  // -4π · limit
    double error_estimate = 0.0;
};

namespace detail {

// Polynomial extrapolation to h = 0 through the points (h_i, s_i), i <= k.
inline std::vector<double> neville_diagonal(const std::vector<double>& h, const std::vector<double>& s)
{
    std::vector<double> out;
    const std::size_t n = s.size();
    std::vector<std::vector<double>> T(n);
    for (std::size_t i = 0; i < n; ++i) {
        T[i].push_back(s[i]);
        for (std::size_t j = 1; j <= i; ++j) {
            const double num = h[i - j] * T[i][j - 1] - h[i] * T[i - 1][j - 1];
            T[i].push_back(num / (h[i - j] - h[i]));
        }
        out.push_back(T[i][i]);
    }
    return out;
}

} // namespace detail

/// Richardson (Neville) extrapolation in h = 1/m of the m·log sequence.
/// `limit_value` overrides ∫e^{-t}ν_∞; it defaults to limit_laplace().
inline CharMuEstimate char_mu_estimate(const MonomialFiltration& F, const std::vector<unsigned>& levels,
                                       Normalization norm = Normalization::per_dimension,
                                       std::optional<double> limit_value = std::nullopt, double tolerance = 1e-6)
{
    if (levels.size() < 2)
        throw std::invalid_argument("char_mu_estimate needs at least two levels");
    if (!limit_value)
        limit_value = limit_laplace(F, norm);
    if (!limit_value)
        throw std::invalid_argument("filtration '" + F.name + "' has no known limit measure; pass it explicitly");

    CharMuEstimate est;
    est.levels = levels;
    std::vector<double> h;
    for (unsigned m : levels) {
        const double ratio = spectral_measure(F, m, norm).laplace() / *limit_value;
        est.sequence.push_back(static_cast<double>(m) * std::log(ratio));
        h.push_back(1.0 / static_cast<double>(m));
    }
    est.extrapolated = detail::neville_diagonal(h, est.sequence);
    const std::size_t k = est.extrapolated.size();
    est.limit = est.extrapolated[k - 1];
    est.error_estimate = std::abs(est.extrapolated[k - 1] - est.extrapolated[k - 2]);
    est.mu = -4.0 * std::numbers::pi * est.limit + 0.0;
    if (!std::isfinite(est.limit) || est.error_estimate > tolerance * std::max(1.0, std::abs(est.limit)))
        throw NonConvergent("m log sequence of '" + F.name + "' does not settle (last extrapolants differ by " +
                            std::to_string(est.error_estimate) + ")");
    return est;
}

/// λ(m, μ) + λ(m', μ') <= λ(m+m', μ+μ') on random pairs of monomials.
inline bool check_submultiplicative(const MonomialFiltration& F, unsigned m1, unsigned m2, int samples = 200,
                                    unsigned seed = 7)
{
    const auto a = sections(*F.polytope, m1);
    const auto b = sections(*F.polytope, m2);
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::size_t> da(0, a.dimension() - 1), db(0, b.dimension() - 1);
    for (int i = 0; i < samples; ++i) {
        const auto& p = a.points[da(rng)];
        const auto& q = b.points[db(rng)];
        if (F.weight(m1, p) + F.weight(m2, q) > F.weight(m1 + m2, p + q))
            return false;
    }
    return true;
}

} // namespace toric
