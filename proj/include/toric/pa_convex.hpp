#pragma once

// Piecewise-affine convex functions q(μ) = max_E (<μ, η_E> - λ_E) on a
// polytope, their cell decompositions, Legendre transforms and rooftops.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "toric/polytope.hpp"
#include "toric/rational.hpp"

namespace toric {

class EmptyPieces : public std::invalid_argument {
public:
    EmptyPieces() : std::invalid_argument("piecewise-affine function needs at least one piece") {}
};

/// μ ↦ <μ, gradient> + constant
struct AffineForm {
    RationalVector gradient;
    Rational constant = 0;

    Rational operator()(const RationalVector& mu) const { return dot(gradient, mu) + constant; }

    double operator()(std::span<const double> mu) const
    {
        double s = to_double(constant);
        for (std::size_t i = 0; i < mu.size(); ++i)
            s += to_double(gradient[i]) * mu[i];
        return s;
    }

    friend bool operator==(const AffineForm&, const AffineForm&) = default;
    friend bool operator<(const AffineForm& a, const AffineForm& b)
    {
        if (a.gradient != b.gradient)
            return a.gradient < b.gradient;
        return a.constant < b.constant;
    }
};

/// The piece <μ, η> - λ.
inline AffineForm affine_piece(RationalVector eta, const Rational& lambda) { return {std::move(eta), Rational(-lambda)}; }

struct Cell {
    std::size_t piece; // index into pieces()
    LatticePolytope polytope;
};

class PiecewiseAffineConvex {
public:
    PiecewiseAffineConvex(std::vector<AffineForm> pieces, LatticePolytope domain)
        : PiecewiseAffineConvex(std::move(pieces), std::make_shared<const LatticePolytope>(std::move(domain)))
    {
    }

    PiecewiseAffineConvex(std::vector<AffineForm> pieces, std::shared_ptr<const LatticePolytope> domain)
    {
        if (pieces.empty())
            throw EmptyPieces();
        for (const auto& p : pieces)
            if (p.gradient.size() != domain->dimension())
                throw std::invalid_argument("piece dimension does not match the polytope");
        std::sort(pieces.begin(), pieces.end());
        pieces.erase(std::unique(pieces.begin(), pieces.end()), pieces.end());

        auto d = std::make_shared<Data>();
        d->domain = std::move(domain);
        d->pieces = std::move(pieces);
        if (d->pieces.size() == 1)
            d->cells.push_back({0, *d->domain});
        for (std::size_t e = 0; e < d->pieces.size() && d->pieces.size() > 1; ++e) {
            auto hs = d->domain->halfspaces();
            append_dominance(hs, d->pieces, e);
            if (auto cell = LatticePolytope::from_halfspaces(d->domain->dimension(), hs))
                d->cells.push_back({e, std::move(*cell)});
        }
        data_ = std::move(d);
    }

    const LatticePolytope& domain() const { return *data_->domain; }
    const std::shared_ptr<const LatticePolytope>& domain_ptr() const { return data_->domain; }
    const std::vector<AffineForm>& pieces() const { return data_->pieces; }
    const std::vector<Cell>& cells() const { return data_->cells; }
    std::size_t dimension() const { return data_->domain->dimension(); }

    Rational operator()(const RationalVector& mu) const
    {
        Rational best = pieces().front()(mu);
        for (std::size_t i = 1; i < pieces().size(); ++i)
            best = std::max(best, pieces()[i](mu));
        return best;
    }

    double operator()(std::span<const double> mu) const
    {
        double best = pieces().front()(mu);
        for (std::size_t i = 1; i < pieces().size(); ++i)
            best = std::max(best, pieces()[i](mu));
        return best;
    }

    /// Pieces that attain the max on a full-dimensional part of P.
    PiecewiseAffineConvex reduced() const
    {
        std::vector<AffineForm> active;
        for (const auto& c : cells())
            active.push_back(pieces()[c.piece]);
        return {std::move(active), domain_ptr()};
    }

    bool is_affine() const { return cells().size() == 1; }

    bool same_as(const PiecewiseAffineConvex& other) const { return data_ == other.data_; }

    PiecewiseAffineConvex operator+(const Rational& c) const
    {
        auto p = pieces();
        for (auto& f : p)
            f.constant += c;
        return {std::move(p), domain_ptr()};
    }

    /// r·q for r >= 0.
    PiecewiseAffineConvex scaled(const Rational& r) const
    {
        if (r < 0)
            throw std::invalid_argument("negative multiple of a convex function is not convex");
        auto p = pieces();
        for (auto& f : p) {
            for (auto& g : f.gradient)
                g *= r;
            f.constant *= r;
        }
        return {std::move(p), domain_ptr()};
    }

    /// Every vertex of every cell (with repeats removed).
    std::vector<RationalVector> cell_vertices() const
    {
        std::vector<RationalVector> pts;
        for (const auto& c : cells())
            pts.insert(pts.end(), c.polytope.vertices().begin(), c.polytope.vertices().end());
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        return pts;
    }

    Rational max_value() const
    {
        auto pts = cell_vertices();
        Rational m = (*this)(pts.front());
        for (const auto& p : pts)
            m = std::max(m, (*this)(p));
        return m;
    }

    Rational min_value() const
    {
        auto pts = cell_vertices();
        Rational m = (*this)(pts.front());
        for (const auto& p : pts)
            m = std::min(m, (*this)(p));
        return m;
    }

    // Region of P where piece e attains the max: piece_f <= piece_e for all f.
    static void append_dominance(std::vector<Halfspace>& hs, const std::vector<AffineForm>& pieces, std::size_t e)
    {
        for (std::size_t f = 0; f < pieces.size(); ++f) {
            if (f == e)
                continue;
            hs.push_back({pieces[f].gradient - pieces[e].gradient, pieces[e].constant - pieces[f].constant});
        }
    }

private:
    struct Data {
        std::shared_ptr<const LatticePolytope> domain;
        std::vector<AffineForm> pieces;
        std::vector<Cell> cells;
    };
    std::shared_ptr<const Data> data_;
};

inline PiecewiseAffineConvex make_pa(std::vector<AffineForm> pieces, LatticePolytope P)
{
    return {std::move(pieces), std::move(P)};
}

inline PiecewiseAffineConvex make_pa(std::vector<AffineForm> pieces, std::shared_ptr<const LatticePolytope> P)
{
    return {std::move(pieces), std::move(P)};
}

inline PiecewiseAffineConvex constant_pa(std::shared_ptr<const LatticePolytope> P, const Rational& c)
{
    return {{AffineForm{RationalVector(P->dimension(), Rational(0)), c}}, std::move(P)};
}

/// q_ξ(μ) = -<μ, ξ>
inline PiecewiseAffineConvex proper_vector_pa(std::shared_ptr<const LatticePolytope> P, const RationalVector& xi)
{
    RationalVector g(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i)
        g[i] = -xi[i];
    return {{AffineForm{std::move(g), 0}}, std::move(P)};
}

/// max{q, -τ}
inline PiecewiseAffineConvex rooftop(const PiecewiseAffineConvex& q, const Rational& tau)
{
    auto p = q.pieces();
    p.push_back({RationalVector(q.dimension(), Rational(0)), Rational(-tau)});
    return {std::move(p), q.domain_ptr()};
}

inline PiecewiseAffineConvex rooftop(const PiecewiseAffineConvex& q, double tau) { return rooftop(q, from_double(tau)); }

struct RefinedCell {
    LatticePolytope polytope;
    std::vector<std::size_t> pieces; // active piece of each function
};

/// Cells on which every one of the given functions is affine.
inline std::vector<RefinedCell> common_refinement(std::span<const PiecewiseAffineConvex> fs)
{
    if (fs.empty())
        throw std::invalid_argument("common_refinement: no functions");
    for (const auto& f : fs)
        if (f.domain_ptr() != fs.front().domain_ptr() && f.domain().vertices() != fs.front().domain().vertices())
            throw std::invalid_argument("common_refinement: functions live on different polytopes");

    std::vector<RefinedCell> cells;
    for (const auto& c : fs.front().cells())
        cells.push_back({c.polytope, {c.piece}});
    const std::size_t n = fs.front().dimension();
    for (std::size_t k = 1; k < fs.size(); ++k) {
        std::vector<RefinedCell> next;
        for (const auto& cell : cells) {
            for (const auto& c : fs[k].cells()) {
                auto hs = cell.polytope.halfspaces();
                PiecewiseAffineConvex::append_dominance(hs, fs[k].pieces(), c.piece);
                auto clipped = LatticePolytope::from_halfspaces(n, hs);
                if (!clipped)
                    continue;
                auto idx = cell.pieces;
                idx.push_back(c.piece);
                next.push_back({std::move(*clipped), std::move(idx)});
            }
        }
        cells = std::move(next);
    }
    return cells;
}

/// f(ξ) = max_w (<w, ξ> - c_w), a finite max of affine functions on t.
struct MaxAffine {
    std::vector<RationalVector> slopes;
    std::vector<Rational> offsets;

    Rational operator()(const RationalVector& xi) const
    {
        Rational best = dot(slopes.front(), xi) - offsets.front();
        for (std::size_t i = 1; i < slopes.size(); ++i)
            best = std::max(best, Rational(dot(slopes[i], xi) - offsets[i]));
        return best;
    }

    double operator()(std::span<const double> xi) const
    {
        double best = -HUGE_VAL;
        for (std::size_t i = 0; i < slopes.size(); ++i) {
            double s = -to_double(offsets[i]);
            for (std::size_t j = 0; j < xi.size(); ++j)
                s += to_double(slopes[i][j]) * xi[j];
            best = std::max(best, s);
        }
        return best;
    }
};

/// q*(ξ) = sup_{μ∈P} (<μ,ξ> - q(μ)); the sup is attained at a cell vertex.
inline MaxAffine legendre(const PiecewiseAffineConvex& q)
{
    MaxAffine f;
    for (auto& v : q.cell_vertices()) {
        f.offsets.push_back(q(v));
        f.slopes.push_back(std::move(v));
    }
    return f;
}

/// Lower convex envelope of the points (w, c_w): the Legendre transform of a
/// MaxAffine. Evaluates to nullopt (+∞) outside the convex hull of the slopes.
class LowerEnvelope {
public:
    explicit LowerEnvelope(MaxAffine f) : f_(std::move(f)) {}

    std::optional<Rational> operator()(const RationalVector& mu) const
    {
        const std::size_t n = mu.size();
        const std::size_t k = f_.slopes.size();
        std::optional<Rational> best;
        auto consider = [&](const std::vector<std::size_t>& s) {
            // barycentric coordinates of mu in the simplex spanned by the chosen slopes
            RationalMatrix a;
            RationalVector b;
            for (std::size_t r = 0; r < n; ++r) {
                RationalVector row;
                for (auto i : s)
                    row.push_back(f_.slopes[i][r]);
                a.push_back(std::move(row));
                b.push_back(mu[r]);
            }
            a.push_back(RationalVector(s.size(), Rational(1)));
            b.push_back(1);
            auto lam = solve(std::move(a), std::move(b));
            if (!lam)
                return;
            Rational v = 0;
            for (std::size_t i = 0; i < s.size(); ++i) {
                if ((*lam)[i] < 0)
                    return;
                v += (*lam)[i] * f_.offsets[s[i]];
            }
            if (!best || v < *best)
                best = v;
        };
        if (k <= n)
            return std::nullopt;
        detail::for_each_combination(k, n + 1, consider);
        return best;
    }

private:
    MaxAffine f_;
};

inline LowerEnvelope legendre_dual(MaxAffine f) { return LowerEnvelope(std::move(f)); }

} // namespace toric
