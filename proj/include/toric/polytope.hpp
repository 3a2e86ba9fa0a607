#pragma once

// Full-dimensional rational polytopes with lattice-normalized measures.
//
// Everything here is exact. The lattice is always Z^n: volumes are Lebesgue
// volumes, and a facet with primitive outward normal u carries the measure
// (Euclidean (n-1)-volume) / |u|, which is the covolume normalization of the
// facet lattice Z^n ∩ u^⊥.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "toric/rational.hpp"

namespace toric {

class DegenerateHull : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// {μ : <μ, normal> <= offset}
struct Halfspace {
    RationalVector normal;
    Rational offset;
};

/// A simplex carrying its own lattice-normalized measure. Full-dimensional
/// simplices have n+1 vertices; facet simplices have n vertices in R^n.
struct Simplex {
    std::vector<RationalVector> vertices;
    Rational measure;
};

struct Facet {
    RationalVector normal; // primitive, outward
    Rational offset;
    std::vector<std::size_t> vertices;
    std::vector<Simplex> simplices;
    Rational measure;
};

/// Cone(P - v) data. For a simple vertex, generators[i] is the primitive edge
/// direction that leaves facets[i] and stays in every other incident facet.
struct VertexCone {
    std::vector<std::size_t> facets;
    bool simple = false;
    std::vector<RationalVector> generators;
    Integer index = 0;
};

namespace detail {

inline void for_each_combination(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn)
{
    if (k > n)
        return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i)
        idx[i] = i;
    while (true) {
        fn(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

inline Rational simplex_volume(const std::vector<RationalVector>& v)
{
    RationalMatrix m;
    for (std::size_t i = 1; i < v.size(); ++i)
        m.push_back(v[i] - v[0]);
    Rational d = determinant(std::move(m));
    if (d < 0)
        d = -d;
    return d / factorial(static_cast<unsigned>(v.size() - 1));
}

inline Rational facet_simplex_measure(const RationalVector& normal, const std::vector<RationalVector>& v)
{
    RationalMatrix m;
    m.push_back(normal);
    for (std::size_t i = 1; i < v.size(); ++i)
        m.push_back(v[i] - v[0]);
    Rational d = determinant(std::move(m));
    if (d < 0)
        d = -d;
    return d / (squared_norm(normal) * factorial(static_cast<unsigned>(v.size() - 1)));
}

} // namespace detail

class LatticePolytope {
public:
    /// Convex hull of the given points. Non-extreme and repeated points are
    /// allowed and dropped.
    static LatticePolytope from_vertices(std::vector<RationalVector> points)
    {
        if (points.empty())
            throw DegenerateHull("no points");
        const std::size_t n = points.front().size();
        if (n == 0)
            throw DegenerateHull("zero-dimensional ambient space");
        for (const auto& p : points)
            if (p.size() != n)
                throw DegenerateHull("points of mixed dimension");
        std::sort(points.begin(), points.end());
        points.erase(std::unique(points.begin(), points.end()), points.end());
        if (points.size() < n + 1 || affine_dimension(points) != static_cast<int>(n))
            throw DegenerateHull("convex hull is not full-dimensional");

        LatticePolytope P;
        P.dim_ = n;

        std::map<RationalVector, Rational> found; // normal -> offset
        detail::for_each_combination(points.size(), n, [&](const std::vector<std::size_t>& s) {
            RationalMatrix rows;
            for (std::size_t i = 1; i < s.size(); ++i)
                rows.push_back(points[s[i]] - points[s[0]]);
            if (rank(rows) != n - 1)
                return;
            auto ker = nullspace(std::move(rows), n);
            RationalVector u = primitive(ker.front());
            Rational b = dot(u, points[s[0]]);
            bool below = false, above = false;
            for (const auto& p : points) {
                Rational t = dot(u, p);
                if (t < b)
                    below = true;
                else if (t > b)
                    above = true;
            }
            if (below && above)
                return;
            if (above) {
                for (auto& x : u)
                    x = -x;
                b = -b;
            }
            found.emplace(std::move(u), std::move(b));
        });

        // Keep only hyperplanes that touch the hull in an (n-1)-dimensional set.
        std::vector<Halfspace> hs;
        for (auto& [u, b] : found) {
            std::vector<RationalVector> on;
            for (const auto& p : points)
                if (dot(u, p) == b)
                    on.push_back(p);
            if (affine_dimension(on) == static_cast<int>(n) - 1)
                hs.push_back({u, b});
        }

        for (const auto& p : points) {
            RationalMatrix normals;
            for (const auto& h : hs)
                if (dot(h.normal, p) == h.offset)
                    normals.push_back(h.normal);
            if (rank(std::move(normals)) == n)
                P.vertices_.push_back(p);
        }

        for (auto& h : hs) {
            Facet f;
            f.normal = std::move(h.normal);
            f.offset = std::move(h.offset);
            for (std::size_t i = 0; i < P.vertices_.size(); ++i)
                if (dot(f.normal, P.vertices_[i]) == f.offset)
                    f.vertices.push_back(i);
            P.facets_.push_back(std::move(f));
        }

        P.build_cones();
        P.build_triangulations();
        return P;
    }

    /// Intersection of halfspaces; nullopt when empty or lower-dimensional.
    static std::optional<LatticePolytope> from_halfspaces(std::size_t dim, const std::vector<Halfspace>& input)
    {
        std::vector<Halfspace> hs;
        for (const auto& h : input) {
            bool zero = std::all_of(h.normal.begin(), h.normal.end(), [](const Rational& x) { return x == 0; });
            if (zero) {
                if (h.offset < 0)
                    return std::nullopt;
                continue;
            }
            hs.push_back(h);
        }
        std::vector<RationalVector> pts;
        detail::for_each_combination(hs.size(), dim, [&](const std::vector<std::size_t>& s) {
            RationalMatrix a;
            RationalVector b;
            for (auto i : s) {
                a.push_back(hs[i].normal);
                b.push_back(hs[i].offset);
            }
            auto x = solve(std::move(a), std::move(b));
            if (!x)
                return;
            for (const auto& h : hs)
                if (dot(h.normal, *x) > h.offset)
                    return;
            pts.push_back(std::move(*x));
        });
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        if (pts.size() < dim + 1 || affine_dimension(pts) != static_cast<int>(dim))
            return std::nullopt;
        return from_vertices(std::move(pts));
    }

    std::size_t dimension() const { return dim_; }
    const std::vector<RationalVector>& vertices() const { return vertices_; }
    const std::vector<Facet>& facets() const { return facets_; }
    const std::vector<VertexCone>& vertex_cones() const { return cones_; }
    const std::vector<Simplex>& simplices() const { return simplices_; }
    const Rational& volume() const { return volume_; }

    Rational boundary_measure() const
    {
        Rational s = 0;
        for (const auto& f : facets_)
            s += f.measure;
        return s;
    }

    bool is_simple() const
    {
        return std::all_of(cones_.begin(), cones_.end(), [](const VertexCone& c) { return c.simple; });
    }

    bool contains(const RationalVector& p) const
    {
        return std::all_of(facets_.begin(), facets_.end(), [&](const Facet& f) { return dot(f.normal, p) <= f.offset; });
    }

    std::vector<Halfspace> halfspaces() const
    {
        std::vector<Halfspace> hs;
        hs.reserve(facets_.size());
        for (const auto& f : facets_)
            hs.push_back({f.normal, f.offset});
        return hs;
    }

    /// Index of the facet lying on {<μ,normal> = offset}, if any.
    std::optional<std::size_t> find_facet(const RationalVector& normal, const Rational& offset) const
    {
        for (std::size_t i = 0; i < facets_.size(); ++i)
            if (facets_[i].normal == normal && facets_[i].offset == offset)
                return i;
        return std::nullopt;
    }

private:
    void build_cones()
    {
        cones_.resize(vertices_.size());
        for (std::size_t f = 0; f < facets_.size(); ++f)
            for (auto v : facets_[f].vertices)
                cones_[v].facets.push_back(f);
        for (auto& c : cones_) {
            if (c.facets.size() != dim_)
                continue;
            c.simple = true;
            for (std::size_t i = 0; i < dim_; ++i) {
                RationalMatrix rows;
                for (std::size_t k = 0; k < dim_; ++k)
                    if (k != i)
                        rows.push_back(facets_[c.facets[k]].normal);
                auto ker = nullspace(std::move(rows), dim_);
                RationalVector g = primitive(ker.front());
                if (dot(facets_[c.facets[i]].normal, g) > 0)
                    for (auto& x : g)
                        x = -x;
                c.generators.push_back(std::move(g));
            }
            Rational det = determinant(c.generators);
            if (det < 0)
                det = -det;
            c.index = numerator(det);
        }
    }

    // Pulling triangulation of a face given by its vertex indices.
    void triangulate_face(const std::vector<std::size_t>& face, int face_dim, std::vector<std::vector<std::size_t>>& out) const
    {
        if (face_dim == 0) {
            out.push_back({face.front()});
            return;
        }
        const std::size_t apex = face.front();
        std::set<std::vector<std::size_t>> subfaces;
        for (const auto& f : facets_) {
            std::vector<std::size_t> s;
            std::set_intersection(face.begin(), face.end(), f.vertices.begin(), f.vertices.end(), std::back_inserter(s));
            if (s.empty() || std::find(s.begin(), s.end(), apex) != s.end())
                continue;
            std::vector<RationalVector> pts;
            for (auto i : s)
                pts.push_back(vertices_[i]);
            if (affine_dimension(pts) == face_dim - 1)
                subfaces.insert(std::move(s));
        }
        for (const auto& s : subfaces) {
            std::vector<std::vector<std::size_t>> sub;
            triangulate_face(s, face_dim - 1, sub);
            for (auto& simplex : sub) {
                simplex.push_back(apex);
                out.push_back(std::move(simplex));
            }
        }
    }

    void build_triangulations()
    {
        std::vector<std::size_t> all(vertices_.size());
        for (std::size_t i = 0; i < all.size(); ++i)
            all[i] = i;
        std::vector<std::vector<std::size_t>> idx;
        triangulate_face(all, static_cast<int>(dim_), idx);
        volume_ = 0;
        for (const auto& s : idx) {
            Simplex simplex;
            for (auto i : s)
                simplex.vertices.push_back(vertices_[i]);
            simplex.measure = detail::simplex_volume(simplex.vertices);
            volume_ += simplex.measure;
            simplices_.push_back(std::move(simplex));
        }
        for (auto& f : facets_) {
            std::vector<std::vector<std::size_t>> fidx;
            triangulate_face(f.vertices, static_cast<int>(dim_) - 1, fidx);
            f.measure = 0;
            for (const auto& s : fidx) {
                Simplex simplex;
                for (auto i : s)
                    simplex.vertices.push_back(vertices_[i]);
                simplex.measure = detail::facet_simplex_measure(f.normal, simplex.vertices);
                f.measure += simplex.measure;
                f.simplices.push_back(std::move(simplex));
            }
        }
    }

    std::size_t dim_ = 0;
    std::vector<RationalVector> vertices_;
    std::vector<Facet> facets_;
    std::vector<VertexCone> cones_;
    std::vector<Simplex> simplices_;
    Rational volume_ = 0;
};

inline LatticePolytope build_polytope(std::vector<RationalVector> vertices)
{
    return LatticePolytope::from_vertices(std::move(vertices));
}

inline Rational volume(const LatticePolytope& P) { return P.volume(); }

inline Rational facet_measure(const LatticePolytope& P, std::size_t facet) { return P.facets().at(facet).measure; }

inline std::optional<LatticePolytope> clip(const LatticePolytope& P, const Halfspace& h)
{
    auto hs = P.halfspaces();
    hs.push_back(h);
    return LatticePolytope::from_halfspaces(P.dimension(), hs);
}

inline const std::vector<Simplex>& triangulate(const LatticePolytope& P) { return P.simplices(); }

} // namespace toric
