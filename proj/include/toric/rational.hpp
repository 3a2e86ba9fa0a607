#pragma once

// Exact rational scalars and small dense linear algebra over Q.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace toric {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// A point of t* (or t) with exact coordinates.
using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses "p/q", "p" or a plain decimal such as "0.3" (taken exactly, 3/10).
inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    if (s.empty())
        throw ParseError("empty rational");
    try {
        auto dot = s.find('.');
        if (dot != std::string::npos && s.find('/') == std::string::npos) {
            bool neg = s[0] == '-';
            std::string body = (neg || s[0] == '+') ? s.substr(1) : s;
            dot = body.find('.');
            std::string digits = body.substr(0, dot) + body.substr(dot + 1);
            if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
                throw ParseError("bad decimal '" + std::string(text) + "'");
            Integer num(digits);
            Integer den = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(body.size() - dot - 1));
            Rational r(num, den);
            return neg ? Rational(-r) : r;
        }
        if (s.find_first_not_of("+-0123456789/") != std::string::npos)
            throw ParseError("bad rational '" + std::string(text) + "'");
        if (s.back() == '/' || s.front() == '/')
            throw ParseError("bad rational '" + std::string(text) + "'");
        if (auto slash = s.find('/'); slash != std::string::npos && Integer(s.substr(slash + 1)) == 0)
            throw ParseError("zero denominator in '" + std::string(text) + "'");
        Rational r(s);
        return r;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("bad rational '" + std::string(text) + "'");
    }
}

/// "num/den", or "num" when the denominator is one.
inline std::string to_string(const Rational& r)
{
    if (denominator(r) == 1)
        return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Exact conversion; every finite double is a dyadic rational.
inline Rational from_double(double x)
{
    if (!std::isfinite(x))
        throw std::domain_error("from_double: non-finite value");
    return Rational(x);
}

inline std::vector<double> to_double(const RationalVector& v)
{
    std::vector<double> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), [](const Rational& r) { return to_double(r); });
    return out;
}

inline RationalVector from_double(std::span<const double> v)
{
    RationalVector out;
    out.reserve(v.size());
    for (double x : v)
        out.push_back(from_double(x));
    return out;
}

inline Rational dot(const RationalVector& a, const RationalVector& b)
{
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

inline double dot(std::span<const double> a, std::span<const double> b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

inline RationalVector operator-(const RationalVector& a, const RationalVector& b)
{
    RationalVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] - b[i];
    return out;
}

inline RationalVector operator+(const RationalVector& a, const RationalVector& b)
{
    RationalVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] + b[i];
    return out;
}

inline RationalVector operator*(const Rational& s, const RationalVector& a)
{
    RationalVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = s * a[i];
    return out;
}

inline Rational squared_norm(const RationalVector& v) { return dot(v, v); }

inline double norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }

inline Integer floor_int(const Rational& r)
{
    Integer q = numerator(r) / denominator(r); // truncates toward zero
    if (r < 0 && Rational(q) != r)
        q -= 1;
    return q;
}

inline Integer ceil_int(const Rational& r) { return -floor_int(Rational(-r)); }

/// Row echelon form in place; returns the rank.
inline std::size_t row_reduce(RationalMatrix& m, std::vector<std::size_t>* pivots = nullptr)
{
    if (m.empty())
        return 0;
    const std::size_t rows = m.size();
    const std::size_t cols = m.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(m[p], m[r]);
        Rational inv = 1 / m[r][c];
        for (std::size_t k = c; k < cols; ++k)
            m[r][k] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0)
                continue;
            Rational f = m[i][c];
            for (std::size_t k = c; k < cols; ++k)
                m[i][k] -= f * m[r][k];
        }
        if (pivots)
            pivots->push_back(c);
        ++r;
    }
    return r;
}

inline std::size_t rank(RationalMatrix m) { return row_reduce(m); }

inline Rational determinant(RationalMatrix m)
{
    const std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0)
                continue;
            Rational f = m[i][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k)
                m[i][k] -= f * m[c][k];
        }
    }
    return det;
}

/// Basis of {x : m x = 0}; `cols` is needed when m has no rows.
inline RationalMatrix nullspace(RationalMatrix m, std::size_t cols)
{
    std::vector<std::size_t> pivots;
    row_reduce(m, &pivots);
    RationalMatrix basis;
    std::size_t pi = 0;
    for (std::size_t free = 0; free < cols; ++free) {
        if (pi < pivots.size() && pivots[pi] == free) {
            ++pi;
            continue;
        }
        RationalVector v(cols, Rational(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Unique solution of a square system, or nullopt when singular.
inline std::optional<RationalVector> solve(RationalMatrix a, RationalVector b)
{
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i)
        a[i].push_back(b[i]);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0)
            ++p;
        if (p == n)
            return std::nullopt;
        std::swap(a[p], a[c]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0)
                continue;
            Rational f = a[i][c] / a[c][c];
            for (std::size_t k = c; k <= n; ++k)
                a[i][k] -= f * a[c][k];
        }
    }
    RationalVector x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = a[i][n] / a[i][i];
    return x;
}

/// Affine dimension of a point set (-1 for the empty set).
inline int affine_dimension(const std::vector<RationalVector>& pts)
{
    if (pts.empty())
        return -1;
    RationalMatrix diffs;
    for (std::size_t i = 1; i < pts.size(); ++i)
        diffs.push_back(pts[i] - pts[0]);
    return static_cast<int>(rank(std::move(diffs)));
}

/// The primitive integer vector on the ray through v (v != 0).
inline RationalVector primitive(const RationalVector& v)
{
    Integer l = 1;
    for (const auto& x : v)
        l = boost::multiprecision::lcm(l, Integer(denominator(x)));
    std::vector<Integer> ints;
    Integer g = 0;
    for (const auto& x : v) {
        Integer k = numerator(x) * (l / denominator(x));
        g = boost::multiprecision::gcd(g, k);
        ints.push_back(k);
    }
    if (g == 0)
        throw std::invalid_argument("primitive: zero vector");
    if (g < 0)
        g = -g;
    RationalVector out;
    out.reserve(v.size());
    for (const auto& k : ints)
        out.emplace_back(Integer(k / g));
    return out;
}

inline Rational factorial(unsigned k)
{
    Integer f = 1;
    for (unsigned i = 2; i <= k; ++i)
        f *= i;
    return Rational(f);
}

} // namespace toric
