#pragma once

// Divided differences of exp on arbitrary (possibly repeated) real nodes.
//
// exp of the bidiagonal matrix with the nodes on the diagonal and ones above
// it has the divided differences of exp as its entries. We shift the nodes to
// their midpoint, scale them by 2^-s so every node is at most 1/2 in absolute
// value, fill the matrix from the Taylor series, then square s times. Every
// intermediate entry is positive, so nothing cancels, and coincident nodes
// need no special treatment.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace toric {

namespace detail {

constexpr int dd_series_terms = 40;

// T[i][j] = exp[w_i, ..., w_j] for i <= j, for nodes with |w| <= 1/2.
inline std::vector<std::vector<double>> dd_table(std::span<const double> w)
{
    const std::size_t m = w.size();
    std::vector<std::vector<double>> t(m, std::vector<double>(m, 0.0));
    std::vector<double> inv_fact(m + dd_series_terms + 1);
    inv_fact[0] = 1.0;
    for (std::size_t k = 1; k < inv_fact.size(); ++k)
        inv_fact[k] = inv_fact[k - 1] / static_cast<double>(k);

    std::vector<double> h(dd_series_terms);
    for (std::size_t i = 0; i < m; ++i) {
        // complete homogeneous symmetric polynomials of w_i..w_j, grown one node at a time
        h.assign(dd_series_terms, 0.0);
        h[0] = 1.0;
        for (std::size_t j = i; j < m; ++j) {
            if (j > i) {
                for (int k = 1; k < dd_series_terms; ++k)
                    h[k] += w[j] * h[k - 1];
            } else {
                for (int k = 1; k < dd_series_terms; ++k)
                    h[k] = w[j] * h[k - 1];
            }
            const std::size_t p = j - i;
            double s = 0.0;
            for (int k = dd_series_terms - 1; k >= 0; --k)
                s += h[k] * inv_fact[p + k];
            t[i][j] = s;
        }
    }
    return t;
}

} // namespace detail

/// exp[z_0, ..., z_m]; repeated nodes give the confluent (derivative) values.
inline double divided_difference_exp(std::span<const double> z)
{
    const std::size_t m = z.size();
    if (m == 0)
        return 0.0;
    const auto [lo, hi] = std::minmax_element(z.begin(), z.end());
    const double c = 0.5 * (*lo + *hi);
    const double r = 0.5 * (*hi - *lo);

    int s = 0;
    if (r > 0.5)
        s = static_cast<int>(std::ceil(std::log2(r / 0.5)));
    const double scale = std::ldexp(1.0, -s);

    std::vector<double> w(m);
    for (std::size_t i = 0; i < m; ++i)
        w[i] = (z[i] - c) * scale;

    auto t = detail::dd_table(w);
    std::vector<std::vector<double>> u(m, std::vector<double>(m, 0.0));
    for (int step = 0; step < s; ++step) {
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i; j < m; ++j) {
                double acc = 0.0;
                for (std::size_t k = i; k <= j; ++k)
                    acc += t[i][k] * t[k][j];
                u[i][j] = std::ldexp(acc, static_cast<int>(i) - static_cast<int>(j));
            }
        }
        std::swap(t, u);
    }
    return std::exp(c) * t[0][m - 1];
}

inline double divided_difference_exp(std::initializer_list<double> z)
{
    return divided_difference_exp(std::span<const double>(z.begin(), z.size()));
}

} // namespace toric
