// Walk through the main entry points on the blow-up of CP² at two points.

#include <cstdio>
#include <numbers>

#include "toric/toric.hpp"

int main()
{
    using namespace toric;

    auto P = builtin::blowup(1);
    std::printf("volume %s, boundary %s\n", to_string(P->volume()).c_str(), to_string(P->boundary_measure()).c_str());

    const RationalVector eta{1, 1};
    auto q = make_pa({AffineForm{eta, 0}}, P);
    for (double x : {-1.0, 0.5, 2.0}) {
        auto a = polytope_exp_integral(q, x, unit_weight(), Method::triangulation);
        auto b = polytope_exp_integral(q, x, unit_weight(), Method::localization);
        std::printf("x=%5.2f  triangulation %.15g  localization %.15g\n", x, a.value, b.value);
    }

    auto ray = maximize_along_ray(P, eta, 0.0);
    std::printf("entropy is maximal at x=%.10f along (1,1): %.10f (> -4pi = %.10f)\n", ray.x, ray.value, -4 * std::numbers::pi);

    auto best = maximize_over_vectors(P, 0.0);
    std::printf("over all proper vectors: xi=(%.6f, %.6f), %s\n", best.xi[0], best.xi[1], to_string(best.status));

    auto qn = builtin::square_qn(5);
    auto c = calabi(qn);
    std::printf("q_5 on the square: Mabuchi slope %s, C_NA %.12f, normalized DF %.12f\n",
                to_string(c.mabuchi_exact).c_str(), c.c_na, c.normalized_df);
}
