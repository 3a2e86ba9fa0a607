// toric: command-line front end for the toric entropy library.
//
// Exit codes: 0 success, 2 bad input, 3 numerical validation failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "toric/io.hpp"
#include "toric/toric.hpp"

using namespace toric;
using nlohmann::json;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CheckFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double x) { return fmt::format("{:.17g}", x); }

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        out.push_back(item);
    return out;
}

std::vector<double> parse_grid(const std::string& spec)
{
    auto parts = split(spec, ':');
    if (parts.size() != 3)
        throw InputError("grid must look like start:stop:count, got '" + spec + "'");
    const double a = to_double(parse_rational(parts[0]));
    const double b = to_double(parse_rational(parts[1]));
    const long n = std::stol(parts[2]);
    if (n < 1)
        throw InputError("grid count must be >= 1");
    std::vector<double> g;
    for (long i = 0; i < n; ++i)
        g.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    return g;
}

RationalVector parse_vector(const std::string& s)
{
    RationalVector v;
    for (const auto& p : split(s, ','))
        v.push_back(parse_rational(p));
    return v;
}

// square | segment | blowup:δ | donaldson[:n] | path/to/polytope.json
builtin::PolytopePtr load_polytope(const std::string& spec)
{
    if (spec == "square")
        return builtin::unit_square();
    if (spec == "segment")
        return builtin::unit_segment();
    if (spec.rfind("blowup:", 0) == 0)
        return builtin::blowup(parse_rational(spec.substr(7)));
    if (spec == "donaldson")
        return builtin::donaldson(5);
    if (spec.rfind("donaldson:", 0) == 0)
        return builtin::donaldson(static_cast<unsigned>(std::stoul(spec.substr(10))));
    return builtin::share(io::polytope_from_json(io::read_json_file(spec)));
}

// zero | linear:a,b,... | qn:n | qd:d | path/to/q.json
PiecewiseAffineConvex load_q(const std::string& spec, const builtin::PolytopePtr& P)
{
    if (spec.empty() || spec == "zero")
        return constant_pa(P, 0);
    if (spec.rfind("linear:", 0) == 0) {
        auto eta = parse_vector(spec.substr(7));
        if (eta.size() != P->dimension())
            throw InputError("linear q has the wrong dimension");
        return make_pa({AffineForm{eta, 0}}, P);
    }
    if (spec.rfind("qn:", 0) == 0)
        return builtin::square_qn(static_cast<unsigned>(std::stoul(spec.substr(3))), P);
    if (spec.rfind("qd:", 0) == 0)
        return builtin::segment_qd(static_cast<unsigned>(std::stoul(spec.substr(3))), P);
    return io::pa_from_json(io::read_json_file(spec), P);
}

std::vector<double> parse_xi(const std::string& s, std::size_t n)
{
    if (s.empty())
        return std::vector<double>(n, 0.0);
    auto v = to_double(parse_vector(s));
    if (v.size() != n)
        throw InputError("--xi has " + std::to_string(v.size()) + " entries, polytope has dimension " + std::to_string(n));
    return v;
}

Method parse_method(const std::string& s)
{
    if (s == "auto")
        return Method::automatic;
    if (s == "triangulation")
        return Method::triangulation;
    if (s == "localization")
        return Method::localization;
    throw InputError("unknown method '" + s + "'");
}

class Output {
public:
    explicit Output(const std::string& path)
    {
        if (!path.empty()) {
            file_.open(path);
            if (!file_)
                throw InputError("cannot write " + path);
        }
    }
    std::ostream& out() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

void emit_table(std::ostream& os, const std::string& format, const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows, json meta = json::object())
{
    if (format == "json") {
        json j = meta;
        j["columns"] = header;
        j["rows"] = json::array();
        for (const auto& r : rows) {
            json row = json::object();
            for (std::size_t i = 0; i < header.size(); ++i)
                row[header[i]] = std::stod(r[i]);
            j["rows"].push_back(row);
        }
        os << j.dump(2) << "\n";
        return;
    }
    for (auto it = meta.begin(); it != meta.end(); ++it)
        os << "# " << it.key() << " = " << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump()) << "\n";
    for (std::size_t i = 0; i < header.size(); ++i)
        os << (i ? "," : "") << header[i];
    os << "\n";
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i)
            os << (i ? "," : "") << r[i];
        os << "\n";
    }
}

void emit_record(std::ostream& os, const std::string& format, const json& j)
{
    if (format == "json") {
        os << j.dump(2) << "\n";
        return;
    }
    os << "key,value\n";
    for (auto it = j.begin(); it != j.end(); ++it)
        os << it.key() << "," << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump()) << "\n";
}

const std::vector<std::string> entropy_columns{"parameter", "numerator", "denominator", "mu", "sigma", "mu_lambda", "scaled"};

std::vector<std::string> entropy_row(const EntropyRecord& r)
{
    return {num(r.parameter), num(r.numerator), num(r.denominator), num(r.mu), num(r.sigma), num(r.mu_lambda), num(-r.mu / two_pi)};
}

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw CheckFailed(what);
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Curve of μ̌(x<μ,η>); the derivative column is dμ̌/dx = -Fut along <μ,η>.
std::vector<std::vector<std::string>> ray_curve(const builtin::PolytopePtr& P, const RationalVector& eta, const std::vector<double>& xs,
                                                std::vector<double>* scaled = nullptr)
{
    auto dir = make_pa({AffineForm{eta, 0}}, P);
    std::vector<double> zero(P->dimension(), 0.0);
    auto rep = entropy_curve(dir, zero, 0.0, xs);
    RayObjective obj(P, eta, 0.0);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        auto row = entropy_row(rep.records[i]);
        row.push_back(num(obj.derivative(xs[i])));
        rows.push_back(std::move(row));
        if (scaled)
            scaled->push_back(-rep.records[i].mu / two_pi);
    }
    return rows;
}

int reproduce(const std::string& which, const std::string& format, Output& out)
{
    auto cols = entropy_columns;
    cols.push_back("derivative");

    if (which.rfind("blowup-delta:", 0) == 0) {
        const Rational delta = parse_rational(which.substr(13));
        auto P = builtin::blowup(delta);
        const RationalVector eta{1, 1};
        auto rows = ray_curve(P, eta, parse_grid("-5:5:201"));
        auto ray = maximize_along_ray(P, eta, 0.0);
        auto q = make_pa({AffineForm{eta, 0}}, P);
        auto report = cross_validate(q, 0.7);
        json meta{{"case", which},
                  {"minimizer_of_scaled", num(ray.x)},
                  {"scaled_at_minimizer", num(-ray.value / two_pi)},
                  {"scaled_at_zero", num(-mu_star(constant_pa(P, 0)) / two_pi)},
                  {"cross_validation_discrepancy", num(report.max_relative_discrepancy)}};
        if (delta == 1) {
            double worst = 0.0;
            for (double x : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0}) {
                const double in = (std::exp(-2 * x) - 2 + (1 + x) * std::exp(x)) / (x * x);
                const double bd = -(2 * std::exp(-2 * x) - (2 + x) * std::exp(x)) / x;
                for (Method m : {Method::triangulation, Method::localization}) {
                    worst = std::max(worst, rel_err(polytope_exp_integral(q, x, unit_weight(), m).value, in));
                    worst = std::max(worst, rel_err(boundary_exp_integral(q, x, unit_weight(), m).value, bd));
                }
            }
            meta["closed_form_max_relative_error"] = num(worst);
            require(worst <= 1e-9, "blow-up closed forms not reproduced to 1e-9");
        }
        require(std::abs(ray.x) > 0.05, "maximizer of the entropy is at the origin");
        emit_table(out.out(), format, cols, rows, meta);
        return 0;
    }

    if (which == "donaldson") {
        auto P = builtin::donaldson(5);
        const RationalVector eta{1, 0};
        std::vector<double> scaled;
        auto xs = parse_grid("0:5:200");
        auto rows = ray_curve(P, eta, xs, &scaled);
        auto q = make_pa({AffineForm{eta, 0}}, P);
        double worst = 0.0;
        for (double x : {0.5, 1.0, 2.0}) {
            const double in = (-6.0 / 7 * std::exp(x) - 80.0 / 21 * std::exp(0.3 * x) - 1.5 * std::exp(3 * x) + 2.5 * std::exp(3.4 * x) + 11.0 / 3 - 2 * x) / (x * x);
            const double bd = -(12.0 / 7 * std::exp(x) - 8.0 / 21 * std::exp(0.3 * x) - 1.5 * std::exp(3 * x) - 0.5 * std::exp(3.4 * x) + 2.0 / 3 - 2 * x) / x;
            for (Method m : {Method::triangulation, Method::localization}) {
                worst = std::max(worst, rel_err(polytope_exp_integral(q, x, unit_weight(), m).value, in));
                worst = std::max(worst, rel_err(boundary_exp_integral(q, x, unit_weight(), m).value, bd));
            }
        }
        auto q0 = make_pa({AffineForm{RationalVector{-1, 0}, 0}}, P);
        const double fut = futaki(q0, std::vector<double>{0.0, 0.0}, 0.0);
        bool pos = false, neg = false;
        for (std::size_t i = 1; i + 1 < scaled.size(); ++i) {
            const double d2 = scaled[i + 1] - 2 * scaled[i] + scaled[i - 1];
            pos = pos || d2 > 0;
            neg = neg || d2 < 0;
        }
        json meta{{"case", which},
                  {"futaki_at_zero", num(fut)},
                  {"closed_form_max_relative_error", num(worst)},
                  {"second_difference_changes_sign", pos && neg}};
        require(worst <= 1e-9, "Donaldson closed forms not reproduced to 1e-9");
        require(std::abs(fut) <= 1e-8, "Futaki invariant along eta_0 does not vanish");
        require(pos && neg, "no sign change of the second difference");
        emit_table(out.out(), format, cols, rows, meta);
        return 0;
    }

    if (which.rfind("square-qn:", 0) == 0) {
        const unsigned n = static_cast<unsigned>(std::stoul(which.substr(10)));
        auto P = builtin::unit_square();
        auto q = builtin::square_qn(n, P);
        auto zero = constant_pa(P, 0);
        const Rational bq = q_moment(q, 1, true), iq = q_moment(q, 1), iq2 = q_moment(q, 2);
        auto c = calabi(q);
        auto ex = extremal_limit_check(q, 1e-3);
        const double d1 = metric_dp(zero, q, 1), d2 = metric_dp(zero, q, 2);
        json j{{"case", which},
               {"boundary_integral_q", to_string(bq)},
               {"integral_q", to_string(iq)},
               {"integral_q2", to_string(iq2)},
               {"mabuchi", num(c.mabuchi)},
               {"norm_sq", num(c.norm_sq)},
               {"c_na", num(c.c_na)},
               {"c_na_lower_bound", num(-two_pi - 1.0 / 24)},
               {"normalized_df", num(c.normalized_df)},
               {"rho_max", num(c.rho_max)},
               {"d1", num(d1)},
               {"d2", num(d2)},
               {"extremal_lhs_rho_1e-3", num(ex.lhs)},
               {"extremal_gap", num(ex.gap)}};
        const Rational nn(n);
        require(bq == 1 - Rational(2) / (3 * nn), "boundary integral of q_n");
        require(iq == 0, "integral of q_n");
        require(iq2 == Rational(1, 12) - 1 / (36 * nn * nn), "integral of q_n^2");
        require(c.c_na >= -two_pi - 1.0 / 24, "C_NA lower bound");
        require(d1 <= 1.0 / (3 * n) && d2 >= 1.0 / 18, "d_1 / d_2 bounds");
        emit_record(out.out(), format, j);
        return 0;
    }

    if (which == "bj38") {
        auto F = builtin::bj38();
        std::vector<unsigned> ms;
        for (unsigned m = 10; m <= 10000; m *= 2)
            ms.push_back(m);
        auto est = char_mu_estimate(F, ms, Normalization::per_dimension, 1.0);
        const double target = -4 * std::numbers::pi * (std::numbers::e - 1);
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i = 0; i < ms.size(); ++i)
            rows.push_back({std::to_string(ms[i]), num(est.sequence[i]), num(est.extrapolated[i]), num(-4 * std::numbers::pi * est.extrapolated[i])});
        json meta{{"case", which}, {"char_mu", num(est.mu)}, {"expected", num(target)}};
        for (unsigned d : {2u, 5u, 20u}) {
            const double formula = -two_pi * (1 + std::numbers::e) / ((std::numbers::e - 1) / d + (d - 1.0) / d);
            const double toric = mu_star(builtin::segment_qd(d));
            meta["flat_" + std::to_string(d)] = num(toric);
            require(std::abs(toric - formula) <= 1e-10 * std::abs(formula), "F_d entropy formula");
        }
        require(rel_err(est.mu, target) <= 0.01, "char-mu estimate of the bj38 filtration");
        emit_table(out.out(), format, {"m", "m_log_ratio", "extrapolated", "char_mu"}, rows, meta);
        return 0;
    }

    if (which == "cp1") {
        auto P = builtin::unit_segment();
        auto r = maximize_over_vectors(P, 0.0);
        json j{{"case", which}, {"xi", num(r.xi[0])}, {"value", num(r.value)}, {"expected", num(-2 * two_pi)},
               {"gradient_norm", num(r.gradient_norm)}, {"status", to_string(r.status)}};
        require(std::abs(r.value + 2 * two_pi) <= 1e-8, "CP1 maximum value");
        emit_record(out.out(), format, j);
        return 0;
    }
    throw InputError("unknown reproduce case '" + which + "' (blowup-delta:d, donaldson, square-qn:n, bj38, cp1)");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Non-archimedean entropies, Futaki invariants and DH measures of toric polytopes"};
    app.require_subcommand(1);

    std::string polytope = "square", qspec, q2spec, xi, grid = "0:1:11", out_path, format = "csv", method = "auto", pspec = "1";
    std::string filtration = "bj38", norm = "per-dimension", levels = "10:5120:10";
    double lambda = 0.0, rho = 1.0;
    std::string reproduce_case;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--polytope", polytope, "square, segment, blowup:d, donaldson[:n], or a JSON file");
        c->add_option("--out", out_path, "output file (default stdout)");
        c->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    };

    auto* integrate_cmd = app.add_subcommand("integrate", "exponential integrals by both methods");
    add_common(integrate_cmd);
    integrate_cmd->add_option("--q", qspec, "q: zero, linear:a,b, qn:n, qd:d, or a JSON file");
    integrate_cmd->add_option("--rho", rho, "exponent scale");
    integrate_cmd->add_option("--method", method, "auto, triangulation or localization");

    auto* entropy_cmd = app.add_subcommand("entropy", "entropy curve along q_xi + rho q0");
    add_common(entropy_cmd);
    entropy_cmd->add_option("--q", qspec, "direction q0");
    entropy_cmd->add_option("--xi", xi, "proper vector a,b,...");
    entropy_cmd->add_option("--lambda", lambda);
    entropy_cmd->add_option("--grid", grid, "start:stop:count");

    auto* futaki_cmd = app.add_subcommand("futaki", "Futaki invariant at xi along q0");
    add_common(futaki_cmd);
    futaki_cmd->add_option("--q", qspec);
    futaki_cmd->add_option("--xi", xi);
    futaki_cmd->add_option("--lambda", lambda);

    auto* optimize_cmd = app.add_subcommand("optimize", "maximize the entropy over proper vectors");
    add_common(optimize_cmd);
    optimize_cmd->add_option("--lambda", lambda);

    auto* calabi_cmd = app.add_subcommand("calabi", "Mabuchi slope, C_NA and normalized DF of q");
    add_common(calabi_cmd);
    calabi_cmd->add_option("--q", qspec);

    auto* dh_cmd = app.add_subcommand("dh", "DH measure: CDF over a tau grid and summary");
    add_common(dh_cmd);
    dh_cmd->add_option("--q", qspec);
    dh_cmd->add_option("--grid", grid);

    auto* metric_cmd = app.add_subcommand("metric", "d_p or d_exp distance between two q");
    add_common(metric_cmd);
    metric_cmd->add_option("--q", qspec);
    metric_cmd->add_option("--q2", q2spec);
    metric_cmd->add_option("--p", pspec, "p >= 1 or exp");

    auto* filtration_cmd = app.add_subcommand("filtration", "spectral measures and the char-mu limit");
    add_common(filtration_cmd);
    filtration_cmd->add_option("--name", filtration, "bj38, bj38-flat:d, trivial, or q:<spec> on --polytope");
    filtration_cmd->add_option("--levels", levels, "first:last:count, geometric");
    filtration_cmd->add_option("--normalization", norm)->check(CLI::IsMember({"per-dimension", "per-volume"}));

    auto* reproduce_cmd = app.add_subcommand("reproduce", "built-in cases with embedded checks");
    reproduce_cmd->add_option("case", reproduce_case, "blowup-delta:d, donaldson, square-qn:n, bj38, cp1")->required();
    reproduce_cmd->add_option("--out", out_path);
    reproduce_cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Output out(out_path);
        if (*reproduce_cmd)
            return reproduce(reproduce_case, format, out);

        auto P = load_polytope(polytope);
        const std::size_t n = P->dimension();

        if (*integrate_cmd) {
            auto q = load_q(qspec, P);
            const Method m = parse_method(method);
            auto tri_in = polytope_exp_integral(q, rho, unit_weight(), Method::triangulation);
            auto tri_bd = boundary_exp_integral(q, rho, unit_weight(), Method::triangulation);
            json j{{"rho", num(rho)}, {"interior", num(tri_in.value)}, {"boundary", num(tri_bd.value)}, {"method", to_string(m)}};
            if (m != Method::triangulation) {
                auto rep = cross_validate(q, rho);
                j["cross_validation_discrepancy"] = num(rep.max_relative_discrepancy);
                j["skipped_cells"] = rep.skipped_cells;
                if (q.is_affine() && P->is_simple()) {
                    j["interior_localized"] = num(polytope_exp_integral(q, rho, unit_weight(), Method::localization).value);
                    j["boundary_localized"] = num(boundary_exp_integral(q, rho, unit_weight(), Method::localization).value);
                }
            }
            emit_record(out.out(), format, j);
        } else if (*entropy_cmd) {
            auto q0 = load_q(qspec, P);
            auto rep = entropy_curve(q0, parse_xi(xi, n), lambda, parse_grid(grid));
            std::vector<std::vector<std::string>> rows;
            for (const auto& r : rep.records)
                rows.push_back(entropy_row(r));
            emit_table(out.out(), format, entropy_columns, rows, json{{"lambda", num(lambda)}});
        } else if (*futaki_cmd) {
            auto q0 = load_q(qspec, P);
            emit_record(out.out(), format, json{{"futaki", num(futaki(q0, parse_xi(xi, n), lambda))}, {"lambda", num(lambda)}});
        } else if (*optimize_cmd) {
            auto r = maximize_over_vectors(P, lambda);
            json j{{"value", num(r.value)}, {"gradient_norm", num(r.gradient_norm)}, {"status", to_string(r.status)},
                   {"iterations", r.trace.size() - 1}, {"lambda_outside_proper_range", r.lambda_outside_proper_range}};
            for (std::size_t i = 0; i < r.xi.size(); ++i)
                j["xi_" + std::to_string(i)] = num(r.xi[i]);
            emit_record(out.out(), format, j);
        } else if (*calabi_cmd) {
            auto c = calabi(load_q(qspec, P));
            emit_record(out.out(), format,
                        json{{"mabuchi", to_string(c.mabuchi_exact)}, {"norm_sq", to_string(c.norm_sq_exact)}, {"c_na", num(c.c_na)},
                             {"rho_max", num(c.rho_max)}, {"normalized_df", num(c.normalized_df)}});
        } else if (*dh_cmd) {
            auto q = load_q(qspec, P);
            auto s = dh_summary(q);
            std::vector<std::vector<std::string>> rows;
            for (double t : parse_grid(grid))
                rows.push_back({num(t), num(s.cdf(t))});
            emit_table(out.out(), format, {"tau", "cdf"}, rows,
                       json{{"volume", to_string(s.volume())}, {"barycenter", to_string(s.barycenter())}, {"variance_norm_sq", to_string(s.variance_norm_sq())}});
        } else if (*metric_cmd) {
            auto q = load_q(qspec, P);
            auto q2 = load_q(q2spec, P);
            json j{{"p", pspec}};
            if (pspec == "exp")
                j["distance"] = num(metric_dexp(q, q2));
            else
                j["distance"] = num(metric_dp(q, q2, to_double(parse_rational(pspec))));
            emit_record(out.out(), format, j);
        } else if (*filtration_cmd) {
            MonomialFiltration F;
            std::optional<double> limit;
            if (filtration == "bj38") {
                F = builtin::bj38();
                limit = 1.0;
            } else if (filtration.rfind("bj38-flat:", 0) == 0) {
                F = builtin::bj38_flat(static_cast<unsigned>(std::stoul(filtration.substr(10))));
            } else if (filtration == "trivial") {
                F = trivial_filtration(P);
            } else if (filtration.rfind("q:", 0) == 0) {
                F = filtration_from_q(load_q(filtration.substr(2), P));
            } else {
                throw InputError("unknown filtration '" + filtration + "'");
            }
            const Normalization nz = norm == "per-volume" ? Normalization::per_volume : Normalization::per_dimension;
            auto lv = split(levels, ':');
            if (lv.size() != 3)
                throw InputError("levels must look like first:last:count");
            std::vector<unsigned> ms;
            const double first = std::stod(lv[0]), last = std::stod(lv[1]);
            const int count = std::stoi(lv[2]);
            for (int i = 0; i < count; ++i) {
                double m = count == 1 ? first : first * std::pow(last / first, static_cast<double>(i) / (count - 1));
                unsigned mi = static_cast<unsigned>(std::llround(m / F.step)) * F.step;
                if (mi == 0)
                    mi = F.step;
                if (ms.empty() || mi > ms.back())
                    ms.push_back(mi);
            }
            auto est = char_mu_estimate(F, ms, nz, limit, 1e-3);
            std::vector<std::vector<std::string>> rows;
            for (std::size_t i = 0; i < ms.size(); ++i)
                rows.push_back({std::to_string(ms[i]), num(est.sequence[i]), num(est.extrapolated[i])});
            emit_table(out.out(), format, {"m", "m_log_ratio", "extrapolated"}, rows,
                       json{{"filtration", F.name}, {"normalization", to_string(nz)}, {"char_mu", num(est.mu)}, {"error_estimate", num(est.error_estimate)}});
        }
        return 0;
    } catch (const CheckFailed& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return 3;
    } catch (const ValidationFailure& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const NonConvergent& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const MaxIterExceeded& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
