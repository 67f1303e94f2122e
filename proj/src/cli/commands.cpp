#include "gregory/cli.hpp"

#include "gregory/errors.hpp"
#include "gregory/exact_core.hpp"
#include "gregory/quadrature.hpp"
#include "gregory/reference.hpp"
#include "gregory/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace gregory::cli {

namespace {

using properties::CmReport;
using properties::Violation;

std::string shortest(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

bool within(double value, double expected, double rel, double abs_floor) {
    return std::fabs(value - expected) <= std::max(rel * std::fabs(expected), abs_floor);
}

// ---------------------------------------------------------------------------
// compute

struct ComputedColumns {
    std::optional<exact::GregoryTable> series;
    std::optional<exact::GregoryTable> explicit_formula;
    std::vector<std::optional<quadrature::QuadratureResult>> integral;
};

ComputedColumns compute_columns(const ComputeArgs& args) {
    const auto n_max = static_cast<std::size_t>(args.n_max);
    const bool all = args.method == "all";
    ComputedColumns cols;
    // The recurrence also backs n = 0, 1 for the other methods.
    cols.series = exact::bernoulli2_series(n_max);
    if (all || args.method == "explicit") cols.explicit_formula = exact::bernoulli2_explicit_table(n_max);
    if (all || args.method == "integral") {
        cols.integral.resize(n_max + 1);
        const auto count = static_cast<long>(n_max);
        // Independent n; the nested node sums run serially inside.
#pragma omp parallel for schedule(dynamic)
        for (long n = 1; n <= count; ++n) {
            cols.integral[static_cast<std::size_t>(n)] = quadrature::b_integral(static_cast<int>(n), args.tol);
        }
    }
    return cols;
}

OutputRecord exact_record(long n, const BigRational& value, std::string method) {
    return {n, value.to_string(), value.to_double(), std::move(method), std::nullopt, std::nullopt};
}

OutputRecord integral_record(long n, const quadrature::QuadratureResult& r) {
    return {n, std::nullopt, r.value, "integral", r.abs_error_estimate, r.converged};
}

std::vector<OutputRecord> make_records(const ComputeArgs& args, const ComputedColumns& cols) {
    std::vector<OutputRecord> records;
    for (long n = 0; n <= args.n_max; ++n) {
        const auto idx = static_cast<std::size_t>(n);
        const bool needs_fallback = (args.method == "explicit" && n < 2) || (args.method == "integral" && n < 1);
        if (args.method == "series" || args.method == "all" || needs_fallback) {
            records.push_back(exact_record(n, (*cols.series)[idx], "series"));
        }
        if ((args.method == "explicit" || args.method == "all") && n >= 2) {
            records.push_back(exact_record(n, (*cols.explicit_formula)[idx], "explicit"));
        }
        if ((args.method == "integral" || args.method == "all") && n >= 1) {
            records.push_back(integral_record(n, *cols.integral[idx]));
        }
    }
    return records;
}

void write_csv(const std::vector<OutputRecord>& records, std::ostream& out) {
    out << "n,exact,numeric,method,error_estimate\n";
    for (const auto& r : records) {
        out << r.n << ',' << r.exact.value_or("") << ',' << (r.numeric ? shortest(*r.numeric) : "") << ','
            << r.method << ',' << (r.error_estimate ? shortest(*r.error_estimate) : "") << '\n';
    }
}

void write_json(const std::vector<OutputRecord>& records, std::ostream& out) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records) {
        nlohmann::json j;
        j["n"] = r.n;
        j["exact"] = r.exact ? nlohmann::json(*r.exact) : nlohmann::json(nullptr);
        j["numeric"] = r.numeric ? nlohmann::json(*r.numeric) : nlohmann::json(nullptr);
        j["method"] = r.method;
        j["error_estimate"] = r.error_estimate ? nlohmann::json(*r.error_estimate) : nlohmann::json(nullptr);
        if (r.converged) j["converged"] = *r.converged;
        arr.push_back(std::move(j));
    }
    out << arr.dump(2) << '\n';
}

void write_table(const std::vector<OutputRecord>& records, std::ostream& out) {
    out << std::left << std::setw(4) << "n" << "  " << std::setw(28) << "exact" << "  " << std::setw(24) << "numeric"
        << "  " << std::setw(9) << "method" << "  error_estimate\n";
    for (const auto& r : records) {
        out << std::left << std::setw(4) << r.n << "  " << std::setw(28) << r.exact.value_or("") << "  "
            << std::setw(24) << (r.numeric ? shortest(*r.numeric) : "") << "  " << std::setw(9) << r.method << "  "
            << (r.error_estimate ? shortest(*r.error_estimate) : "") << '\n';
    }
}

// Largest |method - series| over all n where both exist.
double max_deviation(const ComputeArgs& args, const ComputedColumns& cols) {
    double worst = 0.0;
    for (long n = 0; n <= args.n_max; ++n) {
        const auto idx = static_cast<std::size_t>(n);
        const BigRational& exact_value = (*cols.series)[idx];
        if (cols.explicit_formula) {
            worst = std::max(worst, std::fabs(((*cols.explicit_formula)[idx] - exact_value).to_double()));
        }
        if (idx < cols.integral.size() && cols.integral[idx]) {
            worst = std::max(worst, std::fabs(cols.integral[idx]->value - exact_value.to_double()));
        }
    }
    return worst;
}

void write_side_by_side(const ComputeArgs& args, const ComputedColumns& cols, std::ostream& out) {
    out << std::left << std::setw(4) << "n" << "  " << std::setw(28) << "series" << "  " << std::setw(28)
        << "explicit" << "  " << std::setw(24) << "integral" << "  error_estimate\n";
    for (long n = 0; n <= args.n_max; ++n) {
        const auto idx = static_cast<std::size_t>(n);
        const std::string ex = n >= 2 ? (*cols.explicit_formula)[idx].to_string() : "n/a";
        std::string in = "n/a";
        std::string err = "n/a";
        if (cols.integral[idx]) {
            in = shortest(cols.integral[idx]->value);
            err = shortest(cols.integral[idx]->abs_error_estimate);
            if (!cols.integral[idx]->converged) err += " (not converged)";
        }
        out << std::left << std::setw(4) << n << "  " << std::setw(28) << (*cols.series)[idx].to_string() << "  "
            << std::setw(28) << ex << "  " << std::setw(24) << in << "  " << err << '\n';
    }
}

// ---------------------------------------------------------------------------
// verify

CmReport numeric_failure(std::string suite, long n_horizon, long k_horizon, long k, long n, double value) {
    std::ostringstream os;
    os.precision(17);
    os << value;
    return {std::move(suite), false, n_horizon, k_horizon, Violation{k, n, os.str()}};
}

// Hankel golden value, exact sweep, and the numeric h_n(x) spot check. The
// golden 3x3 determinant is 407/86400 (the corner entry is 4! b_5 = 9/20).
CmReport hankel_suite(long n_max, double tol) {
    const auto table = exact::bernoulli2_series(static_cast<std::size_t>(n_max));
    const unsigned max_entry = std::min<unsigned>(5, static_cast<unsigned>((n_max - 1) / 2));
    const properties::IndexTuple golden{0, 1, 2};
    const BigRational expected(407, 86400);
    for (auto variant : {properties::HankelVariant::Plain, properties::HankelVariant::Signed}) {
        const BigRational det = properties::hankel_determinant(table, golden, variant);
        if (det != expected) {
            return {"hankel", false, 3, 2, Violation{3, variant == properties::HankelVariant::Plain ? 0 : 1,
                                                     det.to_string()}};
        }
    }
    CmReport sweep = properties::hankel_sweep(table, 4, max_entry);
    if (!sweep.passed) return sweep;
    CmReport spot = properties::check_h_determinants({1, 2, 3}, {0.5, 1.0}, 2, 3, tol, 1e-9);
    if (!spot.passed) return spot;
    return sweep;
}

CmReport integrals_suite(long n_max, double tol) {
    const long top = std::min<long>(n_max, 20);
    const auto table = exact::bernoulli2_series(static_cast<std::size_t>(std::max<long>(top + 1, 12)));
    const std::string name = "integrals";
    for (long n = 1; n <= top; ++n) {
        const double exact_value = table[static_cast<std::size_t>(n)].to_double();
        const auto r = quadrature::b_integral(static_cast<int>(n), tol);
        if (!within(r.value, exact_value, 1e-10, 1e-14)) return numeric_failure(name, top, 6, 1, n, r.value);
        const auto mu = quadrature::moment_integral(static_cast<int>(n - 1), tol);
        if (!within(mu.value, std::fabs(exact_value), 1e-10, 1e-14)) return numeric_failure(name, top, 6, 5, n, mu.value);
    }
    const double xs[] = {0.1, 0.5, 1.0, 2.0, 10.0, 100.0};
    for (std::size_t i = 0; i < std::size(xs); ++i) {
        const auto s = quadrature::stieltjes_recip_log(xs[i], tol);
        if (std::fabs(s.value - reference::recip_log(xs[i])) > 1e-8) return numeric_failure(name, top, 6, 2, static_cast<long>(i), s.value);
        const auto g = quadrature::genfun_integral(xs[i], tol);
        if (std::fabs(g.value - reference::genfun(xs[i])) > 1e-8) return numeric_failure(name, top, 6, 3, static_cast<long>(i), g.value);
    }
    for (long k = 1; k <= std::min<long>(12, std::max<long>(n_max, 1)); ++k) {
        const double expected = std::tgamma(static_cast<double>(k) + 1.0) * table[static_cast<std::size_t>(k)].to_double();
        const auto d = quadrature::genfun_derivative_integral(0.0, static_cast<int>(k), tol * std::fabs(expected));
        if (!within(d.value, expected, 1e-9, 0.0)) return numeric_failure(name, top, 6, 4, k, d.value);
    }
    const double bx[] = {0.5, 1.0, std::exp(2.0) - 1.0};
    for (std::size_t i = 0; i < std::size(bx); ++i) {
        const auto b = quadrature::bernstein_identity(bx[i], tol);
        if (std::fabs(b.value - reference::genfun(bx[i])) > 1e-10) return numeric_failure(name, top, 6, 6, static_cast<long>(i), b.value);
    }
    return {name, true, top, 6, std::nullopt};
}

CmReport bernstein_suite(double tol) {
    auto f = [tol](double x) { return quadrature::genfun_integral(x, tol).value; };
    auto fp = [tol](double x) { return quadrature::genfun_derivative_integral(x, 1, tol).value; };
    properties::GridOptions opts;
    opts.max_order = 6;
    opts.slack = 1e-6;
    return properties::check_bernstein(f, fp, {0.25, 1.0, 4.0}, opts, "bernstein");
}

CmReport degree_suite() {
    const std::vector<double> grid = {0.5, 1.0, 2.0, 5.0, 10.0};
    properties::GridOptions opts;  // K = 8, per-point h, slack 1e-12
    const std::string name = "degree";

    auto gen = [](double x) { return reference::genfun(x); };
    const auto gen_bracket = properties::estimate_cm_degree(gen, {-1.0, -0.5, 0.0}, grid, opts);
    if (!gen_bracket.largest_passing || *gen_bracket.largest_passing < -1.0) {
        return numeric_failure(name, 5, 8, 1, 0, gen_bracket.largest_passing.value_or(NAN));
    }

    auto inv = [](double x) { return std::log1p(x) / x; };
    const auto inv_bracket = properties::estimate_cm_degree(inv, {0.0, 0.5, 1.0}, grid, opts);
    const bool in_unit = inv_bracket.largest_passing && *inv_bracket.largest_passing >= 0.0 &&
                         *inv_bracket.largest_passing < 1.0 && inv_bracket.first_failing &&
                         *inv_bracket.first_failing <= 1.0;
    if (!in_unit) return numeric_failure(name, 5, 8, 2, 0, inv_bracket.largest_passing.value_or(NAN));

    auto q = [](double u) { return -std::expm1(-u) / u; };
    properties::GridOptions q_opts;
    q_opts.step = 0.1;
    CmReport q_report = properties::cm_grid_test(q, {0.1, 1.0, 5.0}, q_opts, name);
    if (!q_report.passed) return q_report;
    return {name, true, static_cast<long>(grid.size()), 8, std::nullopt};
}

// ---------------------------------------------------------------------------
// eval

void print_eval(std::ostream& out, const std::string& function, double x, std::optional<int> k,
                const quadrature::QuadratureResult& r, double reference_value) {
    out << "function: " << function << '\n' << "x: " << shortest(x) << '\n';
    if (k) out << "k: " << *k << '\n';
    out << "value: " << shortest(r.value) << '\n'
        << "abs_error: " << shortest(r.abs_error_estimate) << '\n'
        << "n_evals: " << r.n_evals << '\n'
        << "converged: " << (r.converged ? "true" : "false") << '\n'
        << "reference: " << shortest(reference_value) << '\n'
        << "deviation: " << shortest(std::fabs(r.value - reference_value)) << '\n';
}

}  // namespace

int cmd_compute(const ComputeArgs& args, std::ostream& out, std::ostream& err) {
    static const std::vector<std::string> methods = {"series", "explicit", "integral", "all"};
    static const std::vector<std::string> formats = {"csv", "json", "table"};
    if (args.n_max < 0 || std::find(methods.begin(), methods.end(), args.method) == methods.end() ||
        std::find(formats.begin(), formats.end(), args.format) == formats.end() || !(args.tol > 0.0)) {
        err << "compute: invalid arguments\n";
        return kUsage;
    }
    const ComputedColumns cols = compute_columns(args);
    const auto records = make_records(args, cols);

    if (args.format == "csv") {
        write_csv(records, out);
    } else if (args.format == "json") {
        write_json(records, out);
    } else if (args.method == "all") {
        write_side_by_side(args, cols, out);
    } else {
        write_table(records, out);
    }
    if (args.method == "all") {
        std::ostream& footer = args.format == "table" ? out : err;
        footer << "max cross-method deviation: " << shortest(max_deviation(args, cols)) << '\n';
    }

    const bool all_converged = std::all_of(cols.integral.begin(), cols.integral.end(),
                                           [](const auto& r) { return !r || r->converged; });
    if (!all_converged) {
        err << "compute: some integrals did not converge to tol " << shortest(args.tol) << '\n';
        return kFailure;
    }
    return kSuccess;
}

std::vector<Suite> make_suites(const VerifyArgs& args) {
    static const std::vector<std::string> names = {"cm-sequence",   "minimality", "hankel", "majorization",
                                                   "log-convexity", "integrals",  "bernstein", "degree"};
    if (args.suite != "all" && std::find(names.begin(), names.end(), args.suite) == names.end()) {
        throw UsageError("unknown suite '" + args.suite + "'");
    }
    if (!(args.tol > 0.0)) throw UsageError("tol must be > 0");
    const long n = args.n_max;
    auto need = [&](const std::string& suite, long minimum) {
        if (n < minimum) {
            throw UsageError("suite '" + suite + "' needs --n-max >= " + std::to_string(minimum));
        }
    };
    auto wanted = [&](const std::string& name) { return args.suite == "all" || args.suite == name; };
    const double tol = args.tol;

    std::vector<Suite> suites;
    if (wanted("cm-sequence")) {
        need("cm-sequence", 2);
        suites.push_back({"cm-sequence", [n] {
                              const auto table = exact::bernoulli2_series(static_cast<std::size_t>(n));
                              return properties::check_cm_sequence(properties::moment_sequence(table));
                          }});
    }
    if (wanted("minimality")) {
        need("minimality", 2);
        suites.push_back({"minimality",
                          [n] {
                              const auto table = exact::bernoulli2_series(static_cast<std::size_t>(n));
                              return properties::check_minimality_perturbation(properties::moment_sequence(table),
                                                                               BigRational(1, 10));
                          },
                          true});
    }
    if (wanted("hankel")) {
        need("hankel", 5);
        suites.push_back({"hankel", [n, tol] { return hankel_suite(n, tol); }});
    }
    if (wanted("majorization")) {
        need("majorization", 2);
        suites.push_back({"majorization", [n] {
                              const auto table = exact::bernoulli2_series(static_cast<std::size_t>(n));
                              return properties::majorization_sweep(table, 3,
                                                                    std::min<unsigned>(6, static_cast<unsigned>(n - 1)));
                          }});
    }
    if (wanted("log-convexity")) {
        need("log-convexity", 3);
        suites.push_back({"log-convexity", [n] {
                              return properties::check_log_convexity(exact::bernoulli2_series(static_cast<std::size_t>(n)));
                          }});
    }
    if (wanted("integrals")) {
        need("integrals", 1);
        suites.push_back({"integrals", [n, tol] { return integrals_suite(n, tol); }});
    }
    if (wanted("bernstein")) suites.push_back({"bernstein", [tol] { return bernstein_suite(tol); }});
    if (wanted("degree")) suites.push_back({"degree", [] { return degree_suite(); }});
    return suites;
}

int run_suites(const std::vector<Suite>& suites, std::ostream& out) {
    bool failed = false;
    for (const auto& suite : suites) {
        const CmReport report = suite.run();
        nlohmann::json j = to_json(report);
        std::string status = report.passed ? "passed" : (suite.inconclusive_allowed ? "inconclusive" : "failed");
        j["status"] = status;
        out << j.dump() << '\n';
        failed = failed || status == "failed";
    }
    return failed ? kFailure : kSuccess;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
    std::vector<Suite> suites;
    try {
        suites = make_suites(args);
    } catch (const UsageError& e) {
        err << "verify: " << e.what() << '\n';
        return kUsage;
    }
    return run_suites(suites, out);
}

int cmd_eval(const EvalArgs& args, std::ostream& out, std::ostream& err) {
    try {
        if (!(args.tol > 0.0)) throw DomainError("tol must be > 0");
        if (args.function == "genfun") {
            print_eval(out, args.function, args.x, std::nullopt, quadrature::genfun_integral(args.x, args.tol),
                       reference::genfun(args.x));
        } else if (args.function == "recip-log") {
            print_eval(out, args.function, args.x, std::nullopt, quadrature::stieltjes_recip_log(args.x, args.tol),
                       reference::recip_log(args.x));
        } else if (args.function == "derivative") {
            const auto r = quadrature::genfun_derivative_integral(args.x, args.k, args.tol);
            print_eval(out, args.function, args.x, args.k, r, reference::genfun_derivative(args.x, args.k));
        } else if (args.function == "bernstein-identity") {
            print_eval(out, args.function, args.x, std::nullopt, quadrature::bernstein_identity(args.x, args.tol),
                       reference::genfun(args.x));
        } else {
            err << "eval: unknown function '" << args.function << "'\n";
            return kUsage;
        }
    } catch (const DomainError& e) {
        err << "eval: " << e.what() << '\n';
        return kUsage;
    }
    return kSuccess;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Gregory coefficients (Bernoulli numbers of the second kind): exact tables, integral "
                 "representations and property checks",
                 "gregory"};
    app.require_subcommand(1);

    ComputeArgs compute;
    auto* c = app.add_subcommand("compute", "Tabulate b_0 .. b_N");
    c->add_option("--n-max", compute.n_max, "Largest index")->check(CLI::NonNegativeNumber);
    c->add_option("--method", compute.method, "series | explicit | integral | all")
        ->check(CLI::IsMember({"series", "explicit", "integral", "all"}));
    c->add_option("--tol", compute.tol, "Absolute quadrature tolerance")->check(CLI::PositiveNumber);
    c->add_option("--format", compute.format, "csv | json | table")->check(CLI::IsMember({"csv", "json", "table"}));

    VerifyArgs verify;
    auto* v = app.add_subcommand("verify", "Run property suites");
    v->add_option("--suite", verify.suite,
                  "cm-sequence | minimality | hankel | majorization | log-convexity | integrals | bernstein | degree | all")
        ->check(CLI::IsMember({"cm-sequence", "minimality", "hankel", "majorization", "log-convexity", "integrals",
                               "bernstein", "degree", "all"}));
    v->add_option("--n-max", verify.n_max, "Horizon")->check(CLI::NonNegativeNumber);
    v->add_option("--tol", verify.tol, "Absolute quadrature tolerance")->check(CLI::PositiveNumber);

    EvalArgs eval;
    auto* e = app.add_subcommand("eval", "Evaluate one integral representation");
    e->add_option("--function", eval.function, "genfun | recip-log | derivative | bernstein-identity")
        ->required()
        ->check(CLI::IsMember({"genfun", "recip-log", "derivative", "bernstein-identity"}));
    e->add_option("--x", eval.x, "Argument")->required();
    e->add_option("--k", eval.k, "Derivative order");
    e->add_option("--tol", eval.tol, "Absolute quadrature tolerance")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& ex) {
        err << ex.what() << "\n\n" << app.help();
        return kUsage;
    }

    if (c->parsed()) return cmd_compute(compute, out, err);
    if (v->parsed()) return cmd_verify(verify, out, err);
    return cmd_eval(eval, out, err);
}

}  // namespace gregory::cli
