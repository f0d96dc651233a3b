// qcalc: batch front end for the symmetric q-calculus library.
//
// Every subcommand prints CSV (default) or a JSON object {params, rows,
// flags} to stdout or --output. Exit codes: 0 success, 1 domain error,
// 2 usage error, 3 divergence or guard error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qcalc/errors.hpp"
#include "qcalc/qcore.hpp"
#include "qcalc/qderiv.hpp"
#include "qcalc/qfock.hpp"
#include "qcalc/qint.hpp"
#include "qcalc/qsolve.hpp"
#include "qcalc/qspecial.hpp"
#include "qcalc/table.hpp"

namespace {

using qcalc::DeformationParameter;
using qcalc::Evaluator;
using qcalc::SummationControl;
using qcalc::table::Table;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OutputConfig {
    std::string format = "csv";
    std::string output_path;
};

struct CommonNumeric {
    double q = 0.0;
    double tol = 1e-12;
    int max_terms = 10000;
    double magnitude_bound = 1e6;
    std::string on_divergence = "error";

    SummationControl ctrl() const {
        SummationControl c;
        c.tol = tol;
        c.max_terms = max_terms;
        c.magnitude_bound = magnitude_bound;
        c.on_divergence = on_divergence == "partial"
                              ? SummationControl::OnDivergence::return_partial
                              : SummationControl::OnDivergence::error;
        return c;
    }
};

void add_common_flags(CLI::App* cmd, CommonNumeric& num, OutputConfig& out,
                      bool q_required = true) {
    auto* qopt = cmd->add_option("--q", num.q, "deformation parameter, in (0,1)");
    if (q_required) qopt->required();
    cmd->add_option("--tol", num.tol, "absolute tail tolerance");
    cmd->add_option("--max-terms", num.max_terms, "series term budget");
    cmd->add_option("--magnitude-bound", num.magnitude_bound, "assumed bound M on |f|");
    cmd->add_option("--on-divergence", num.on_divergence, "error|partial")
        ->check(CLI::IsMember({"error", "partial"}));
    cmd->add_option("--format", out.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output", out.output_path, "write to file instead of stdout");
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError(std::string(what) + ": cannot parse number '" + item + "'");
        }
    }
    if (out.empty()) throw UsageError(std::string(what) + ": empty list");
    return out;
}

// Function grammar:
//   poly:c0,c1,...
//   named:qsin|qcos|qexp|sin|cos|exp|gauss|const:<v>
// gauss = exp(-x^2), the one built-in that decays at infinity; the improper
// and two-sided forms need it.
Evaluator parse_function(const std::string& spec, const DeformationParameter& dp,
                         const SummationControl& ctrl) {
    if (spec.rfind("poly:", 0) == 0) {
        const auto coeffs = parse_double_list(spec.substr(5), "poly");
        return qcalc::Polynomial(coeffs).to_evaluator();
    }
    if (spec.rfind("named:", 0) == 0) {
        const std::string name = spec.substr(6);
        if (name == "qsin") {
            return [dp, ctrl](double x) { return qcalc::q_sin(x, dp, ctrl); };
        }
        if (name == "qcos") {
            return [dp, ctrl](double x) { return qcalc::q_cos(x, dp, ctrl); };
        }
        if (name == "qexp") {
            return [dp, ctrl](double x) { return qcalc::q_exp(x, dp, ctrl); };
        }
        if (name == "sin") return [](double x) { return std::sin(x); };
        if (name == "cos") return [](double x) { return std::cos(x); };
        if (name == "exp") return [](double x) { return std::exp(x); };
        if (name == "gauss") return [](double x) { return std::exp(-x * x); };
        if (name.rfind("const:", 0) == 0) {
            const auto v = parse_double_list(name.substr(6), "const");
            if (v.size() != 1) throw UsageError("const: expects exactly one value");
            return [c = v[0]](double) { return c; };
        }
        throw UsageError("unknown named function '" + name + "'");
    }
    throw UsageError("function spec must start with poly: or named: (got '" + spec + "')");
}

void emit(const Table& t, const nlohmann::json& params, const std::vector<std::string>& flags,
          const OutputConfig& out) {
    std::ostringstream body;
    if (out.format == "json") {
        body << qcalc::table::to_json(t, params, flags).dump(2) << '\n';
    } else {
        qcalc::table::write_csv(body, t);
    }
    if (out.output_path.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream file(out.output_path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open output file " + out.output_path);
        file << body.str();
    }
}

// Scalar results print as a bare number in CSV mode; JSON mode keeps the
// full {params, rows, flags} shape.
void emit_scalar(const char* name, double value, const nlohmann::json& params,
                 const std::vector<std::string>& flags, const OutputConfig& out) {
    if (out.format == "json") {
        Table t;
        t.headers = {name};
        t.push_row(value);
        emit(t, params, flags, out);
        return;
    }
    const std::string line = qcalc::table::format_double(value) + "\n";
    if (out.output_path.empty()) {
        std::cout << line;
    } else {
        std::ofstream file(out.output_path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open output file " + out.output_path);
        file << line;
    }
}

std::vector<std::string> result_flags(const qcalc::IntegralResult& r) {
    std::vector<std::string> flags;
    if (r.partial) flags.push_back("partial");
    if (r.guard_tripped) flags.push_back("guard_tripped");
    return flags;
}

// ---------------------------------------------------------------------------
// subcommand handlers
// ---------------------------------------------------------------------------

struct QnumArgs {
    CommonNumeric num;
    OutputConfig out;
    int n = 0;
    bool full_table = false;
};

int run_qnum(const QnumArgs& a) {
    const DeformationParameter dp(a.num.q);
    const nlohmann::json params{{"q", a.num.q}, {"n", a.n}};
    if (!a.full_table) {
        emit_scalar("q_bracket", qcalc::q_bracket(a.n, dp), params, {}, a.out);
        return 0;
    }
    Table t;
    t.headers = {"n", "q_bracket", "q_factorial", "classical_gap"};
    for (int k = 0; k <= a.n; ++k) {
        const qcalc::QBracketValue row{k, qcalc::q_bracket(k, dp)};
        t.push_row(static_cast<std::int64_t>(row.n), row.value, qcalc::q_factorial(k, dp),
                   qcalc::q_bracket_classical_gap(k, dp));
    }
    emit(t, params, {}, a.out);
    return 0;
}

struct DerivArgs {
    CommonNumeric num;
    OutputConfig out;
    std::string fn;
    std::string at;
};

int run_deriv(const DerivArgs& a) {
    const DeformationParameter dp(a.num.q);
    const SummationControl ctrl = a.num.ctrl();
    const Evaluator f = parse_function(a.fn, dp, ctrl);
    const auto points = parse_double_list(a.at, "--at");
    Table t;
    t.headers = {"x", "derivative"};
    for (double x : points) {
        t.push_row(x, qcalc::jackson_derivative(f, dp, x));
    }
    emit(t, {{"q", a.num.q}, {"fn", a.fn}}, {}, a.out);
    return 0;
}

struct IntegrateArgs {
    CommonNumeric num;
    OutputConfig out;
    std::string fn;
    double a = 0.0;
    double b = 0.0;
    bool has_a = false;
    bool has_b = false;
    bool improper = false;
    bool real_line = false;
};

int run_integrate(const IntegrateArgs& a) {
    const DeformationParameter dp(a.num.q);
    const SummationControl ctrl = a.num.ctrl();
    const Evaluator f = parse_function(a.fn, dp, ctrl);

    qcalc::IntegralResult r;
    std::string mode;
    if (a.improper) {
        r = qcalc::jackson_integral_improper(f, dp, ctrl);
        mode = "improper";
    } else if (a.real_line) {
        r = qcalc::jackson_integral_real_line(f, dp, ctrl);
        mode = "real_line";
    } else if (a.has_a && a.has_b) {
        r = qcalc::jackson_integral_interval(f, dp, a.a, a.b, ctrl);
        mode = "interval";
    } else if (a.has_b) {
        r = qcalc::jackson_integral(f, dp, a.b, ctrl);
        mode = "finite";
    } else {
        throw UsageError("integrate: need --b, --a/--b, --improper, or --real-line");
    }

    nlohmann::json params{{"q", a.num.q}, {"fn", a.fn}, {"mode", mode}};
    if (a.has_a) params["a"] = a.a;
    if (a.has_b) params["b"] = a.b;
    if (a.out.format == "json") {
        Table t;
        t.headers = {"value", "terms_used", "tail_estimate", "converged"};
        t.push_row(r.value, static_cast<std::int64_t>(r.terms_used), r.tail_estimate,
                   r.converged);
        emit(t, params, result_flags(r), a.out);
    } else {
        emit_scalar("value", r.value, params, result_flags(r), a.out);
    }
    return 0;
}

struct LatticeArgs {
    CommonNumeric num;
    OutputConfig out;
    double scale = 1.0;
    int n_lo = 0;
    int n_hi = 0;
    std::string sign = "pos";
    std::string fn = "named:const:1";
};

int run_lattice(const LatticeArgs& a) {
    const DeformationParameter dp(a.num.q);
    const SummationControl ctrl = a.num.ctrl();
    const Evaluator f = parse_function(a.fn, dp, ctrl);
    const qcalc::LatticeSign sign = a.sign == "neg"    ? qcalc::LatticeSign::negative
                                    : a.sign == "both" ? qcalc::LatticeSign::both
                                                       : qcalc::LatticeSign::positive;
    const qcalc::QLattice lat = qcalc::lattice_points(dp, a.scale, a.n_lo, a.n_hi, sign);
    const double w = dp.q_inv() - dp.q();
    Table t;
    t.headers = {"n", "location", "weight", "f_value", "term"};
    for (const auto& pt : lat.points) {
        const double weight = w * a.scale * std::pow(dp.q(), 2 * pt.n + 1);
        const double fv = f(pt.location);
        t.push_row(static_cast<std::int64_t>(pt.n), pt.location, weight, fv, weight * fv);
    }
    emit(t, {{"q", a.num.q}, {"scale", a.scale}, {"sign", a.sign}, {"fn", a.fn}}, {}, a.out);
    return 0;
}

struct FockArgs {
    CommonNumeric num;
    OutputConfig out;
    int dim = 8;
    std::string what = "residuals";
};

int run_fock(const FockArgs& a) {
    const DeformationParameter dp(a.num.q);
    const qcalc::TruncatedOperators ops = qcalc::build_truncated(dp, a.dim);
    const nlohmann::json params{{"q", a.num.q}, {"dim", a.dim}, {"what", a.what}};
    Table t;
    if (a.what == "residuals") {
        const auto r = qcalc::algebra_residuals(ops);
        t.headers = {"r1", "r2", "r3"};
        t.push_row(r.r1, r.r2, r.r3);
    } else if (a.what == "gaps") {
        t.headers = {"n", "number", "q_number", "gap"};
        for (int n = 0; n < a.dim; ++n) {
            const double qn = ops.q_number.at(n, n);
            t.push_row(static_cast<std::int64_t>(n), ops.number.at(n, n), qn,
                       qn - static_cast<double>(n));
        }
    } else if (a.what == "matrices") {
        t.headers = {"matrix", "row", "col", "value"};
        const std::pair<const char*, const qcalc::SquareMatrix*> mats[] = {
            {"lowering", &ops.lowering},
            {"raising", &ops.raising},
            {"number", &ops.number},
            {"q_number", &ops.q_number},
        };
        for (const auto& [name, m] : mats) {
            for (int i = 0; i < a.dim; ++i) {
                for (int j = 0; j < a.dim; ++j) {
                    t.push_row(std::string(name), static_cast<std::int64_t>(i),
                               static_cast<std::int64_t>(j), m->at(i, j));
                }
            }
        }
    } else {
        throw UsageError("fock: --what must be residuals, gaps, or matrices");
    }
    emit(t, params, {}, a.out);
    return 0;
}

struct SpecialArgs {
    CommonNumeric num;
    OutputConfig out;
    std::string fn = "qexp";
    std::string xs = "1";
    double a = 1.0;
};

int run_special(const SpecialArgs& a) {
    const DeformationParameter dp(a.num.q);
    const SummationControl ctrl = a.num.ctrl();
    qcalc::QSeriesKind kind;
    if (a.fn == "qexp") {
        kind = qcalc::QSeriesKind::q_exp;
    } else if (a.fn == "qsin") {
        kind = qcalc::QSeriesKind::q_sin;
    } else if (a.fn == "qcos") {
        kind = qcalc::QSeriesKind::q_cos;
    } else {
        throw UsageError("special: --fn must be qexp, qsin, or qcos");
    }
    const auto points = parse_double_list(a.xs, "--x");
    Table t;
    t.headers = {"x", "value", "residual"};
    for (double x : points) {
        const double value = qcalc::q_series_eval(kind, x, dp, ctrl).value;
        double residual;
        if (kind == qcalc::QSeriesKind::q_exp) {
            // first-order residual |D f - f|: the q-exponential reproduces
            // itself under the Jackson derivative
            const Evaluator f = [&dp, &ctrl](double v) { return qcalc::q_exp(v, dp, ctrl); };
            residual = std::abs(qcalc::jackson_derivative(f, dp, x) - value);
        } else {
            residual = qcalc::ode_residual(kind, a.a, dp, x, ctrl);
        }
        t.push_row(x, value, residual);
    }
    emit(t, {{"q", a.num.q}, {"fn", a.fn}, {"a", a.a}}, {}, a.out);
    return 0;
}

struct SolveArgs {
    CommonNumeric num;
    OutputConfig out;
    std::string what = "recover";
    std::string F;
    std::string f;
    std::string g;
    double b = 1.0;
    int depth = 10;
    double class_tol = 1e-9;
};

int run_solve(const SolveArgs& a) {
    const DeformationParameter dp(a.num.q);
    const SummationControl ctrl = a.num.ctrl();
    if (a.what == "recover") {
        if (a.F.empty()) throw UsageError("solve recover: need --F");
        const Evaluator F = parse_function(a.F, dp, ctrl);
        const auto sol = qcalc::recover_integrand(F, dp, a.b, a.depth);
        Table t;
        t.headers = {"point", "h_value"};
        for (const auto& s : sol.values) t.push_row(s.point, s.h_value);
        emit(t, {{"q", a.num.q}, {"F", a.F}, {"b", a.b}, {"depth", a.depth}}, {}, a.out);
        return 0;
    }
    if (a.what == "uniqueness") {
        if (a.f.empty() || a.g.empty()) throw UsageError("solve uniqueness: need --f and --g");
        const Evaluator f = parse_function(a.f, dp, ctrl);
        const Evaluator g = parse_function(a.g, dp, ctrl);
        const auto rep = qcalc::uniqueness_check(f, g, dp, a.b, a.depth, a.class_tol, ctrl);
        Table t;
        t.headers = {"same_class", "integral_gap"};
        t.push_row(rep.same_class, rep.integral_gap);
        emit(t,
             {{"q", a.num.q}, {"f", a.f}, {"g", a.g}, {"b", a.b}, {"depth", a.depth},
              {"class_tol", a.class_tol}},
             {}, a.out);
        return 0;
    }
    throw UsageError("solve: --what must be recover or uniqueness");
}

struct CounterexampleArgs {
    CommonNumeric num;
    OutputConfig out;
    double a = 0.8;
    double b = 1.0;
    int grid = 1000;
};

int run_counterexample(const CounterexampleArgs& a) {
    if (a.grid < 2) throw UsageError("counterexample: --grid must be >= 2");
    const DeformationParameter dp(a.num.q);
    const auto pair = qcalc::monotonicity_counterexample(dp, a.a, a.b);
    Table t;
    t.headers = {"x", "f", "g", "int_f", "int_g"};
    for (int i = 0; i < a.grid; ++i) {
        const double x = a.a + (a.b - a.a) * i / (a.grid - 1);
        t.push_row(x, pair.f(x), pair.g(x), pair.int_f, pair.int_g);
    }
    emit(t,
         {{"q", a.num.q},
          {"a", a.a},
          {"b", a.b},
          {"int_f", pair.int_f},
          {"int_g", pair.int_g},
          {"plateau_center", pair.plateau_center},
          {"plateau_halfwidth", pair.plateau_halfwidth},
          {"plateau_height", pair.plateau_height}},
         {}, a.out);
    return 0;
}

struct LimitStudyArgs {
    CommonNumeric num;
    OutputConfig out;
    std::string q_list = "0.9,0.99,0.999";
    int n = 3;
    double x = 1.0;
};

int run_limit_study(const LimitStudyArgs& a) {
    const auto qs = parse_double_list(a.q_list, "--q-list");
    const SummationControl ctrl = a.num.ctrl();
    Table t;
    t.headers = {"q", "bracket_gap", "derivative_dev", "commutator_dev", "qexp_dev"};
    for (double q : qs) {
        const DeformationParameter dp(q);
        const double bracket_gap = qcalc::q_bracket_classical_gap(a.n, dp);
        const Evaluator f = [](double v) { return std::sin(v); };
        const double deriv_dev =
            std::abs(qcalc::jackson_derivative(f, dp, a.x) - std::cos(a.x));
        const double comm_dev = qcalc::q_commutator_xp(a.n, dp).deviation;
        const double qexp_dev = std::abs(qcalc::q_exp(1.0, dp, ctrl) - std::exp(1.0));
        t.push_row(q, bracket_gap, deriv_dev, comm_dev, qexp_dev);
    }
    emit(t, {{"q_list", a.q_list}, {"n", a.n}, {"x", a.x}}, {}, a.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qcalc: symmetric q-calculus. Brackets, Jackson derivative and "
                 "integrals, ladder operators, q-special functions"};
    app.require_subcommand(1);

    QnumArgs qnum_args;
    auto* qnum = app.add_subcommand("qnum", "q-brackets, q-factorials, classical gaps");
    add_common_flags(qnum, qnum_args.num, qnum_args.out);
    qnum->add_option("--n", qnum_args.n, "bracket index")->required();
    qnum->add_flag("--table", qnum_args.full_table, "emit the full table for 0..n");

    DerivArgs deriv_args;
    auto* deriv = app.add_subcommand("deriv", "Jackson derivative at sample points");
    add_common_flags(deriv, deriv_args.num, deriv_args.out);
    deriv->add_option("--fn", deriv_args.fn, "function spec")->required();
    deriv->add_option("--at", deriv_args.at, "comma-separated sample points")->required();

    IntegrateArgs int_args;
    auto* integrate = app.add_subcommand("integrate", "Jackson integrals");
    add_common_flags(integrate, int_args.num, int_args.out);
    integrate->add_option("--fn", int_args.fn, "function spec")->required();
    auto* aopt = integrate->add_option("--a", int_args.a, "lower limit (interval form)");
    auto* bopt = integrate->add_option("--b", int_args.b, "upper limit");
    auto* improper_flag =
        integrate->add_flag("--improper", int_args.improper, "integral over (0, inf)");
    auto* real_line_flag =
        integrate->add_flag("--real-line", int_args.real_line, "two-sided integral");
    improper_flag->excludes(aopt)->excludes(bopt)->excludes(real_line_flag);
    real_line_flag->excludes(aopt)->excludes(bopt);

    LatticeArgs lat_args;
    auto* lattice = app.add_subcommand("lattice", "sample point and weight tables");
    add_common_flags(lattice, lat_args.num, lat_args.out);
    lattice->add_option("--scale", lat_args.scale, "lattice scale b");
    lattice->add_option("--n-lo", lat_args.n_lo, "lowest index")->required();
    lattice->add_option("--n-hi", lat_args.n_hi, "highest index")->required();
    lattice->add_option("--sign", lat_args.sign, "pos|neg|both")
        ->check(CLI::IsMember({"pos", "neg", "both"}));
    lattice->add_option("--fn", lat_args.fn, "function spec for the f_value column");

    FockArgs fock_args;
    auto* fock = app.add_subcommand("fock", "truncated ladder operators");
    add_common_flags(fock, fock_args.num, fock_args.out);
    fock->add_option("--dim", fock_args.dim, "truncation dimension (>= 2)");
    fock->add_option("--what", fock_args.what, "residuals|gaps|matrices")
        ->check(CLI::IsMember({"residuals", "gaps", "matrices"}));

    SpecialArgs special_args;
    auto* special = app.add_subcommand("special", "q-special function tables");
    add_common_flags(special, special_args.num, special_args.out);
    special->add_option("--fn", special_args.fn, "qexp|qsin|qcos")->required();
    special->add_option("--x", special_args.xs, "comma-separated sample points")->required();
    special->add_option("--a", special_args.a, "coefficient in the second-order residual");

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "integrand recovery and lattice uniqueness");
    add_common_flags(solve, solve_args.num, solve_args.out);
    solve->add_option("--what", solve_args.what, "recover|uniqueness")
        ->check(CLI::IsMember({"recover", "uniqueness"}));
    solve->add_option("--F", solve_args.F, "known antiderivative (recover)");
    solve->add_option("--f", solve_args.f, "first function (uniqueness)");
    solve->add_option("--g", solve_args.g, "second function (uniqueness)");
    solve->add_option("--b", solve_args.b, "base point");
    solve->add_option("--depth", solve_args.depth, "lattice depth");
    solve->add_option("--class-tol", solve_args.class_tol, "lattice agreement tolerance");

    CounterexampleArgs ce_args;
    auto* counterexample =
        app.add_subcommand("counterexample", "pointwise order vs integral order failure");
    add_common_flags(counterexample, ce_args.num, ce_args.out);
    counterexample->add_option("--a", ce_args.a, "interval start")->required();
    counterexample->add_option("--b", ce_args.b, "interval end")->required();
    counterexample->add_option("--grid", ce_args.grid, "grid points across [a,b]");

    LimitStudyArgs limit_args;
    auto* limit = app.add_subcommand("limit-study", "deviation curves as q -> 1");
    add_common_flags(limit, limit_args.num, limit_args.out, /*q_required=*/false);
    limit->add_option("--q-list", limit_args.q_list, "comma-separated q sweep");
    limit->add_option("--n", limit_args.n, "bracket/commutator index");
    limit->add_option("--x", limit_args.x, "derivative sample point");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (qnum->parsed()) return run_qnum(qnum_args);
        if (deriv->parsed()) return run_deriv(deriv_args);
        if (integrate->parsed()) {
            int_args.has_a = aopt->count() > 0;
            int_args.has_b = bopt->count() > 0;
            return run_integrate(int_args);
        }
        if (lattice->parsed()) return run_lattice(lat_args);
        if (fock->parsed()) return run_fock(fock_args);
        if (special->parsed()) return run_special(special_args);
        if (solve->parsed()) return run_solve(solve_args);
        if (counterexample->parsed()) return run_counterexample(ce_args);
        if (limit->parsed()) return run_limit_study(limit_args);
        std::cerr << "qcalc: no subcommand\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "qcalc: " << e.what() << '\n';
        return 2;
    } catch (const qcalc::DivergenceError& e) {
        std::cerr << "qcalc: " << e.what() << '\n';
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "qcalc: " << e.what() << '\n';
        return 1;
    } catch (const std::range_error& e) {
        std::cerr << "qcalc: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "qcalc: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "qcalc: " << e.what() << '\n';
        return 1;
    }
}
