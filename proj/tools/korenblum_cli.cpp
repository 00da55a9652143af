// Command-line front end: verify | root | norms | search | scan | plot-data.
//
// Exit codes: 0 pass, 1 verification failure, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <locale>
#include <optional>
#include <sstream>
#include <string>

#include "korenblum/korenblum.hpp"

namespace {

using namespace korenblum;

constexpr int exit_pass = 0;
constexpr int exit_failure = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonFlags {
    std::string a;
    int n = 10;
    int terms = default_truncation;
    bool exact = false;
    bool json = false;
    std::string out;
    std::string grid;
    std::optional<double> tol;
};

/// "RxA" -> (R, A).
std::pair<int, int> parse_grid(const std::string& text)
{
    const auto x = text.find_first_of("xX");
    if (x == std::string::npos)
        throw UsageError("grid must look like RxA, got '" + text + "'");
    try {
        std::size_t used = 0;
        const int radial = std::stoi(text.substr(0, x), &used);
        if (used != x)
            throw UsageError("bad grid '" + text + "'");
        const std::string rest = text.substr(x + 1);
        const int angular = std::stoi(rest, &used);
        if (used != rest.size())
            throw UsageError("bad grid '" + text + "'");
        return {radial, angular};
    } catch (const std::logic_error&) {
        throw UsageError("bad grid '" + text + "'");
    }
}

/// Command-line parameters must satisfy 0 < a < 1 and n >= 2.
Params parse_params(const std::string& a_text, int n)
{
    if (a_text.empty())
        throw UsageError("--a is required");
    Rational a;
    try {
        a = parse_decimal(a_text);
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
    if (!(a > 0) || !(a < 1))
        throw UsageError("--a must lie strictly between 0 and 1, got " + a_text);
    if (n < 2)
        throw UsageError("--n must be >= 2, got " + std::to_string(n));
    return Params(a, n);
}

std::ostringstream classic_stream()
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(17);
    return os;
}

void emit(const std::string& text, const std::string& out_path)
{
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file)
        throw UsageError("cannot open '" + out_path + "' for writing");
    file << text;
}

std::string format_enclosure(const std::string& label, double lower, double upper, double width)
{
    auto os = classic_stream();
    os << label << " in [" << lower << ", " << upper << "]  (width " << width << ")\n";
    return os.str();
}

// ---------------------------------------------------------------- verify

int cmd_verify(const CommonFlags& flags, bool adaptive, const std::string& quad_grid)
{
    const auto params = parse_params(flags.a, flags.n);
    VerifyOptions options;
    options.exact = flags.exact;
    options.terms = flags.terms;
    options.adaptive = adaptive;
    if (flags.terms < 1)
        throw UsageError("--terms must be >= 1");
    if (!flags.grid.empty()) {
        const auto [radial, angular] = parse_grid(flags.grid);
        options.domination.radial_samples = radial;
        options.domination.angular_samples = angular;
    }
    if (!quad_grid.empty()) {
        const auto [radial, angular] = parse_grid(quad_grid);
        options.quadrature = {radial, angular};
    }
    if (flags.tol)
        options.domination.tol = *flags.tol;
    if (options.domination.radial_samples < 16 || options.domination.angular_samples < 16)
        throw UsageError("--grid needs >= 16 samples per axis");
    if (options.quadrature.radial_nodes < 8 || options.quadrature.angular_nodes < 16)
        throw UsageError("--quad-grid needs >= 8 radial and >= 16 angular nodes");

    const auto cert = run_verification(params, options);
    if (flags.json) {
        emit(nlohmann::json(cert).dump(2) + "\n", flags.out);
    } else {
        auto os = classic_stream();
        os << "a = " << cert.a << ", n = " << cert.n << "\n";
        if (cert.critical_radius)
            os << "critical radius c = " << cert.critical_radius->value << "  (|p(c)| = "
               << cert.critical_radius->residual << ")\n";
        if (cert.domination)
            os << "domination (sampled " << cert.domination->radial_samples << "x"
               << cert.domination->angular_samples << "): " << cert.domination->verdict
               << ", max |f/g| = " << cert.domination->grid_max_ratio << "\n";
        if (cert.difference)
            os << format_enclosure("||f||^2 - ||g||^2 (" + cert.difference->mode + ", K = " +
                                       std::to_string(cert.difference->truncation_index) + ")",
                                   cert.difference->delta_lower, cert.difference->delta_upper,
                                   cert.difference->width);
        if (cert.cross_check)
            os << "quadrature cross-check: " << (cert.cross_check->pass ? "PASS" : "FAIL")
               << ", max discrepancy " << cert.cross_check->max_discrepancy << "\n";
        if (cert.failed_check)
            os << "FAILED: " << *cert.failed_check << ": " << cert.failure_message.value_or("") << "\n";
        else
            os << (cert.certified ? "CERTIFIED" : "PASSED (float mode; use --exact to certify)") << "\n";
        emit(os.str(), flags.out);
    }
    return cert.passed ? exit_pass : exit_failure;
}

// ---------------------------------------------------------------- root

int cmd_root(const CommonFlags& flags)
{
    const auto params = parse_params(flags.a, flags.n);
    RootOptions options;
    if (flags.tol) {
        if (!(*flags.tol > 0))
            throw UsageError("--tol must be positive");
        options.tol = *flags.tol;
    }
    const auto root = critical_root(params, options);
    if (flags.json) {
        nlohmann::json j = {{"a", params.a_decimal()},
                            {"n", params.n()},
                            {"c", root.value},
                            {"residual", root.residual},
                            {"tolerance", options.tol},
                            {"bisection_steps", root.bisection_steps},
                            {"newton_steps", root.newton_steps}};
        emit(j.dump(2) + "\n", flags.out);
    } else {
        auto os = classic_stream();
        os << std::setprecision(16) << root.value << "\n";
        emit(os.str(), flags.out);
    }
    return exit_pass;
}

// ---------------------------------------------------------------- norms

template <class T>
int report_norms(const Params& params, const CommonFlags& flags)
{
    const auto f = norm_sq_f<T>(params, flags.terms);
    const auto g = norm_sq_g<T>(params, flags.terms);
    const auto delta = norm_difference<T>(params, flags.terms);
    if (flags.json) {
        auto enclosure = [](const auto& e) {
            nlohmann::json j = {{"lower", to_double(e.lower)},
                                {"upper", to_double(e.upper)},
                                {"width", to_double(e.width())},
                                {"truncation_index", e.truncation_index},
                                {"mode", std::string(to_string(e.mode))}};
            if constexpr (std::is_same_v<T, Rational>) {
                j["lower_exact"] = ExactValue::from(e.lower);
                j["upper_exact"] = ExactValue::from(e.upper);
            }
            return j;
        };
        nlohmann::json j = {{"a", params.a_decimal()},
                            {"n", params.n()},
                            {"norm_sq_f", enclosure(f)},
                            {"norm_sq_g", enclosure(g)},
                            {"difference", summarize(delta)},
                            {"certified", std::is_same_v<T, Rational> && delta.positive()}};
        emit(j.dump(2) + "\n", flags.out);
    } else {
        auto os = classic_stream();
        os << "a = " << params.a_decimal() << ", n = " << params.n() << ", K = " << flags.terms << ", mode "
           << to_string(mode_of<T>) << "\n";
        os << format_enclosure("||f||^2", to_double(f.lower), to_double(f.upper), to_double(f.width()));
        os << format_enclosure("||g||^2", to_double(g.lower), to_double(g.upper), to_double(g.width()));
        os << format_enclosure("||f||^2 - ||g||^2", to_double(delta.delta_lower), to_double(delta.delta_upper),
                               to_double(delta.width()));
        if constexpr (std::is_same_v<T, Rational>)
            os << "delta_lower (exact, first 40 digits) = " << to_decimal_string(delta.delta_lower, 40) << "\n"
               << "certified: " << (delta.positive() ? "yes" : "no") << "\n";
        emit(os.str(), flags.out);
    }
    return exit_pass;
}

int cmd_norms(const CommonFlags& flags)
{
    const auto params = parse_params(flags.a, flags.n);
    if (flags.terms < 1)
        throw UsageError("--terms must be >= 1");
    return flags.exact ? report_norms<Rational>(params, flags) : report_norms<double>(params, flags);
}

// ---------------------------------------------------------------- search / scan

nlohmann::json candidate_json(const BoundCandidate& c)
{
    nlohmann::json j = {{"a", c.params.a_decimal()},
                        {"n", c.params.n()},
                        {"c", c.c ? nlohmann::json(*c.c) : nlohmann::json(nullptr)},
                        {"difference", summarize(c.delta)},
                        {"certified", c.certified},
                        {"improves_prior_bound", c.improves_prior},
                        {"note", c.note}};
    j["a_star"] = c.a_star ? nlohmann::json(to_decimal_string(*c.a_star, 20)) : nlohmann::json(nullptr);
    if (c.domination)
        j["domination"] = summarize(*c.domination);
    return j;
}

std::string candidate_text(const BoundCandidate& c)
{
    auto os = classic_stream();
    os << "n = " << c.params.n() << ", a = " << c.params.a_decimal();
    if (c.a_star)
        os << " (a* = " << to_decimal_string(*c.a_star, 14) << ")";
    os << "\n  delta_lower = " << c.delta_lower() << " (exact, K = " << c.delta.truncation_index << ")";
    if (c.c)
        os << "\n  c = " << std::setprecision(12) << *c.c;
    os << "\n  " << (c.certified ? "certified" : "not certified");
    if (c.certified)
        os << (c.improves_prior ? ", below 0.67795" : ", does not improve 0.67795");
    if (!c.note.empty())
        os << "\n  note: " << c.note;
    os << "\n";
    return os.str();
}

int cmd_search(const CommonFlags& flags, double safety, const std::string& forced_a)
{
    if (flags.n < 2)
        throw UsageError("--n must be >= 2");
    if (!(safety > 0))
        throw UsageError("--safety must be positive");
    BoundOptions options;
    options.safety = safety;
    options.terms = flags.terms;
    if (!forced_a.empty())
        options.forced_a = parse_params(forced_a, flags.n).a_exact();
    const auto candidate = best_bound(flags.n, options);
    if (flags.json)
        emit(candidate_json(candidate).dump(2) + "\n", flags.out);
    else
        emit(candidate_text(candidate), flags.out);
    return candidate.certified ? exit_pass : exit_failure;
}

int cmd_scan(const CommonFlags& flags, int n_min, int n_max, double safety, bool parallel)
{
    if (n_min < 2 || n_max < n_min)
        throw UsageError("scan needs 2 <= --n-min <= --n-max");
    if (!(safety > 0))
        throw UsageError("--safety must be positive");
    BoundOptions options;
    options.safety = safety;
    options.terms = flags.terms;
    std::vector<int> ns;
    for (int n = n_min; n <= n_max; ++n)
        ns.push_back(n);
    const auto table = scan(ns, options, parallel);

    if (flags.json) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& row : table.rows) {
            nlohmann::json j = row.candidate ? candidate_json(*row.candidate) : nlohmann::json{{"n", row.n}};
            j["error"] = row.error;
            rows.push_back(j);
        }
        nlohmann::json out = {{"rows", rows}};
        out["best_n"] = table.best_index ? nlohmann::json(table.rows[*table.best_index].n) : nlohmann::json(nullptr);
        emit(out.dump(2) + "\n", flags.out);
    } else {
        auto os = classic_stream();
        os << std::left << std::setw(4) << "n" << std::setw(16) << "a" << std::setw(18) << "c" << std::setw(16)
           << "delta_lower" << "status\n";
        for (const auto& row : table.rows) {
            os << std::setw(4) << row.n;
            if (row.candidate) {
                const auto& c = *row.candidate;
                std::ostringstream cval;
                cval.imbue(std::locale::classic());
                cval << std::setprecision(12);
                if (c.c)
                    cval << *c.c;
                else
                    cval << "-";
                std::ostringstream dval;
                dval.imbue(std::locale::classic());
                dval << std::setprecision(6) << c.delta_lower();
                os << std::setw(16) << c.params.a_decimal() << std::setw(18) << cval.str() << std::setw(16)
                   << dval.str() << (c.certified ? "certified" : "not certified: " + c.note);
            } else {
                os << "error: " << row.error;
            }
            os << "\n";
        }
        if (table.best_index) {
            const auto& best = *table.rows[*table.best_index].candidate;
            os << "best certified bound: c = " << std::setprecision(12) << *best.c << " at n = " << best.params.n()
               << ", a = " << best.params.a_decimal() << "\n";
        }
        emit(os.str(), flags.out);
    }
    return exit_pass;
}

// ---------------------------------------------------------------- plot-data

int cmd_plot_data(const CommonFlags& flags, int samples, std::string delta_out, const std::string& a_min,
                  const std::string& a_max, const std::string& a_step)
{
    const auto params = parse_params(flags.a, flags.n);
    if (flags.out.empty())
        throw UsageError("plot-data needs --out");
    if (samples < 2)
        throw UsageError("--samples must be >= 2");
    if (delta_out.empty()) {
        const auto dot = flags.out.rfind('.');
        const auto slash = flags.out.find_last_of('/');
        const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
        delta_out = (has_ext ? flags.out.substr(0, dot) : flags.out) + "_delta.csv";
    }

    const double c = critical_root(params).value;
    auto h_csv = classic_stream();
    h_csv << "r,h\n";
    for (int i = 0; i < samples; ++i) {
        const double r = i + 1 == samples ? 1.0 : c + (1.0 - c) * i / (samples - 1);
        h_csv << r << "," << ratio_envelope(params, r) << "\n";
    }
    emit(h_csv.str(), flags.out);

    std::vector<Rational> grid;
    try {
        grid = decimal_grid(a_min, a_max, a_step);
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
    auto d_csv = classic_stream();
    d_csv << "a,delta_lower,delta_upper\n";
    for (const auto& a : grid) {
        if (!(a >= 0) || !(a < 1))
            throw UsageError("delta sweep must stay inside [0, 1)");
        const auto delta = delta_of_a<double>(params.n(), a, flags.terms);
        d_csv << to_decimal_string(a) << "," << delta.delta_lower << "," << delta.delta_upper << "\n";
    }
    emit(d_csv.str(), delta_out);
    return exit_pass;
}

void add_common(CLI::App* cmd, CommonFlags& flags, bool with_a = true)
{
    if (with_a)
        cmd->add_option("--a", flags.a, "parameter a as a decimal string, 0 < a < 1");
    cmd->add_option("--n", flags.n, "exponent n >= 2")->capture_default_str();
    cmd->add_option("--terms", flags.terms, "series truncation index K")->capture_default_str();
    cmd->add_flag("--exact", flags.exact, "exact rational arithmetic");
    cmd->add_flag("--json", flags.json, "machine-readable output");
    cmd->add_option("--out", flags.out, "write output to this path instead of stdout");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Certified checks for the Korenblum-constant test-function family"};
    app.set_version_flag("--version", std::string(korenblum::version));
    app.require_subcommand(1);

    CommonFlags flags;
    bool adaptive = false;
    std::string quad_grid;
    double safety = 5e-6;
    std::string forced_a;
    int n_min = 2;
    int n_max = 20;
    bool parallel = false;
    int samples = 513;
    std::string delta_out;
    std::string a_min = "0.60";
    std::string a_max = "0.80";
    std::string a_step = "0.001";

    auto* verify = app.add_subcommand("verify", "run every check and emit a certificate");
    add_common(verify, flags);
    verify->add_option("--grid", flags.grid, "domination sampling grid RxA (default 256x1024)");
    verify->add_option("--quad-grid", quad_grid, "quadrature grid RxA (default 128x256)");
    verify->add_option("--tol", flags.tol, "domination tolerance (default 1e-12)");
    verify->add_flag("--adaptive", adaptive, "escalate K until the enclosure is tight");

    auto* root = app.add_subcommand("root", "print the critical radius c");
    add_common(root, flags);
    root->add_option("--tol", flags.tol, "target |p(c)| (default 1e-14)");

    auto* norms = app.add_subcommand("norms", "print ||f||^2, ||g||^2 and their difference");
    add_common(norms, flags);

    auto* search = app.add_subcommand("search", "best certified candidate for one n");
    add_common(search, flags, false);
    search->add_option("--safety", safety, "step above the zero of Delta(a)")->capture_default_str();
    search->add_option("--a", forced_a, "certify this a instead of searching");

    auto* scan_cmd = app.add_subcommand("scan", "best candidate for each n in a range");
    add_common(scan_cmd, flags, false);
    scan_cmd->add_option("--n-min", n_min)->capture_default_str();
    scan_cmd->add_option("--n-max", n_max)->capture_default_str();
    scan_cmd->add_option("--safety", safety, "step above the zero of Delta(a)")->capture_default_str();
    scan_cmd->add_flag("--parallel", parallel, "evaluate rows concurrently");

    auto* plot = app.add_subcommand("plot-data", "CSV of h(r) on [c, 1] and of Delta(a) over a sweep");
    add_common(plot, flags);
    plot->add_option("--samples", samples, "points on [c, 1]")->capture_default_str();
    plot->add_option("--delta-out", delta_out, "Delta(a) CSV path (default <out>_delta.csv)");
    plot->add_option("--a-min", a_min)->capture_default_str();
    plot->add_option("--a-max", a_max)->capture_default_str();
    plot->add_option("--a-step", a_step)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*verify)
            return cmd_verify(flags, adaptive, quad_grid);
        if (*root)
            return cmd_root(flags);
        if (*norms)
            return cmd_norms(flags);
        if (*search)
            return cmd_search(flags, safety, forced_a);
        if (*scan_cmd)
            return cmd_scan(flags, n_min, n_max, safety, parallel);
        if (*plot)
            return cmd_plot_data(flags, samples, delta_out, a_min, a_max, a_step);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const korenblum::InvalidArgument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const korenblum::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_failure;
    }
    return exit_usage;
}
