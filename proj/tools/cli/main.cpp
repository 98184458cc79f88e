// cr-sharp: constants, eigenvalue tables, verification suites, the
// extremizer and the center-of-mass solver from the command line.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parameter error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "crsharp/errors.hpp"
#include "crsharp/inequalities.hpp"
#include "crsharp/spectral.hpp"
#include "density.hpp"

namespace {

using namespace crsharp;
using json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

// Usage errors detected after CLI11 parsing.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot open output file " + path);
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
}

// ---- constants ---------------------------------------------------------------

struct ConstantsArgs {
    int n = 1;
    std::optional<double> lambda;
    double d = 1.0;
    std::string side = "all";
    std::string format = "json";
    double tol = 1e-8;
    std::string output;
};

int cmd_constants(const ConstantsArgs& a) {
    if (!a.lambda) throw UsageError("constants: --lambda is required");
    std::vector<inequalities::SharpConstantReport> rows = inequalities::constant_reports(a.n, *a.lambda, a.d);
    std::vector<inequalities::SharpConstantReport> kept;
    for (auto& r : rows) {
        const bool heis = r.name.find("heisenberg") != std::string::npos;
        if (a.side == "all" || (a.side == "heisenberg") == heis) kept.push_back(std::move(r));
    }
    bool ok = true;
    for (const auto& r : kept)
        if (r.numeric_value && !(r.relative_gap <= a.tol)) ok = false;

    if (a.format == "csv") {
        std::ostringstream os;
        os << "name,closed_value,numeric_value,relative_gap\n";
        for (const auto& r : kept)
            os << r.name << ',' << num(r.closed_value) << ',' << (r.numeric_value ? num(*r.numeric_value) : "")
               << ',' << num(r.relative_gap) << '\n';
        emit(os.str(), a.output);
    } else {
        json doc;
        doc["schema"] = 1;
        doc["parameters"] = {{"n", a.n}, {"lambda", *a.lambda}, {"d", a.d}, {"side", a.side}};
        json arr = json::array();
        for (const auto& r : kept) {
            json params = json::object();
            for (const auto& [k, v] : r.parameters) params[k] = v;
            arr.push_back({{"name", r.name},
                           {"parameters", params},
                           {"closed_value", r.closed_value},
                           {"numeric_value", r.numeric_value ? json(*r.numeric_value) : json(nullptr)},
                           {"relative_gap", r.relative_gap}});
        }
        doc["constants"] = std::move(arr);
        doc["passed"] = ok;
        emit(doc.dump(2), a.output);
    }
    return ok ? kOk : kFailed;
}

// ---- eigenvalues -------------------------------------------------------------

struct EigenArgs {
    std::string kernel = "power";
    std::optional<double> alpha;
    int n = 1;
    int jmax = 6;
    bool check_numeric = false;
    double tol = 1e-6;
    std::string format = "csv";
    std::string output;
};

int cmd_eigenvalues(const EigenArgs& a) {
    spectral::ZonalKernelSpec spec;
    if (a.kernel == "power" || a.kernel == "weighted") {
        if (!a.alpha) throw UsageError("eigenvalues: --alpha is required for the " + a.kernel + " kernel");
        spec = a.kernel == "power" ? spectral::ZonalKernelSpec::power(a.n, *a.alpha)
                                   : spectral::ZonalKernelSpec::weighted(a.n, *a.alpha);
    } else if (a.kernel == "log") {
        spec = spectral::ZonalKernelSpec::log(a.n);
    } else {
        spec = spectral::ZonalKernelSpec::entropy(a.n);
    }
    spec.validate();
    if (a.jmax < 0) throw UsageError("eigenvalues: --jmax must be non-negative");

    const spectral::EigenvalueTable table(spec, a.jmax);
    std::optional<spectral::EigenvalueTable> numeric;
    if (a.check_numeric) numeric.emplace(spec, a.jmax, spectral::EvalMethod::Numeric);

    bool ok = true;
    auto gap = [&](int j, int k) {
        const double c = table.at(j, k), q = numeric->at(j, k);
        const double scale = std::max(std::abs(c), std::abs(q));
        return scale == 0.0 ? 0.0 : std::abs(c - q) / scale;
    };

    if (a.format == "json") {
        json doc;
        doc["schema"] = 1;
        doc["kernel"] = spectral::kernel_name(spec.kind);
        doc["parameters"] = {{"n", a.n}, {"alpha", spec.alpha}, {"jmax", a.jmax}};
        json rows = json::array();
        for (int j = 0; j <= a.jmax; ++j) {
            for (int k = 0; k <= a.jmax; ++k) {
                json row = {{"j", j}, {"k", k}, {"eigenvalue", table.at(j, k)}};
                if (numeric) {
                    const double g = gap(j, k);
                    ok = ok && g <= a.tol;
                    row["numeric"] = numeric->at(j, k);
                    row["relative_gap"] = g;
                }
                rows.push_back(std::move(row));
            }
        }
        doc["table"] = std::move(rows);
        if (numeric) doc["passed"] = ok;
        emit(doc.dump(2), a.output);
    } else {
        std::ostringstream os;
        os << (numeric ? "j,k,eigenvalue,numeric,relative_gap\n" : "j,k,eigenvalue\n");
        for (int j = 0; j <= a.jmax; ++j) {
            for (int k = 0; k <= a.jmax; ++k) {
                os << j << ',' << k << ',' << num(table.at(j, k));
                if (numeric) {
                    const double g = gap(j, k);
                    ok = ok && g <= a.tol;
                    os << ',' << num(numeric->at(j, k)) << ',' << num(g);
                }
                os << '\n';
            }
        }
        emit(os.str(), a.output);
    }
    return ok ? kOk : kFailed;
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
    std::string suite;
    int n = 1;
    std::optional<double> alpha;
    std::optional<int> jmax;
    double d = 1.0;
    double lambda = 2.0;
    std::uint64_t seed = 1;
    std::optional<int> trials;
    int pairs = 10000;
    std::vector<double> eps = {0.02, 0.04, 0.08};
    std::vector<double> s;  // empty: those of 0.25, 1, 2.5 inside (0, Q/2)
    std::string output;
};

inequalities::VerificationReport run_suite(const std::string& suite, const VerifyArgs& a) {
    namespace iq = inequalities;
    if (suite == "keyineq") {
        const int J = a.jmax.value_or(200);
        return a.alpha ? iq::verify_keyineq(a.n, *a.alpha, J) : iq::verify_keyineq_grid(a.n, J);
    }
    if (suite == "sobq") return iq::verify_sobq(a.n, a.d, a.jmax.value_or(100));
    if (suite == "gsr") return iq::verify_gsr(a.n, a.seed, a.trials.value_or(100));
    if (suite == "jl") return iq::verify_jl(a.n, a.seed, a.trials.value_or(200));
    if (suite == "hls") return iq::verify_hls(a.n, a.lambda, a.seed, a.trials.value_or(200));
    if (suite == "endpoint-log") return iq::verify_endpoint_log(a.n, a.eps);
    if (suite == "endpoint-entropy") return iq::verify_endpoint_entropy(a.n, a.eps);
    if (suite == "cayley") return iq::verify_cayley(a.n, a.seed, a.pairs);
    if (suite == "multipliers") {
        std::vector<double> s = a.s;
        if (s.empty())
            for (double v : {0.25, 1.0, 2.5})
                if (v < a.n + 1.0) s.push_back(v);
        return iq::verify_multipliers(a.n, s);
    }
    throw UsageError("unknown suite " + suite);
}

int cmd_verify(const VerifyArgs& a) {
    inequalities::VerificationReport rep("all");
    if (a.suite == "all") {
        rep.set_parameter("n", a.n);
        rep.set_parameter("seed", static_cast<double>(a.seed));
        for (const char* name : {"keyineq", "sobq", "gsr", "jl", "hls", "endpoint-log", "endpoint-entropy", "cayley",
                                 "multipliers"}) {
            if (std::string(name) == "hls" && a.n != 1) continue;  // FFT transform is n = 1 only
            const inequalities::VerificationReport part = run_suite(name, a);
            std::cerr << name << ": " << part.cases_total - part.cases_failed << "/" << part.cases_total
                      << " passed\n";
            rep.merge(part);
        }
    } else {
        rep = run_suite(a.suite, a);
    }
    emit(rep.to_json(), a.output);
    return rep.passed() ? kOk : kFailed;
}

// ---- maximize ----------------------------------------------------------------

struct MaximizeArgs {
    int n = 1;
    std::optional<double> lambda;
    inequalities::MaximizeOptions opt;
    std::string start = "random";
    double threshold = 0.01;
    int resolution_scale = 1;
    std::string trace;
    std::string output;
};

int cmd_maximize(MaximizeArgs a) {
    if (!a.lambda) throw UsageError("maximize: --lambda is required");
    a.opt.constant_start = a.start == "constant";
    const csphere::QuadratureGrid grid =
        csphere::build_grid(a.n, csphere::scaled_resolution(csphere::default_resolution(a.n), a.resolution_scale));
    const double C = inequalities::hls_constant_sphere(a.n, *a.lambda);

    json doc;
    doc["schema"] = 1;
    doc["parameters"] = {{"n", a.n},         {"lambda", *a.lambda},         {"seed", a.opt.seed},
                         {"jmax", a.opt.Jmax}, {"damping", a.opt.damping},    {"max_iters", a.opt.max_iters},
                         {"start", a.start},  {"threshold", a.threshold}};
    doc["constant"] = C;
    try {
        const inequalities::MaximizeResult res = inequalities::maximize_quotient(a.n, *a.lambda, grid, a.opt);
        const double gap = (C - res.quotient) / C;
        if (!a.trace.empty()) {
            std::ostringstream os;
            os << "iteration,quotient\n";
            for (std::size_t i = 0; i < res.trace.size(); ++i) os << i << ',' << num(res.trace[i]) << '\n';
            emit(os.str(), a.trace);
        }
        doc["quotient"] = res.quotient;
        doc["gap"] = gap;
        doc["iterations"] = res.iterations;
        doc["converged"] = res.converged;
        doc["out_of_band"] = res.out_of_band;
        const bool ok = std::abs(gap) <= a.threshold;
        doc["passed"] = ok;
        emit(doc.dump(2), a.output);
        return ok ? kOk : kFailed;
    } catch (const ConvergenceError& e) {
        doc["error"] = e.what();
        doc["achieved"] = e.achieved();
        doc["passed"] = false;
        emit(doc.dump(2), a.output);
        return kFailed;
    }
}

// ---- com ----------------------------------------------------------------------

struct ComArgs {
    int n = 1;
    std::string density;
    double tol = 1e-8;
    int max_iters = 60;
    int resolution_scale = 1;
    std::string output;
};

int cmd_com(const ComArgs& a) {
    const tools::Density f = tools::resolve_density(a.density, a.n);
    const csphere::QuadratureGrid grid =
        csphere::build_grid(a.n, csphere::scaled_resolution(csphere::default_resolution(a.n), a.resolution_scale));
    const std::vector<double> samples = f.sample_nonnegative(grid);

    json doc;
    doc["schema"] = 1;
    doc["parameters"] = {{"n", a.n}, {"density", f.text()}, {"tol", a.tol}, {"max_iters", a.max_iters}};
    try {
        const inequalities::CenterOfMassSolution sol = inequalities::solve_center_of_mass(samples, grid, a.tol, a.max_iters);
        json xi = json::array();
        for (const auto& c : sol.xi.zeta) xi.push_back({c.real(), c.imag()});
        doc["delta"] = sol.delta;
        doc["xi"] = std::move(xi);
        doc["residual"] = sol.residual;
        doc["iterations"] = sol.iterations;
        doc["passed"] = sol.residual <= a.tol;
        emit(doc.dump(2), a.output);
        return sol.residual <= a.tol ? kOk : kFailed;
    } catch (const ConvergenceError& e) {
        doc["error"] = e.what();
        doc["residual"] = e.achieved();
        doc["passed"] = false;
        emit(doc.dump(2), a.output);
        return kFailed;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cr-sharp: sharp constants and inequalities on the CR sphere and the Heisenberg group"};
    app.require_subcommand(1);

    ConstantsArgs ca;
    auto* constants = app.add_subcommand("constants", "Sharp constants with independent numeric cross-checks");
    constants->add_option("--n", ca.n, "CR dimension n >= 1")->capture_default_str();
    constants->add_option("--lambda", ca.lambda, "HLS exponent in (0, Q)");
    constants->add_option("--d", ca.d, "Sobolev order in (0, 2)")->capture_default_str();
    constants->add_option("--side", ca.side, "sphere | heisenberg | all")
        ->check(CLI::IsMember({"sphere", "heisenberg", "all"}))
        ->capture_default_str();
    constants->add_option("--format", ca.format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    constants->add_option("--tol", ca.tol, "Closed vs numeric relative tolerance")->capture_default_str();
    constants->add_option("--output,-o", ca.output, "Output file (default stdout)");

    EigenArgs ea;
    auto* eig = app.add_subcommand("eigenvalues", "Eigenvalue table of a zonal kernel on H_{j,k}");
    eig->add_option("--kernel", ea.kernel)
        ->check(CLI::IsMember({"power", "weighted", "log", "entropy"}))
        ->capture_default_str();
    eig->add_option("--alpha", ea.alpha, "Kernel exponent (power, weighted)");
    eig->add_option("--n", ea.n)->capture_default_str();
    eig->add_option("--jmax", ea.jmax)->capture_default_str();
    eig->add_flag("--check-numeric", ea.check_numeric, "Add quadrature values and relative gaps");
    eig->add_option("--tol", ea.tol, "Gap tolerance for --check-numeric")->capture_default_str();
    eig->add_option("--format", ea.format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    eig->add_option("--output,-o", ea.output);

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Run a verification suite and write a JSON report");
    verify->add_option("suite", va.suite)
        ->required()
        ->check(CLI::IsMember({"keyineq", "sobq", "gsr", "jl", "hls", "endpoint-log", "endpoint-entropy", "cayley",
                               "multipliers", "all"}));
    verify->add_option("--n", va.n)->capture_default_str();
    verify->add_option("--alpha", va.alpha, "keyineq: single alpha instead of the 17-point grid");
    verify->add_option("--jmax", va.jmax, "keyineq (200), sobq (100)");
    verify->add_option("--d", va.d)->capture_default_str();
    verify->add_option("--lambda", va.lambda)->capture_default_str();
    verify->add_option("--seed", va.seed)->capture_default_str();
    verify->add_option("--trials", va.trials, "gsr (100), jl (200), hls (200)");
    verify->add_option("--pairs", va.pairs, "cayley kernel-relation pairs")->capture_default_str();
    verify->add_option("--eps", va.eps, "Endpoint trial amplitudes")->capture_default_str();
    verify->add_option("--s", va.s, "Multiplier orders (default: 0.25, 1, 2.5 where below Q/2)");
    verify->add_option("--output,-o", va.output);

    MaximizeArgs ma;
    auto* maximize = app.add_subcommand("maximize", "Fixed-point search for the HLS extremizer (n = 1)");
    maximize->add_option("--n", ma.n)->capture_default_str();
    maximize->add_option("--lambda", ma.lambda);
    maximize->add_option("--seed", ma.opt.seed)->capture_default_str();
    maximize->add_option("--jmax", ma.opt.Jmax)->capture_default_str();
    maximize->add_option("--damping", ma.opt.damping)->capture_default_str();
    maximize->add_option("--max-iters", ma.opt.max_iters)->capture_default_str();
    maximize->add_option("--tol", ma.opt.tol)->capture_default_str();
    maximize->add_option("--start", ma.start)->check(CLI::IsMember({"random", "constant"}))->capture_default_str();
    maximize->add_option("--threshold", ma.threshold, "Allowed relative gap to the constant")->capture_default_str();
    maximize->add_option("--resolution-scale", ma.resolution_scale)->check(CLI::PositiveNumber)->capture_default_str();
    maximize->add_option("--trace", ma.trace, "CSV file for the quotient trace");
    maximize->add_option("--output,-o", ma.output);

    ComArgs oa;
    auto* com = app.add_subcommand("com", "Center-of-mass normalization of a density");
    std::string families;
    for (const auto& b : tools::builtin_densities()) families += (families.empty() ? "" : ", ") + b.name;
    com->add_option("--n", oa.n)->capture_default_str();
    com->add_option("--density", oa.density, "Expression in z1.., zb1.. or a builtin: " + families)->required();
    com->add_option("--tol", oa.tol)->capture_default_str();
    com->add_option("--max-iters", oa.max_iters)->capture_default_str();
    com->add_option("--resolution-scale", oa.resolution_scale)->check(CLI::PositiveNumber)->capture_default_str();
    com->add_option("--output,-o", oa.output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*constants) return cmd_constants(ca);
        if (*eig) return cmd_eigenvalues(ea);
        if (*verify) return cmd_verify(va);
        if (*maximize) return cmd_maximize(ma);
        if (*com) return cmd_com(oa);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const tools::ParseError& e) {
        std::cerr << "error: malformed density: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const DimensionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const PoleError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailed;
    }
    return kUsage;
}
