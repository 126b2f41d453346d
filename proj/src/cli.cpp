#include "sobolev/cli.hpp"

#include "sobolev/errors.hpp"
#include "sobolev/io.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace sobolev::cli
{
namespace
{

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

struct Common
{
    int N        = 0;
    double s     = 0.0;
    int K        = 64;
    int M        = 0;
    std::uint64_t seed = 1;
    unsigned threads   = 0;
    std::string output;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* K_opt    = nullptr;

    int quadrature_size() const { return M > 0 ? M : 2 * K + 2; }
};

struct ScanOptions
{
    std::vector<double> eps = {1e-1, 1e-2, 1e-3};
    int normal              = 60;
    int normal_degree       = 10;
    int random              = 300;
    int bubbles             = 20;
    double bubble_min       = 0.1;
    double bubble_max       = 0.9;
    std::vector<std::string> inputs;
};

class UsageError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

class ViolationError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

void add_scan_options(CLI::App* cmd, ScanOptions& o)
{
    cmd->add_option("--eps", o.eps, "epsilon grid for the 1 + eps*v family")->delimiter(',');
    cmd->add_option("--normal", o.normal, "number of random normal-space directions");
    cmd->add_option("--normal-degree", o.normal_degree, "highest harmonic degree in normal directions");
    cmd->add_option("--random", o.random, "number of random coefficient vectors");
    cmd->add_option("--bubbles", o.bubbles, "number of two-bubble members");
    cmd->add_option("--bubble-min", o.bubble_min, "smallest two-bubble t0");
    cmd->add_option("--bubble-max", o.bubble_max, "largest two-bubble t0");
    cmd->add_option("--input", o.inputs, "zonal-function JSON file appended to the scan");
}

ScanConfig make_scan_config(const Common& c, const ScanOptions& o)
{
    ScanConfig cfg;
    cfg.seed              = c.seed;
    cfg.K                 = c.K;
    cfg.M                 = c.M;
    cfg.threads           = c.threads;
    cfg.eps_grid          = o.eps;
    cfg.normal_directions = o.normal;
    cfg.normal_max_degree = o.normal_degree;
    cfg.random_members    = o.random;
    cfg.bubble_members    = o.bubbles;
    cfg.bubble_min        = o.bubble_min;
    cfg.bubble_max        = o.bubble_max;
    if (cfg.member_count() == 0 && o.inputs.empty())
        throw UsageError("scan configuration is empty: enable at least one family or --input");
    if (!(o.bubble_min > 0.0) || !(o.bubble_max < 1.0) || o.bubble_min > o.bubble_max)
        throw UsageError("two-bubble t0 range must satisfy 0 < min <= max < 1");
    return cfg;
}

std::vector<ScanMember> load_members(const SobolevParams& p, const ScanConfig& cfg,
                                     const ScanOptions& o, const QuadratureRule& rule)
{
    std::vector<ScanMember> members = scan_members(p, cfg, rule);
    for (const auto& path : o.inputs)
    {
        std::ifstream in(path);
        if (!in)
            throw UsageError("cannot open input file '" + path + "'");
        io::Json j;
        try
        {
            in >> j;
        }
        catch (const io::Json::exception& e)
        {
            throw UsageError("input '" + path + "' is not valid JSON: " + e.what());
        }
        ZonalFunction u = io::zonal_from_json(j);
        if (!(u.params() == p))
            throw UsageError("input '" + path + "' has (N, s) different from the command line");
        if (u.K() >= rule.size())
            throw UsageError("input '" + path + "' needs M > K");
        members.push_back({"custom", path, std::move(u)});
    }
    return members;
}

void note_unused_seed(const Common& c, std::ostream& err)
{
    if (c.seed_opt && c.seed_opt->count() > 0)
        err << "note: --seed ignored (this command uses no randomness)\n";
}

int cmd_constants(const Common& c, int kmax, const std::string& format, std::ostream& out,
                  std::ostream& err)
{
    note_unused_seed(c, err);
    const SobolevParams p(c.N, c.s);
    const WeakNormConstants w = compute_constants(p);
    const double S            = sharp_constant(p);

    if (format == "json")
    {
        io::Json eig = io::Json::array();
        for (int k = 0; k <= kmax; ++k)
            eig.push_back(io::Json{{"k", k},
                                   {"lambda", io::round12(eigenvalue(p, k))},
                                   {"multiplicity", multiplicity(p.N(), k)}});
        io::Json j{{"N", p.N()},
                   {"s", io::round12(p.s())},
                   {"q", io::round12(p.q())},
                   {"S", io::round12(S)},
                   {"local_constant", io::round12(local_constant(p))},
                   {"eigenvalues", eig}};
        const io::Json extra = io::to_json(w);
        for (auto& [k, v] : extra.items())
            j[k] = v;
        out << io::dump(j, 2) << "\n";
    }
    else if (format == "csv")
    {
        out << "quantity,value\n";
        out << "N," << p.N() << "\n" << "s," << fmt(p.s()) << "\n" << "q," << fmt(p.q()) << "\n";
        out << "S," << fmt(S) << "\n" << "local_constant," << fmt(local_constant(p)) << "\n";
        for (int k = 0; k <= kmax; ++k)
            out << "lambda_" << k << "," << fmt(eigenvalue(p, k)) << "\n"
                << "multiplicity_" << k << "," << multiplicity(p.N(), k) << "\n";
        out << "rho," << fmt(w.rho) << "\n" << "r0," << fmt(w.r0) << "\n"
            << "U_weak," << fmt(w.U_weak) << "\n" << "C1," << fmt(w.C1) << "\n"
            << "C2," << fmt(w.C2) << "\n" << "C0," << fmt(w.C0) << "\n" << "C," << fmt(w.C) << "\n";
    }
    else
    {
        out << "N = " << p.N() << ", s = " << fmt(p.s()) << ", q = " << fmt(p.q()) << "\n";
        out << "sharp constant S        " << fmt(S) << "\n";
        out << "local constant 2s/(N+s+2) " << fmt(local_constant(p)) << "\n";
        out << "  k  lambda_k            multiplicity\n";
        for (int k = 0; k <= kmax; ++k)
        {
            char line[96];
            std::snprintf(line, sizeof line, "%3d  %-18s  %lld\n", k, fmt(eigenvalue(p, k)).c_str(),
                          static_cast<long long>(multiplicity(p.N(), k)));
            out << line;
        }
        out << "rho " << fmt(w.rho) << "  r0 " << fmt(w.r0) << "  |U|_w " << fmt(w.U_weak) << "\n";
        out << "C1 " << fmt(w.C1) << "  C2 " << fmt(w.C2) << "  C0 " << fmt(w.C0) << "  C "
            << fmt(w.C) << "\n";
    }
    return kSuccess;
}

int cmd_eigenvalues(const Common& c, int kmax, const std::string& format, std::ostream& out,
                    std::ostream& err)
{
    note_unused_seed(c, err);
    const SobolevParams p(c.N, c.s);
    if (format == "json")
    {
        io::Json eig = io::Json::array();
        for (int k = 0; k <= kmax; ++k)
            eig.push_back(io::Json{{"k", k},
                                   {"lambda", io::round12(eigenvalue(p, k))},
                                   {"multiplicity", multiplicity(p.N(), k)}});
        out << io::dump(io::Json{{"N", p.N()}, {"s", io::round12(p.s())}, {"eigenvalues", eig}}, 2)
            << "\n";
    }
    else
    {
        const char* sep = format == "csv" ? "," : "  ";
        out << "k" << sep << "lambda" << sep << "multiplicity\n";
        for (int k = 0; k <= kmax; ++k)
            out << k << sep << fmt(eigenvalue(p, k)) << sep << multiplicity(p.N(), k) << "\n";
    }
    return kSuccess;
}

int cmd_deficit_scan(const Common& c, const ScanOptions& o, std::ostream& out, std::ostream& err)
{
    const SobolevParams p(c.N, c.s);
    const ScanConfig cfg      = make_scan_config(c, o);
    const QuadratureRule rule = gauss_jacobi_rule(p.N(), cfg.quadrature_size());
    const auto members        = load_members(p, cfg, o, rule);
    const ScanResult result   = run_scan(p, cfg, members, rule);
    for (const auto& rec : result.records)
        out << io::dump(io::to_json(rec)) << "\n";
    out << io::dump(io::scan_summary(p, cfg, result)) << "\n";
    if (result.skipped > 0)
        err << "skipped " << result.skipped << " on-manifold member(s)\n";
    if (result.violations > 0)
        throw ViolationError(std::to_string(result.violations) +
                             " member(s) violate d^2 >= Psi >= 0 beyond slack");
    return kSuccess;
}

int cmd_alpha_estimate(const Common& c, const ScanOptions& o, std::ostream& out, std::ostream& err)
{
    const SobolevParams p(c.N, c.s);
    const ScanConfig cfg      = make_scan_config(c, o);
    const QuadratureRule rule = gauss_jacobi_rule(p.N(), cfg.quadrature_size());
    const auto members        = load_members(p, cfg, o, rule);
    const ScanResult result   = run_scan(p, cfg, members, rule);

    io::Json per_family = io::Json::object();
    for (const auto& rec : result.records)
    {
        if (!rec.report)
            continue;
        const double r = io::round12(*rec.report->ratio);
        if (!per_family.contains(rec.family) || per_family[rec.family].get<double>() > r)
            per_family[rec.family] = r;
    }
    io::Json j = io::scan_summary(p, cfg, result);
    j.erase("summary");
    j["family_minimum"] = per_family;
    j["manifest"]       = io::scan_manifest(cfg);
    j["note"]           = "minimum over a finite scan with the axial distance; not a certified bound";
    out << io::dump(j, 2) << "\n";
    if (result.skipped > 0)
        err << "skipped " << result.skipped << " on-manifold member(s)\n";
    if (result.violations > 0)
        throw ViolationError(std::to_string(result.violations) +
                             " member(s) violate d^2 >= Psi >= 0 beyond slack");
    if (!(result.alpha_hat > 0.0) || result.alpha_hat > local_constant(p) + 0.05)
        throw ViolationError("alpha_hat outside (0, local_constant + 0.05]");
    return kSuccess;
}

int cmd_verify_theorem2(const Common& c, std::vector<std::string> profiles, std::ostream& out,
                        std::ostream& err)
{
    note_unused_seed(c, err);
    const SobolevParams p(c.N, c.s);
    const WeakNormConstants w = compute_constants(p);
    if (profiles.empty())
        for (double sharpness : {0.5, 1.0, 2.0})
            profiles.push_back("bump:" + fmt(w.r0) + "," + fmt(sharpness));
    const QuadratureRule rule = gauss_jacobi_rule(p.N(), c.quadrature_size());

    io::Json cases = io::Json::array();
    bool all_pass  = true;
    for (const auto& spec : profiles)
    {
        const RadialFunction u = parse_profile(p, spec);
        const Theorem2Case r   = verify_theorem2(u, rule, c.K, w);
        all_pass               = all_pass && r.passed;
        cases.push_back(io::to_json(r));
    }
    io::Json j{{"N", p.N()}, {"s", io::round12(p.s())}, {"K", c.K}};
    const io::Json extra = io::to_json(w);
    for (auto& [k, v] : extra.items())
        if (k != "r0" && k != "U_weak")
            j[k] = v;
    j["cases"] = cases;
    out << io::dump(j, 2) << "\n";
    if (!all_pass)
        throw ViolationError("weak-norm remainder inequality failed for at least one profile");
    return kSuccess;
}

int cmd_export_function(const Common& c, const std::string& profile,
                        const std::vector<double>& manifold, int harmonic, std::ostream& out,
                        std::ostream& err)
{
    note_unused_seed(c, err);
    const SobolevParams p(c.N, c.s);
    const int chosen = int(!profile.empty()) + int(!manifold.empty()) + int(harmonic >= 0);
    if (chosen != 1)
        throw UsageError("export-function needs exactly one of --profile, --manifold, --harmonic");
    const QuadratureRule rule = gauss_jacobi_rule(p.N(), c.quadrature_size());
    std::optional<ZonalFunction> u;
    if (!profile.empty())
        u = pullback_to_sphere(parse_profile(p, profile), rule, c.K);
    else if (!manifold.empty())
    {
        if (manifold.size() != 2)
            throw UsageError("--manifold expects c,t0");
        u = manifold_zonal(p, ManifoldPoint::make(manifold[0], manifold[1]), rule, c.K);
    }
    else
        u = ZonalFunction::unit(p, c.K, harmonic);
    out << io::dump(io::to_json(*u)) << "\n";
    return kSuccess;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Sharp fractional Sobolev inequality: constants, deficits and stability scans",
                 "sobolev"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value configuration file (flags override it)");

    Common common;
    app.add_option("--N", common.N, "dimension N >= 1")->required();
    app.add_option("--s", common.s, "order 0 < s < N")->required();
    common.K_opt = app.add_option("--K", common.K, "truncation degree (default 64; 512 for verify-theorem2)");
    app.add_option("--M", common.M, "quadrature size (default 2K+2)");
    common.seed_opt = app.add_option("--seed", common.seed, "random seed");
    app.add_option("--threads", common.threads, "worker threads (default: SOBOLEV_THREADS or all cores)");
    app.add_option("-o,--output", common.output, "write the result to this file");

    int kmax = 10;
    std::string format;
    auto* constants = app.add_subcommand("constants", "sharp constant, spectrum and weak-norm constants");
    constants->fallthrough();
    constants->add_option("--kmax", kmax, "largest eigenvalue index");
    constants->add_option("--format", format, "table | json | csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));

    auto* eig = app.add_subcommand("eigenvalues", "spectrum of the conformal operator with multiplicities");
    eig->fallthrough();
    eig->add_option("--kmax", kmax, "largest eigenvalue index");
    eig->add_option("--format", format, "table | json | csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));

    ScanOptions scan;
    auto* deficit_scan = app.add_subcommand("deficit-scan", "stability-ratio scan as JSON lines");
    deficit_scan->fallthrough();
    add_scan_options(deficit_scan, scan);

    auto* alpha = app.add_subcommand("alpha-estimate", "minimum stability ratio over a seeded scan");
    alpha->fallthrough();
    add_scan_options(alpha, scan);

    std::vector<std::string> profiles;
    auto* verify = app.add_subcommand("verify-theorem2", "weak-norm remainder check on radial profiles");
    verify->fallthrough();
    verify->add_option("--profile", profiles, "profile grammar name:param,... (repeatable)");

    std::string profile;
    std::vector<double> manifold;
    int harmonic = -1;
    auto* exporter = app.add_subcommand("export-function", "zonal coefficients as JSON {N, s, K, coeffs}");
    exporter->fallthrough();
    exporter->add_option("--profile", profile, "radial profile pulled back to the sphere");
    exporter->add_option("--manifold", manifold, "axial extremizer c,t0")->delimiter(',');
    exporter->add_option("--harmonic", harmonic, "normalized zonal harmonic e_k");

    std::vector<const char*> argv{"sobolev"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try
    {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (const CLI::CallForHelp&)
    {
        out << app.help();
        return kSuccess;
    }
    catch (const CLI::ParseError& e)
    {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }

    if (verify->parsed() && common.K_opt->count() == 0)
        common.K = 512;

    std::ofstream file;
    if (!common.output.empty())
    {
        file.open(common.output);
        if (!file)
        {
            err << "cannot open output file '" << common.output << "'\n";
            return kUsage;
        }
    }
    std::ostream& sink = common.output.empty() ? out : file;

    try
    {
        SobolevParams(common.N, common.s);
        if (common.K < 2)
            throw UsageError("K must be >= 2");
        if (common.M != 0 && common.M < common.K + 1)
            throw UsageError("M must be >= K + 1");
        if (constants->parsed())
            return cmd_constants(common, kmax, format.empty() ? "table" : format, sink, err);
        if (eig->parsed())
            return cmd_eigenvalues(common, kmax, format.empty() ? "table" : format, sink, err);
        if (deficit_scan->parsed())
            return cmd_deficit_scan(common, scan, sink, err);
        if (alpha->parsed())
            return cmd_alpha_estimate(common, scan, sink, err);
        if (verify->parsed())
            return cmd_verify_theorem2(common, profiles, sink, err);
        if (exporter->parsed())
            return cmd_export_function(common, profile, manifold, harmonic, sink, err);
    }
    catch (const UsageError& e)
    {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }
    catch (const DomainError& e)
    {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }
    catch (const TruncationError& e)
    {
        err << "numerical refusal: " << e.what() << "\n";
        return kRefusal;
    }
    catch (const ConvergenceError& e)
    {
        err << "numerical refusal: " << e.what() << " (best t0 " << fmt(e.best_x()) << ")\n";
        return kRefusal;
    }
    catch (const OnManifoldError& e)
    {
        err << "numerical refusal: " << e.what() << "\n";
        return kRefusal;
    }
    catch (const ViolationError& e)
    {
        err << "invariant violation: " << e.what() << "\n";
        return kViolation;
    }
    catch (const std::exception& e)
    {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kUsage;
}

} // namespace sobolev::cli
