// micropolar: spectral Galerkin runs for 2D thermomicropolar convection in a
// periodic channel, with energy-inequality monitors along every trajectory.

#include <micropolar/config.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace micropolar;

namespace {

constexpr const char* kVersion = "1.0.0";

struct CliOpts {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir;
    std::int64_t seed = -1;  // <0: keep config value
    std::string ledger_path;
};

void add_common(CLI::App* sub, CliOpts& o) {
    sub->add_option("--config", o.config_path, "JSON run configuration")
        ->check(CLI::ExistingFile);
    sub->add_option("--override", o.overrides, "dotted.key=value config override (repeatable)");
    sub->add_option("--out", o.out_dir, "output directory (overrides config out_dir)");
    sub->add_option("--seed", o.seed, "RNG seed (overrides config seed)");
}

RunConfig load_config(const CliOpts& o) {
    // without --config the built-in defaults apply (the documented table)
    RunConfig cfg = o.config_path.empty() ? RunConfig{} : parse_config_file(o.config_path);
    for (const auto& kv : o.overrides) apply_override(cfg, kv);
    if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
    if (o.seed >= 0) cfg.seed = static_cast<std::uint64_t>(o.seed);
    if (!o.ledger_path.empty()) cfg.experiment.ledger = o.ledger_path;
    cfg.validate();
    cfg.resolution.finalize();
    return cfg;
}

void write_manifest(const RunConfig& cfg, const std::string& subcommand) {
    nlohmann::ordered_json m;
    m["subcommand"] = subcommand;
    m["config"] = nlohmann::ordered_json::parse(config_json(cfg));
    m["versions"] = {{"micropolar", kVersion},
                     {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                   std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                   std::to_string(EIGEN_MINOR_VERSION)},
                     {"config_format", 1}};
    m["seed"] = cfg.seed;
    std::ofstream out(fs::path(cfg.out_dir) / "run_manifest.json");
    out << m.dump(2) << "\n";
}

void prepare_out(const RunConfig& cfg, const std::string& subcommand) {
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec) throw ConfigError("out_dir: cannot create \"" + cfg.out_dir + "\": " + ec.message());
    write_manifest(cfg, subcommand);
}

/// Caps for the constants feeding the strong monitor inside `simulate`; the
/// dedicated `constants` subcommand always uses the configured resolution.
Resolution monitor_resolution(const RunConfig& cfg) {
    Resolution r = cfg.resolution;
    r.Nx = std::min(r.Nx, 12);
    r.My = std::min(r.My, 12);
    r.Jy = std::min(r.Jy, 12);
    r.quad_x = r.quad_y = 0;
    r.finalize();
    return r;
}

int run_simulate(const RunConfig& cfg) {
    prepare_out(cfg, "simulate");
    ScalarBasis sb(cfg.domain, cfg.resolution);
    SolenoidalBasis vb(cfg.domain, cfg.resolution);
    DealiasPlan plan(sb, vb);
    Couplings coup(vb, sb);

    State s;
    Stepper st(plan, coup, cfg.params, cfg.stepper);
    if (!cfg.initial.checkpoint.empty()) {
        Checkpoint ck = read_checkpoint(cfg.initial.checkpoint);
        s = restore_state(ck, plan);
        if (ck.has_history && ck.scheme == cfg.stepper.scheme) restore_history(ck, st);
    } else {
        s = preset_state(plan, cfg.initial.preset, cfg.seed);
    }

    EnergyLedger led = simulate(st, s);
    {
        std::ofstream out(fs::path(cfg.out_dir) / "ledger.csv");
        led.write_csv(out);
    }
    write_checkpoint((fs::path(cfg.out_dir) / "final.chk").string(), s, cfg.params, &st);

    InequalityReport weak = check_gronwall_weak(led, cfg.params, 1e-6, cfg.stepper.dt);
    KConstants kc = estimate_all_constants(cfg.experiment.trials, monitor_resolution(cfg),
                                           cfg.domain, cfg.seed);
    InequalityReport strong = check_strong_differential(led, cfg.params, kc);
    {
        std::ofstream out(fs::path(cfg.out_dir) / "inequality_report.txt");
        weak.write_text(out);
        strong.write_text(out);
    }
    weak.write_text(std::cout);
    strong.write_text(std::cout);
    const bool ok = weak.all_pass() && strong.all_pass();
    std::cout << (ok ? "asserted monitors: pass" : "asserted monitors: FAIL") << "\n";
    return ok ? 0 : 1;
}

int run_verify(const RunConfig& cfg) {
    if (cfg.experiment.ledger.empty())
        throw ConfigError("experiment.ledger: required for verify (or pass --ledger)");
    prepare_out(cfg, "verify");
    EnergyLedger led = EnergyLedger::read_csv_file(cfg.experiment.ledger);
    InequalityReport weak = check_gronwall_weak(led, cfg.params);
    KConstants kc = estimate_all_constants(cfg.experiment.trials, monitor_resolution(cfg),
                                           cfg.domain, cfg.seed);
    InequalityReport strong = check_strong_differential(led, cfg.params, kc);
    {
        std::ofstream out(fs::path(cfg.out_dir) / "inequality_report.txt");
        weak.write_text(out);
        strong.write_text(out);
    }
    weak.write_text(std::cout);
    strong.write_text(std::cout);
    const bool ok = weak.all_pass() && strong.all_pass();
    std::cout << (ok ? "asserted monitors: pass" : "asserted monitors: FAIL") << "\n";
    return ok ? 0 : 1;
}

int run_constants(const RunConfig& cfg) {
    prepare_out(cfg, "constants");
    std::ofstream out(fs::path(cfg.out_dir) / "constants.txt");
    for (const char* name : {"k1", "k2", "k3", "k4", "k5", "k6", "k7"}) {
        ConstantEstimate e =
            estimate_constant(name, cfg.experiment.trials, cfg.resolution, cfg.domain, cfg.seed);
        std::ostringstream line;
        line.precision(17);
        line << "name=" << e.name << " value=" << e.value;
        if (e.reference) line << " reference=" << *e.reference << " alignment_v1=" << e.alignment_v1;
        line << " trials=" << e.trials << " maximizer=\"" << e.maximizer << "\"";
        out << line.str() << "\n";
        std::cout << line.str() << "\n";
    }
    return 0;
}

int run_depend(const RunConfig& cfg) {
    prepare_out(cfg, "depend");
    ScalarBasis sb(cfg.domain, cfg.resolution);
    SolenoidalBasis vb(cfg.domain, cfg.resolution);
    DealiasPlan plan(sb, vb);
    Couplings coup(vb, sb);
    State s0 = preset_state(plan, cfg.initial.preset, cfg.seed);
    std::ofstream out(fs::path(cfg.out_dir) / "depend.txt");
    for (size_t i = 0; i < cfg.experiment.deltas.size(); ++i) {
        DependenceReport rep = continuous_dependence_experiment(
            plan, coup, s0, cfg.experiment.deltas[i], cfg.params, cfg.stepper, cfg.seed + 1);
        rep.write_text(out);
        rep.write_text(std::cout);
        std::ofstream csv(fs::path(cfg.out_dir) / ("depend_" + std::to_string(i) + ".csv"));
        rep.write_csv(csv);
    }
    return 0;
}

int run_converge(const RunConfig& cfg) {
    prepare_out(cfg, "converge");
    ConvergenceReport rep =
        galerkin_convergence_study(cfg.initial.preset, cfg.params, cfg.stepper, cfg.domain,
                                   cfg.experiment.resolutions, cfg.seed);
    {
        std::ofstream out(fs::path(cfg.out_dir) / "converge.txt");
        rep.write_text(out);
        std::ofstream csv(fs::path(cfg.out_dir) / "converge.csv");
        rep.write_csv(csv);
    }
    rep.write_text(std::cout);
    return 0;
}

int run_basis(const RunConfig& cfg) {
    prepare_out(cfg, "basis");
    ScalarBasis sb(cfg.domain, cfg.resolution);
    SolenoidalBasis vb(cfg.domain, cfg.resolution);
    std::ostringstream os;
    os.precision(17);
    os << "domain l=" << cfg.domain.l << "\n";
    os << "scalar modes (index n m beta):\n";
    for (Index i = 0; i < sb.size(); ++i) {
        const auto& md = sb.modes()[i];
        os << i << " " << md.n << " " << md.m << " " << md.beta << "\n";
    }
    os << "beam roots (j lambda):\n";
    for (Index j = 0; j < vb.lambda().size(); ++j)
        os << j + 1 << " " << vb.lambda()[j] << "\n";
    os << "velocity blocks (n k stokes_eigen_min stokes_eigen_max):\n";
    for (int n = -cfg.resolution.Nx; n <= cfg.resolution.Nx; ++n) {
        Eigen::GeneralizedSelfAdjointEigenSolver<Mat> eig(vb.stiffness(n), vb.mass(n));
        os << n << " " << vb.k(n) << " " << eig.eigenvalues().minCoeff() << " "
           << eig.eigenvalues().maxCoeff() << "\n";
    }
    std::ofstream out(fs::path(cfg.out_dir) / "basis_manifest.txt");
    out << os.str();
    std::cout << os.str();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* th = std::getenv("MICROPOLAR_THREADS")) {
        const int n = std::atoi(th);
        if (n > 0) Eigen::setNbThreads(n);
    }

    CLI::App app{"spectral Galerkin simulator for 2D thermomicropolar convection"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    CliOpts opts;
    CLI::App* sim = app.add_subcommand("simulate", "advance a trajectory and run the monitors");
    CLI::App* ver = app.add_subcommand("verify", "run the monitors on an existing ledger CSV");
    CLI::App* con = app.add_subcommand("constants", "estimate the embedding constants k1..k7");
    CLI::App* dep = app.add_subcommand("depend", "paired-trajectory continuous dependence");
    CLI::App* cvg = app.add_subcommand("converge", "Galerkin truncation study");
    CLI::App* bas = app.add_subcommand("basis", "dump the basis manifest");
    for (CLI::App* sub : {sim, ver, con, dep, cvg, bas}) add_common(sub, opts);
    ver->add_option("--ledger", opts.ledger_path, "ledger CSV to verify");

    CLI11_PARSE(app, argc, argv);

    try {
        const RunConfig cfg = load_config(opts);
        if (sim->parsed()) return run_simulate(cfg);
        if (ver->parsed()) return run_verify(cfg);
        if (con->parsed()) return run_constants(cfg);
        if (dep->parsed()) return run_depend(cfg);
        if (cvg->parsed()) return run_converge(cfg);
        if (bas->parsed()) return run_basis(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
