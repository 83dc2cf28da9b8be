// Command-line front end: channel dumps, fidelity and QFI sweeps, figure
// presets and the self-test.
//
// Exit codes: 0 success, 1 validation error, 2 numeric failure, 3 I/O.

#include <jcqt/config.hpp>
#include <jcqt/output.hpp>
#include <jcqt/presets.hpp>
#include <jcqt/selftest.hpp>
#include <jcqt/sweep.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>

namespace {

using namespace jcqt;

enum ExitCode : int { kOk = 0, kValidation = 1, kNumeric = 2, kIo = 3 };

/// Raw option text; applied over config-file values after parsing.
struct SweepFlags {
    std::string config;
    std::string protocol, quantity, construction, mode, engine, derivative;
    std::string nbar, delta, theta, phi;
    std::optional<int> n, tau_count;
    std::optional<double> tau_start, tau_stop, fd_step;
    bool richardson = false;
    std::string output, plot;
};

void add_common(CLI::App* cmd, SweepFlags& f) {
    cmd->add_option("--config", f.config, "key=value parameter file; flags override it");
    cmd->add_option("--n", f.n, "Fock reference index");
    cmd->add_option("--nbar", f.nbar, "mean photon number(s), comma-separated");
    cmd->add_option("--delta", f.delta, "detuning(s), comma-separated");
    cmd->add_option("--theta", f.theta, "input angle theta (accepts pi/4 style)");
    cmd->add_option("--phi", f.phi, "input phase phi (accepts pi/4 style)");
    cmd->add_option("--tau-start", f.tau_start, "first tau");
    cmd->add_option("--tau-stop", f.tau_stop, "last tau");
    cmd->add_option("--tau-count", f.tau_count, "number of tau points (>= 2)");
    cmd->add_option("-o,--output", f.output, "CSV output path (default: stdout)");
    cmd->add_option("--plot", f.plot, "also write a gnuplot script here (needs --output)");
}

SweepSpec resolve(const SweepFlags& f, SweepSpec spec) {
    if (!f.config.empty()) apply_config(load_config(f.config), spec);
    if (!f.protocol.empty()) spec.protocol = parse_protocol(f.protocol);
    if (!f.quantity.empty()) spec.quantity = parse_quantity(f.quantity);
    if (!f.construction.empty()) spec.construction = parse_construction(f.construction);
    if (!f.mode.empty()) spec.mode = parse_mode(f.mode);
    if (!f.engine.empty()) spec.qfi.engine = parse_engine(f.engine);
    if (!f.derivative.empty()) spec.qfi.derivative = parse_derivative(f.derivative);
    if (f.fd_step) spec.qfi.fd.h = *f.fd_step;
    if (f.richardson) spec.qfi.fd.richardson = true;
    if (!f.nbar.empty()) spec.nbar = parse_real_list(f.nbar);
    if (!f.delta.empty()) spec.delta = parse_real_list(f.delta);
    if (!f.theta.empty()) spec.input.theta = parse_angle(f.theta);
    if (!f.phi.empty()) spec.input.phi = parse_angle(f.phi);
    if (f.n) spec.n = *f.n;
    if (f.tau_start) spec.tau.start = *f.tau_start;
    if (f.tau_stop) spec.tau.stop = *f.tau_stop;
    if (f.tau_count) spec.tau.count = *f.tau_count;
    return spec;
}

std::string output_from_config(const SweepFlags& f, const std::string& key) {
    if (f.config.empty()) return {};
    const auto cfg = load_config(f.config);
    const auto it = cfg.find(key);
    return it == cfg.end() ? std::string{} : it->second;
}

void write(const SweepResult& result, const SweepFlags& f, const std::string& title) {
    std::string out = f.output.empty() ? output_from_config(f, "output.csv") : f.output;
    std::string plot = f.plot.empty() ? output_from_config(f, "output.plot") : f.plot;
    if (out.empty()) {
        if (!plot.empty()) throw ValidationError("--plot needs --output");
        write_csv(result, std::cout);
        return;
    }
    emit_csv(result, out);
    if (!plot.empty()) emit_plot_script(result, plot, out, title);
}

int run_figures(const std::vector<std::string>& ids, const std::string& out_dir,
                const SweepFlags& f) {
    std::vector<const FigurePreset*> todo;
    if (ids.size() == 1 && ids[0] == "all") {
        for (const auto& p : figure_presets()) todo.push_back(&p);
    } else {
        for (const auto& id : ids) todo.push_back(&find_preset(id));
    }
    for (const auto* preset : todo) {
        const SweepSpec spec = resolve(f, preset->spec);
        SweepResult result = run_sweep(spec);
        result.comments.insert(result.comments.begin(),
                               "preset " + preset->id + ": " + preset->description);
        result.comments.push_back("tau window [" + format_number(spec.tau.start) + ", " +
                                  format_number(spec.tau.stop) + "], " +
                                  std::to_string(spec.tau.count) + " points");
        const std::filesystem::path csv = std::filesystem::path(out_dir) / (preset->id + ".csv");
        const std::filesystem::path gp = std::filesystem::path(out_dir) / (preset->id + ".gp");
        emit_csv(result, csv);
        emit_plot_script(result, gp, csv, preset->id + ": " + preset->description);
        std::cout << csv.string() << '\n';
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Jaynes-Cummings channel teleportation: fidelity and quantum Fisher information"};
    app.require_subcommand(1);

    SweepFlags channel_flags;
    auto* channel = app.add_subcommand("channel", "dump channel coefficients over a tau grid");
    add_common(channel, channel_flags);

    SweepFlags teleport_flags;
    auto* teleport = app.add_subcommand("teleport", "fidelity sweep over a tau grid");
    add_common(teleport, teleport_flags);
    teleport->add_option("--protocol", teleport_flags.protocol, "ftp|stp");
    teleport->add_option("--mode", teleport_flags.mode, "hermitian|literal (channel oracle only)");
    teleport->add_option("--construction", teleport_flags.construction, "closed|oracle");
    teleport->add_option("--quantity", teleport_flags.quantity,
                         "curve to plot: fidelity_norm|fidelity_closed");

    SweepFlags qfi_flags;
    auto* qfi = app.add_subcommand("qfi", "QFI(theta) sweep over a tau grid");
    add_common(qfi, qfi_flags);
    qfi->add_option("--protocol", qfi_flags.protocol, "ftp|stp");
    qfi->add_option("--engine", qfi_flags.engine, "matrix|eq7|sld");
    qfi->add_option("--derivative", qfi_flags.derivative, "analytic|fd");
    qfi->add_option("--fd-step", qfi_flags.fd_step, "finite-difference step (default 1e-5)");
    qfi->add_flag("--richardson", qfi_flags.richardson, "fourth-order finite differences");

    SweepFlags figure_flags;
    std::vector<std::string> figure_ids;
    std::string out_dir = "figures";
    auto* figure = app.add_subcommand("figure", "run figure presets, writing CSV and gnuplot script");
    figure->add_option("id", figure_ids, "fig1a .. fig10c, or 'all'")->required();
    figure->add_option("--out-dir", out_dir, "output directory");
    figure->add_option("--tau-stop", figure_flags.tau_stop, "override the tau window end");
    figure->add_option("--tau-count", figure_flags.tau_count, "override the tau point count");

    auto* list = app.add_subcommand("presets", "list figure presets");
    auto* selftest = app.add_subcommand("selftest", "run the invariant and oracle cross-checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kValidation;
    }

    try {
        if (*channel) {
            write(run_channel_dump(resolve(channel_flags, {})), channel_flags, "channel coefficients");
        } else if (*teleport) {
            SweepSpec base;
            base.quantity = Quantity::FIDELITY_OVERLAP_NORM;
            write(run_sweep(resolve(teleport_flags, base)), teleport_flags, "fidelity");
        } else if (*qfi) {
            SweepSpec base;
            base.quantity = Quantity::QFI_THETA;
            SweepSpec spec = resolve(qfi_flags, base);
            spec.quantity = Quantity::QFI_THETA;
            write(run_sweep(spec), qfi_flags, "QFI(theta)");
        } else if (*figure) {
            return run_figures(figure_ids, out_dir, figure_flags);
        } else if (*list) {
            for (const auto& p : figure_presets()) std::cout << p.id << "  " << p.description << '\n';
        } else if (*selftest) {
            const auto report = run_self_test();
            print_report(report, std::cout);
            return report.all_passed() ? kOk : kNumeric;
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return kNumeric;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kIo;
    }
    return kOk;
}
