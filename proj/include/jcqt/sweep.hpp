#pragma once

#include <jcqt/channel.hpp>
#include <jcqt/fisher.hpp>
#include <jcqt/teleport.hpp>

#include <string>
#include <vector>

namespace jcqt {

enum class Quantity { FIDELITY_CLOSED, FIDELITY_OVERLAP_NORM, QFI_THETA };

struct TauGrid {
    double start = 0.0;
    double stop = 20.0;
    int count = 2000;
};

/// One sweep: a tau grid crossed with every (nbar, delta) pair. Series run
/// nbar-major in declaration order.
struct SweepSpec {
    Protocol protocol = Protocol::FTP;
    Quantity quantity = Quantity::FIDELITY_OVERLAP_NORM;
    int n = 2;
    std::vector<double> nbar{2.0};
    std::vector<double> delta{0.0};
    TauGrid tau{};
    InputState input{};
    Construction construction = Construction::CLOSED_FORM;
    ChannelMode mode = ChannelMode::HERMITIAN;
    TeleportedQfiOptions qfi{};
};

void validate(const SweepSpec& spec);

/// Evenly spaced, both endpoints included.
std::vector<double> tau_values(const TauGrid& grid);

struct SeriesPoint {
    double nbar;
    double delta;
    std::string label;
};

std::vector<SeriesPoint> series_of(const SweepSpec& spec);

/// Tabular sweep output. `plot_columns` and `series_labels` are parallel:
/// the column to draw for each series.
struct SweepResult {
    std::vector<std::string> comments;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::size_t> plot_columns;
    std::vector<std::string> series_labels;
    std::string y_label;

    bool operator==(const SweepResult&) const = default;
};

/// Fidelity sweeps emit F_raw(label) and F_norm(label) per series; QFI
/// sweeps emit QFI(label). Rows are tau-ascending. Any library error is
/// rethrown with the offending grid point in the message.
SweepResult run_sweep(const SweepSpec& spec);

/// a1, a2, Re a3, Im a3, a4, a5, ln N per series over the tau grid.
SweepResult run_channel_dump(const SweepSpec& spec);

std::string describe(const SweepSpec& spec);

const char* to_string(Quantity q);
const char* to_string(QfiEngine e);
const char* to_string(DerivativeMethod d);
const char* to_string(ChannelMode m);
const char* to_string(Construction c);

Protocol parse_protocol(const std::string& s);
Quantity parse_quantity(const std::string& s);
QfiEngine parse_engine(const std::string& s);
DerivativeMethod parse_derivative(const std::string& s);
ChannelMode parse_mode(const std::string& s);
Construction parse_construction(const std::string& s);

/// Accepts plain reals and multiples of pi: "0.3", "pi", "pi/4", "3pi/2",
/// "0.5*pi".
double parse_angle(const std::string& s);
double parse_real(const std::string& s);
std::vector<double> parse_real_list(const std::string& s);

/// Shortest round-tripping text form, used in labels.
std::string format_number(double x);

}  // namespace jcqt
