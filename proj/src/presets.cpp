#include <jcqt/presets.hpp>

#include <algorithm>

namespace jcqt {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Panel {
    char letter;
    double theta;
    const char* theta_text;
    Protocol protocol;
};

FigurePreset make(int figure, const Panel& panel, Quantity quantity, std::vector<double> nbar,
                  std::vector<double> delta, const std::string& what) {
    FigurePreset p;
    p.id = "fig" + std::to_string(figure) + panel.letter;
    p.spec.protocol = panel.protocol;
    p.spec.quantity = quantity;
    p.spec.n = 2;
    p.spec.nbar = std::move(nbar);
    p.spec.delta = std::move(delta);
    p.spec.input = {panel.theta, 0.0};
    p.spec.tau = {0.0, 20.0, 2000};
    p.description = what + ", " + to_string(panel.protocol) + ", theta=" + panel.theta_text;
    return p;
}

std::vector<FigurePreset> build() {
    // (a) theta = pi/4, (b) pi/2, (c) 0 for figures 1-8.
    const auto panels = [](Protocol protocol) {
        return std::vector<Panel>{{'a', kPi / 4, "pi/4", protocol},
                                  {'b', kPi / 2, "pi/2", protocol},
                                  {'c', 0.0, "0", protocol}};
    };
    const std::vector<double> resonant_nbar{2, 4, 6};
    const std::vector<double> detunings{0.1, 0.3, 0.5};

    std::vector<FigurePreset> out;
    const auto add_family = [&](int figure, Protocol protocol, Quantity quantity, bool resonant,
                                const std::string& what) {
        for (const auto& panel : panels(protocol)) {
            if (resonant)
                out.push_back(make(figure, panel, quantity, resonant_nbar, {0.0},
                                   what + ", resonance delta=0, nbar=2/4/6"));
            else
                out.push_back(make(figure, panel, quantity, {4.0}, detunings,
                                   what + ", nbar=4, delta=0.1/0.3/0.5"));
        }
    };
    add_family(1, Protocol::FTP, Quantity::FIDELITY_OVERLAP_NORM, true, "fidelity");
    add_family(2, Protocol::FTP, Quantity::FIDELITY_OVERLAP_NORM, false, "fidelity");
    add_family(3, Protocol::FTP, Quantity::QFI_THETA, true, "QFI(theta)");
    add_family(4, Protocol::FTP, Quantity::QFI_THETA, false, "QFI(theta)");
    add_family(5, Protocol::STP, Quantity::FIDELITY_OVERLAP_NORM, true, "fidelity");
    add_family(6, Protocol::STP, Quantity::FIDELITY_OVERLAP_NORM, false, "fidelity");
    add_family(7, Protocol::STP, Quantity::QFI_THETA, true, "QFI(theta)");
    add_family(8, Protocol::STP, Quantity::QFI_THETA, false, "QFI(theta)");

    // Large-nbar and small-detuning threshold panels: (a), (b) single copy,
    // (c) two copies.
    const std::vector<Panel> threshold_nbar{{'a', kPi / 2, "pi/2", Protocol::FTP},
                                            {'b', 0.0, "0", Protocol::FTP},
                                            {'c', kPi / 2, "pi/2", Protocol::STP}};
    for (const auto& panel : threshold_nbar)
        out.push_back(make(9, panel, Quantity::FIDELITY_OVERLAP_NORM, {1000, 800, 400, 100}, {0.0},
                           "fidelity, resonance delta=0, nbar=1000/800/400/100"));

    const std::vector<Panel> threshold_delta{{'a', kPi / 4, "pi/4", Protocol::FTP},
                                             {'b', 0.0, "0", Protocol::FTP},
                                             {'c', kPi / 4, "pi/4", Protocol::STP}};
    for (const auto& panel : threshold_delta)
        out.push_back(make(10, panel, Quantity::FIDELITY_OVERLAP_NORM, {4.0},
                           {0.001, 0.005, 0.02, 0.05},
                           "fidelity, nbar=4, delta=0.001/0.005/0.02/0.05"));
    return out;
}

}  // namespace

const std::vector<FigurePreset>& figure_presets() {
    static const std::vector<FigurePreset> presets = build();
    return presets;
}

const FigurePreset& find_preset(const std::string& id) {
    const auto& all = figure_presets();
    const auto it = std::find_if(all.begin(), all.end(), [&](const auto& p) { return p.id == id; });
    if (it == all.end()) throw ValidationError("unknown figure preset '" + id + "'");
    return *it;
}

}  // namespace jcqt
