#include <jcqt/sweep.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <future>
#include <regex>
#include <sstream>

namespace jcqt {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::string grid_point(const SeriesPoint& sp, double tau) {
    return "at nbar=" + format_number(sp.nbar) + " delta=" + format_number(sp.delta) +
           " tau=" + format_number(tau) + ": ";
}

// Re-raise a library error with grid-point context, preserving its category.
template <typename Fn>
auto with_context(const std::string& where, Fn&& fn) {
    try {
        return fn();
    } catch (const ValidationError& e) {
        throw ValidationError(where + e.what());
    } catch (const NumericError& e) {
        throw NumericError(where + e.what());
    }
}

// Evaluates every series concurrently; each task owns its own columns.
template <typename Fn>
std::vector<std::vector<std::vector<double>>> evaluate_series(const std::vector<SeriesPoint>& series,
                                                              Fn&& per_series) {
    std::vector<std::future<std::vector<std::vector<double>>>> tasks;
    tasks.reserve(series.size());
    for (const auto& sp : series)
        tasks.push_back(std::async(std::launch::async, [&per_series, sp] { return per_series(sp); }));
    std::vector<std::vector<std::vector<double>>> out;
    out.reserve(tasks.size());
    for (auto& t : tasks) out.push_back(t.get());
    return out;
}

// series_columns[s][row] holds that series' values for the row.
void assemble(SweepResult& r, const std::vector<double>& taus,
              const std::vector<std::vector<std::vector<double>>>& series_columns) {
    r.rows.assign(taus.size(), {});
    for (std::size_t i = 0; i < taus.size(); ++i) {
        auto& row = r.rows[i];
        row.push_back(taus[i]);
        for (const auto& s : series_columns)
            row.insert(row.end(), s[i].begin(), s[i].end());
        for (double v : row)
            if (!std::isfinite(v))
                throw NumericError("sweep: non-finite value in row tau=" + format_number(taus[i]));
    }
}

}  // namespace

void validate(const SweepSpec& spec) {
    if (spec.tau.count < 2)
        throw ValidationError("sweep: tau count must be >= 2, got " + std::to_string(spec.tau.count));
    if (!std::isfinite(spec.tau.start) || !std::isfinite(spec.tau.stop) ||
        !(spec.tau.start < spec.tau.stop))
        throw ValidationError("sweep: tau start must be < stop");
    if (spec.tau.start < 0) throw ValidationError("sweep: tau start must be >= 0");
    if (spec.nbar.empty()) throw ValidationError("sweep: nbar list is empty");
    if (spec.delta.empty()) throw ValidationError("sweep: delta list is empty");
    if (spec.n < 0) throw ValidationError("sweep: n must be >= 0");
    for (double nb : spec.nbar)
        if (!std::isfinite(nb) || nb < 0) throw ValidationError("sweep: nbar must be >= 0");
    for (double d : spec.delta)
        if (!std::isfinite(d)) throw ValidationError("sweep: delta must be finite");
    validate(spec.input);
    if (spec.protocol == Protocol::STP && spec.construction == Construction::CHANNEL_ORACLE)
        throw ValidationError("sweep: the two-copy protocol has no channel oracle");
    if (spec.quantity == Quantity::QFI_THETA && spec.construction != Construction::CLOSED_FORM)
        throw ValidationError("sweep: QFI is defined on the closed-form Bob state only");
}

std::vector<double> tau_values(const TauGrid& grid) {
    std::vector<double> taus(static_cast<std::size_t>(grid.count));
    const double step = (grid.stop - grid.start) / (grid.count - 1);
    for (int i = 0; i < grid.count; ++i) taus[static_cast<std::size_t>(i)] = grid.start + i * step;
    taus.back() = grid.stop;
    return taus;
}

std::vector<SeriesPoint> series_of(const SweepSpec& spec) {
    const bool vary_nbar = spec.nbar.size() > 1;
    const bool vary_delta = spec.delta.size() > 1;
    std::vector<SeriesPoint> out;
    for (double nb : spec.nbar)
        for (double d : spec.delta) {
            std::string label;
            if (vary_nbar || !vary_delta) label = "nbar=" + format_number(nb);
            if (vary_delta) label += (label.empty() ? "" : " ") + std::string("delta=") + format_number(d);
            out.push_back({nb, d, label});
        }
    return out;
}

SweepResult run_sweep(const SweepSpec& spec) {
    validate(spec);
    const auto taus = tau_values(spec.tau);
    const auto series = series_of(spec);
    const bool fidelity = spec.quantity != Quantity::QFI_THETA;

    SweepResult r;
    r.comments.push_back(describe(spec));
    r.columns.push_back("tau");
    for (const auto& sp : series) {
        r.series_labels.push_back(sp.label);
        if (fidelity) {
            r.columns.push_back("F_raw(" + sp.label + ")");
            r.columns.push_back("F_norm(" + sp.label + ")");
            r.plot_columns.push_back(r.columns.size() -
                                     (spec.quantity == Quantity::FIDELITY_CLOSED ? 2 : 1));
        } else {
            r.columns.push_back("QFI(" + sp.label + ")");
            r.plot_columns.push_back(r.columns.size() - 1);
        }
    }
    r.y_label = spec.quantity == Quantity::FIDELITY_CLOSED        ? "F_raw"
                : spec.quantity == Quantity::FIDELITY_OVERLAP_NORM ? "F_norm"
                                                                   : "QFI_theta";

    auto per_series = [&spec, &taus, fidelity](const SeriesPoint& sp) {
        std::vector<std::vector<double>> values;
        values.reserve(taus.size());
        for (double tau : taus) {
            values.push_back(with_context(grid_point(sp, tau), [&]() -> std::vector<double> {
                const auto a = alpha_set<double>({spec.n, sp.nbar, sp.delta, tau});
                if (!fidelity)
                    return {teleported_qfi_result(spec.protocol, a, spec.input, spec.qfi).value};
                if (spec.protocol == Protocol::STP) {
                    const auto bob = bob_state_stp(a, spec.input);
                    return {fidelity_closed_stp(a, spec.input), fidelity_overlap(bob.rho, spec.input)};
                }
                const auto bob = bob_state_ftp(a, spec.input, spec.construction, spec.mode);
                const double norm = fidelity_overlap(bob.rho, spec.input);
                const double raw = spec.construction == Construction::CLOSED_FORM
                                       ? fidelity_closed_ftp(a, spec.input)
                                       : norm * bob.raw_trace;
                return {raw, norm};
            }));
        }
        return values;
    };
    assemble(r, taus, evaluate_series(series, per_series));
    return r;
}

SweepResult run_channel_dump(const SweepSpec& spec) {
    validate(spec);
    const auto taus = tau_values(spec.tau);
    const auto series = series_of(spec);

    SweepResult r;
    r.comments.push_back("channel coefficients, n=" + std::to_string(spec.n) + ", tau=[" +
                         format_number(spec.tau.start) + "," + format_number(spec.tau.stop) +
                         "] count=" + std::to_string(spec.tau.count));
    r.columns.push_back("tau");
    for (const auto& sp : series) {
        r.series_labels.push_back(sp.label);
        for (const char* name : {"a1", "a2", "a3_re", "a3_im", "a4", "a5", "log_norm"})
            r.columns.push_back(std::string(name) + "(" + sp.label + ")");
        r.plot_columns.push_back(r.columns.size() - 3);  // a4, the |n+1,g> population
    }
    r.y_label = "a4";

    auto per_series = [&spec, &taus](const SeriesPoint& sp) {
        std::vector<std::vector<double>> values;
        for (double tau : taus)
            values.push_back(with_context(grid_point(sp, tau), [&]() -> std::vector<double> {
                const auto a = alpha_set<double>({spec.n, sp.nbar, sp.delta, tau});
                return {a.a1, a.a2, a.a3.real(), a.a3.imag(), a.a4, a.a5, a.log_norm};
            }));
        return values;
    };
    assemble(r, taus, evaluate_series(series, per_series));
    return r;
}

std::string describe(const SweepSpec& spec) {
    std::ostringstream os;
    os << "protocol=" << to_string(spec.protocol) << " quantity=" << to_string(spec.quantity)
       << " n=" << spec.n << " theta=" << format_number(spec.input.theta)
       << " phi=" << format_number(spec.input.phi) << " tau=[" << format_number(spec.tau.start)
       << "," << format_number(spec.tau.stop) << "] count=" << spec.tau.count;
    if (spec.quantity == Quantity::QFI_THETA)
        os << " engine=" << to_string(spec.qfi.engine)
           << " derivative=" << to_string(spec.qfi.derivative);
    else
        os << " construction=" << to_string(spec.construction) << " mode=" << to_string(spec.mode);
    return os.str();
}

const char* to_string(Quantity q) {
    switch (q) {
        case Quantity::FIDELITY_CLOSED: return "fidelity_closed";
        case Quantity::FIDELITY_OVERLAP_NORM: return "fidelity_norm";
        case Quantity::QFI_THETA: return "qfi_theta";
    }
    return "?";
}

const char* to_string(QfiEngine e) {
    switch (e) {
        case QfiEngine::MATRIX_FORM: return "matrix";
        case QfiEngine::SPECTRAL_EQ7: return "eq7";
        case QfiEngine::SLD: return "sld";
    }
    return "?";
}

const char* to_string(DerivativeMethod d) { return d == DerivativeMethod::ANALYTIC ? "analytic" : "fd"; }
const char* to_string(ChannelMode m) { return m == ChannelMode::HERMITIAN ? "hermitian" : "literal"; }
const char* to_string(Construction c) {
    return c == Construction::CLOSED_FORM ? "closed" : "oracle";
}

Protocol parse_protocol(const std::string& s) {
    const auto v = lower(s);
    if (v == "ftp") return Protocol::FTP;
    if (v == "stp") return Protocol::STP;
    throw ValidationError("unknown protocol '" + s + "' (ftp|stp)");
}

Quantity parse_quantity(const std::string& s) {
    const auto v = lower(s);
    if (v == "fidelity_closed" || v == "raw") return Quantity::FIDELITY_CLOSED;
    if (v == "fidelity_norm" || v == "norm") return Quantity::FIDELITY_OVERLAP_NORM;
    if (v == "qfi_theta" || v == "qfi") return Quantity::QFI_THETA;
    throw ValidationError("unknown quantity '" + s + "' (fidelity_closed|fidelity_norm|qfi_theta)");
}

QfiEngine parse_engine(const std::string& s) {
    const auto v = lower(s);
    if (v == "matrix") return QfiEngine::MATRIX_FORM;
    if (v == "eq7") return QfiEngine::SPECTRAL_EQ7;
    if (v == "sld") return QfiEngine::SLD;
    throw ValidationError("unknown engine '" + s + "' (matrix|eq7|sld)");
}

DerivativeMethod parse_derivative(const std::string& s) {
    const auto v = lower(s);
    if (v == "analytic") return DerivativeMethod::ANALYTIC;
    if (v == "fd") return DerivativeMethod::FD;
    throw ValidationError("unknown derivative '" + s + "' (analytic|fd)");
}

ChannelMode parse_mode(const std::string& s) {
    const auto v = lower(s);
    if (v == "hermitian") return ChannelMode::HERMITIAN;
    if (v == "literal") return ChannelMode::LITERAL;
    throw ValidationError("unknown mode '" + s + "' (hermitian|literal)");
}

Construction parse_construction(const std::string& s) {
    const auto v = lower(s);
    if (v == "closed") return Construction::CLOSED_FORM;
    if (v == "oracle") return Construction::CHANNEL_ORACLE;
    throw ValidationError("unknown construction '" + s + "' (closed|oracle)");
}

double parse_real(const std::string& s) {
    const auto first = s.find_first_not_of(" \t");
    const auto last = s.find_last_not_of(" \t");
    if (first == std::string::npos) throw ValidationError("expected a number, got empty string");
    const std::string t = s.substr(first, last - first + 1);
    double v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(v))
        throw ValidationError("expected a number, got '" + s + "'");
    return v;
}

double parse_angle(const std::string& s) {
    static const std::regex pi_form(R"(^\s*([0-9.eE+-]*)\s*\*?\s*pi\s*(?:/\s*([0-9.eE+]+))?\s*$)",
                                    std::regex::icase);
    std::smatch m;
    if (!std::regex_match(s, m, pi_form)) return parse_real(s);
    double scale = 1.0;
    if (m[1].length() > 0) {
        const std::string coeff = m[1].str();
        scale = coeff == "-" ? -1.0 : coeff == "+" ? 1.0 : parse_real(coeff);
    }
    if (m[2].matched) {
        const double div = parse_real(m[2].str());
        if (div == 0) throw ValidationError("angle '" + s + "' divides by zero");
        scale /= div;
    }
    return scale * kPi;
}

std::vector<double> parse_real_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_real(item));
    if (out.empty()) throw ValidationError("expected a comma-separated list of numbers");
    return out;
}

std::string format_number(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return ec == std::errc{} ? std::string(buf, ptr) : std::to_string(x);
}

}  // namespace jcqt
