#include <jcqt/output.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>

namespace jcqt {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss(line);
    while (std::getline(ss, item, sep)) out.push_back(item);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    return os;
}

void finish(std::ofstream& os, const std::filesystem::path& path) {
    os.flush();
    if (!os) throw IoError("write failed for " + path.string());
}

}  // namespace

void write_csv(const SweepResult& result, std::ostream& os) {
    for (const auto& c : result.comments) os << "# " << c << '\n';
    for (std::size_t i = 0; i < result.columns.size(); ++i)
        os << (i ? "," : "") << result.columns[i];
    os << '\n';
    os << std::setprecision(17);
    for (const auto& row : result.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << '\n';
    }
}

void emit_csv(const SweepResult& result, const std::filesystem::path& path) {
    auto os = open_for_write(path);
    write_csv(result, os);
    finish(os, path);
}

SweepResult parse_csv(std::istream& is) {
    SweepResult r;
    std::string line;
    bool have_header = false;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!have_header && !line.empty() && line[0] == '#') {
            r.comments.push_back(line.rfind("# ", 0) == 0 ? line.substr(2) : line.substr(1));
            continue;
        }
        if (!have_header) {
            r.columns = split(line, ',');
            have_header = true;
            continue;
        }
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != r.columns.size())
            throw ValidationError("csv line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(r.columns.size()) + " fields, got " +
                                  std::to_string(cells.size()));
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) row.push_back(parse_real(c));
        r.rows.push_back(std::move(row));
    }
    if (!have_header) throw ValidationError("csv: missing header row");
    return r;
}

SweepResult read_csv(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path.string() + " for reading");
    return parse_csv(is);
}

void write_plot_script(const SweepResult& result, const std::string& csv_ref,
                       const std::string& title, std::ostream& os) {
    static const char* const kDash[] = {"1", "2", "3", "4"};
    static const char* const kDashName[] = {"solid", "dash", "dot", "dash-dot"};
    os << "# gnuplot script, data in " << csv_ref << "\n";
    os << "set datafile separator ','\n";
    os << "set datafile commentschars '#'\n";
    os << "set key autotitle columnhead\n";
    if (!title.empty()) os << "set title '" << title << "'\n";
    os << "set xlabel 'tau'\n";
    os << "set ylabel '" << result.y_label << "'\n";
    for (std::size_t s = 0; s < result.plot_columns.size(); ++s)
        os << "# curve " << s + 1 << " (" << kDashName[s % 4] << "): " << result.series_labels[s] << "\n";
    os << "plot";
    for (std::size_t s = 0; s < result.plot_columns.size(); ++s) {
        const std::size_t style = s % 4;
        os << (s ? ", \\\n    " : " ") << "'" << csv_ref << "' using 1:" << result.plot_columns[s] + 1
           << " with lines dt " << kDash[style] << " lw 2 title '" << result.series_labels[s] << "'";
    }
    os << "\n";
}

void emit_plot_script(const SweepResult& result, const std::filesystem::path& script_path,
                      const std::filesystem::path& csv_path, const std::string& title) {
    if (result.rows.empty() || result.plot_columns.empty())
        throw ValidationError("emit_plot_script: nothing to plot");
    const auto base = script_path.has_parent_path() ? script_path.parent_path()
                                                    : std::filesystem::path(".");
    std::error_code ec;
    auto rel = std::filesystem::relative(csv_path, base, ec);
    if (ec || rel.empty()) rel = csv_path;
    auto os = open_for_write(script_path);
    write_plot_script(result, rel.generic_string(), title, os);
    finish(os, script_path);
}

}  // namespace jcqt
