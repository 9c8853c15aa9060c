#include "nslab/series_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "nslab/rational.hpp"

namespace nslab {

std::string format_exponent(double s) {
    if (s == std::numeric_limits<double>::infinity()) return "inf";
    std::int64_t num, den;
    if (as_small_rational(s, num, den)) {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
    return format_double(s);
}

double parse_exponent(const std::string& text) {
    if (text == "inf" || text == "Inf" || text == "INF") return std::numeric_limits<double>::infinity();
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const std::string num_s = text.substr(0, slash);
        const std::string den_s = text.substr(slash + 1);
        char* end = nullptr;
        const double num = std::strtod(num_s.c_str(), &end);
        if (end == num_s.c_str() || *end != '\0') throw DataFormatError("bad exponent: " + text);
        const double den = std::strtod(den_s.c_str(), &end);
        if (end == den_s.c_str() || *end != '\0' || den == 0.0) throw DataFormatError("bad exponent: " + text);
        return num / den;
    }
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0') throw DataFormatError("bad exponent: " + text);
    return v;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(current);
            current.clear();
        } else if (ch != '\r') {
            current += ch;
        }
    }
    fields.push_back(current);
    return fields;
}

double parse_number(const std::string& text, const std::string& context, std::size_t line_no) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw DataFormatError(context + ": bad number '" + text + "' at line " + std::to_string(line_no));
    return v;
}

}  // namespace

void save_series(const std::vector<ShellNormSeries>& series, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataFormatError("cannot open series file for writing: " + path.string());
    out << "time,q,s,norm\n";
    // Row order: time-major, then shell, then exponent; keeps one time block
    // contiguous for all exponents.
    if (series.empty()) return;
    const std::size_t nt = series.front().times.size();
    for (const auto& s : series) {
        s.validate();
        if (s.times.size() != nt) throw DataFormatError("save_series: series length mismatch");
    }
    for (std::size_t i = 0; i < nt; ++i) {
        for (const auto& s : series) {
            for (int q = s.q_min; q <= s.q_max; ++q) {
                out << format_double(s.times[i]) << ',' << q << ',' << format_exponent(s.s) << ','
                    << format_double(s.norm_at(i, q)) << '\n';
            }
        }
    }
    if (!out) throw DataFormatError("series write failed: " + path.string());
}

void save_series(const ShellNormSeries& series, const std::filesystem::path& path) {
    save_series(std::vector<ShellNormSeries>{series}, path);
}

std::vector<ShellNormSeries> load_all_series(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataFormatError("cannot open series file: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw DataFormatError("empty series file: " + path.string());
    {
        const auto header = split_csv_row(line);
        if (header.size() != 4 || header[0] != "time" || header[1] != "q" || header[2] != "s" ||
            header[3] != "norm")
            throw DataFormatError("bad series header in " + path.string() + " (want time,q,s,norm)");
    }

    struct Key {
        double s;
        bool operator<(const Key& o) const { return s < o.s; }
    };
    struct Builder {
        std::vector<double> times;
        std::map<int, std::vector<double>> by_shell;  // q -> norm per time
        std::map<int, std::vector<double>> times_by_shell;
    };
    std::map<Key, Builder> builders;

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_csv_row(line);
        if (fields.size() != 4)
            throw DataFormatError(path.string() + ": malformed row at line " + std::to_string(line_no));
        const double t = parse_number(fields[0], path.string(), line_no);
        const double q_raw = parse_number(fields[1], path.string(), line_no);
        const int q = static_cast<int>(q_raw);
        if (q != q_raw || q < -1)
            throw DataFormatError(path.string() + ": bad shell index at line " + std::to_string(line_no));
        double s;
        try {
            s = parse_exponent(fields[2]);
        } catch (const DataFormatError&) {
            throw DataFormatError(path.string() + ": bad exponent at line " + std::to_string(line_no));
        }
        const double norm = parse_number(fields[3], path.string(), line_no);
        if (!(norm >= 0.0))
            throw DataFormatError(path.string() + ": negative norm at line " + std::to_string(line_no));
        Builder& b = builders[Key{s}];
        b.by_shell[q].push_back(norm);
        b.times_by_shell[q].push_back(t);
    }

    std::vector<ShellNormSeries> result;
    for (auto& [key, b] : builders) {
        if (b.by_shell.empty()) continue;
        ShellNormSeries series;
        series.s = key.s;
        series.q_min = b.by_shell.begin()->first;
        series.q_max = b.by_shell.rbegin()->first;
        const std::size_t nt = b.by_shell.begin()->second.size();
        series.times = b.times_by_shell.begin()->second;
        for (int q = series.q_min; q <= series.q_max; ++q) {
            auto it = b.by_shell.find(q);
            if (it == b.by_shell.end() || it->second.size() != nt) {
                // Find the first time whose shell set is incomplete for the error message.
                std::string at;
                if (it != b.by_shell.end() && !b.times_by_shell[q].empty()) {
                    const std::size_t bad = std::min(it->second.size(), nt - 1);
                    at = " near t=" + format_double(series.times[bad]);
                }
                throw DataFormatError(path.string() + ": missing shell q=" + std::to_string(q) +
                                      " rows for s=" + format_exponent(key.s) + at);
            }
            if (b.times_by_shell[q] != series.times)
                throw DataFormatError(path.string() + ": inconsistent times across shells for s=" +
                                      format_exponent(key.s));
        }
        series.norms.assign(nt, std::vector<double>(series.shell_count(), 0.0));
        for (int q = series.q_min; q <= series.q_max; ++q) {
            const auto& col = b.by_shell[q];
            for (std::size_t i = 0; i < nt; ++i) series.norms[i][static_cast<std::size_t>(q - series.q_min)] = col[i];
        }
        series.source = path.string();
        series.validate();
        result.push_back(std::move(series));
    }
    if (result.empty()) throw DataFormatError("no data rows in " + path.string());
    return result;
}

ShellNormSeries load_series(const std::filesystem::path& path, double s) {
    auto all = load_all_series(path);
    for (auto& series : all) {
        if (series.s == s || std::abs(series.s - s) <= 1e-12 * std::max(1.0, std::abs(s)))
            return std::move(series);
    }
    throw DataFormatError(path.string() + ": no series with s=" + format_exponent(s));
}

void save_energy_csv(const std::vector<EnergyRow>& rows, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataFormatError("cannot open energy file for writing: " + path.string());
    out << "t,energy,dissipation\n";
    for (const auto& r : rows)
        out << format_double(r.t) << ',' << format_double(r.energy) << ',' << format_double(r.dissipation)
            << '\n';
    if (!out) throw DataFormatError("energy write failed: " + path.string());
}

std::vector<EnergyRow> load_energy_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataFormatError("cannot open energy file: " + path.string());
    std::string line;
    if (!std::getline(in, line) || split_csv_row(line) != std::vector<std::string>{"t", "energy", "dissipation"})
        throw DataFormatError("bad energy header in " + path.string());
    std::vector<EnergyRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_csv_row(line);
        if (fields.size() != 3)
            throw DataFormatError(path.string() + ": malformed row at line " + std::to_string(line_no));
        rows.push_back({parse_number(fields[0], path.string(), line_no),
                        parse_number(fields[1], path.string(), line_no),
                        parse_number(fields[2], path.string(), line_no)});
    }
    return rows;
}

}  // namespace nslab
