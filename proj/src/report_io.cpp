#include "nslab/report_io.hpp"

#include <cstdlib>
#include <fstream>

#include "nslab/errors.hpp"
#include "nslab/series_io.hpp"

namespace nslab {

void save_criterion_csv(const CriterionReport& report, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataFormatError("cannot open criterion report for writing: " + path.string());
    out << "t0,p,lambda_p,integral,flag\n";
    for (const auto& row : report.rows) {
        out << format_double(row.t0) << ',' << row.p << ',' << format_double(row.lambda_p) << ','
            << format_double(row.integral) << ',' << (row.fired ? "bad" : "good") << '\n';
    }
    if (!out) throw DataFormatError("criterion report write failed: " + path.string());
}

std::vector<CriterionRow> load_criterion_rows(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataFormatError("cannot open criterion report: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw DataFormatError("empty criterion report: " + path.string());
    if (line.rfind("t0,p,lambda_p,integral,flag", 0) != 0)
        throw DataFormatError("bad criterion header in " + path.string());
    std::vector<CriterionRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        CriterionRow row;
        char flag[16] = {0};
        const int got = std::sscanf(line.c_str(), "%lf,%d,%lf,%lf,%15s", &row.t0, &row.p, &row.lambda_p,
                                    &row.integral, flag);
        if (got != 5)
            throw DataFormatError(path.string() + ": malformed row at line " + std::to_string(line_no));
        const std::string flag_s(flag);
        if (flag_s != "bad" && flag_s != "good")
            throw DataFormatError(path.string() + ": bad flag at line " + std::to_string(line_no));
        row.fired = flag_s == "bad";
        rows.push_back(row);
    }
    return rows;
}

void save_premeasure_csv(const std::vector<PremeasureRow>& rows, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataFormatError("cannot open premeasure report for writing: " + path.string());
    out << "scale_floor,d,intervals,sum\n";
    for (const auto& row : rows) {
        out << row.scale_floor << ',' << format_double(row.d) << ',' << row.interval_count << ','
            << format_double(row.sum) << '\n';
    }
    if (!out) throw DataFormatError("premeasure write failed: " + path.string());
}

std::vector<PremeasureRow> load_premeasure_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataFormatError("cannot open premeasure report: " + path.string());
    std::string line;
    if (!std::getline(in, line) || line.rfind("scale_floor,d,intervals,sum", 0) != 0)
        throw DataFormatError("bad premeasure header in " + path.string());
    std::vector<PremeasureRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        PremeasureRow row;
        unsigned long long count = 0;
        if (std::sscanf(line.c_str(), "%d,%lf,%llu,%lf", &row.scale_floor, &row.d, &count, &row.sum) != 4)
            throw DataFormatError(path.string() + ": malformed row at line " + std::to_string(line_no));
        row.interval_count = static_cast<std::size_t>(count);
        rows.push_back(row);
    }
    return rows;
}

void save_shell_inequality_csv(const ShellInequalityReport& report, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataFormatError("cannot open inequality report for writing: " + path.string());
    out << "t,q,s,lhs_diff,lhs_visc,rhs_low,rhs_high,i1,i2,i3\n";
    for (const auto& rec : report.records) {
        out << format_double(rec.t) << ',' << rec.q << ',' << format_exponent(rec.s) << ','
            << format_double(rec.lhs_diff) << ',' << format_double(rec.lhs_visc) << ','
            << format_double(rec.rhs_low) << ',' << format_double(rec.rhs_high) << ',';
        if (rec.has_flux) {
            out << format_double(rec.i1) << ',' << format_double(rec.i2) << ',' << format_double(rec.i3);
        } else {
            out << "nan,nan,nan";
        }
        out << '\n';
    }
    if (!out) throw DataFormatError("inequality report write failed: " + path.string());
}

}  // namespace nslab
