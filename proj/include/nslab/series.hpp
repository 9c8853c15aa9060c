#pragma once

#include <string>
#include <vector>

#include "nslab/errors.hpp"

namespace nslab {

// Time series of per-shell Lebesgue norms t_i -> { ||u_q(t_i)||_s : q } for a
// single exponent s. Shells run contiguously from q_min (normally -1).
struct ShellNormSeries {
    std::vector<double> times;               // strictly increasing
    int q_min = -1;
    int q_max = -1;
    std::vector<std::vector<double>> norms;  // norms[i][q - q_min]
    double s = 2.0;
    std::string source;

    int shell_count() const { return q_max - q_min + 1; }

    double norm_at(std::size_t time_index, int q) const {
        if (q < q_min || q > q_max) throw DataFormatError("ShellNormSeries: shell out of range");
        return norms[time_index][static_cast<std::size_t>(q - q_min)];
    }

    void validate() const {
        if (times.size() != norms.size()) throw DataFormatError("ShellNormSeries: ragged series");
        for (std::size_t i = 0; i + 1 < times.size(); ++i)
            if (!(times[i] < times[i + 1])) throw DataFormatError("ShellNormSeries: times not increasing");
        for (const auto& row : norms) {
            if (static_cast<int>(row.size()) != shell_count())
                throw DataFormatError("ShellNormSeries: missing shell entries");
            for (double v : row)
                if (!(v >= 0.0)) throw DataFormatError("ShellNormSeries: negative norm");
        }
    }
};

}  // namespace nslab
