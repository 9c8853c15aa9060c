#pragma once

#include <filesystem>

#include "nslab/covering.hpp"
#include "nslab/criterion.hpp"
#include "nslab/paraproduct.hpp"

namespace nslab {

// Criterion report CSV: t0,p,lambda_p,integral,flag  (flag: bad|good per row).
void save_criterion_csv(const CriterionReport& report, const std::filesystem::path& path);
std::vector<CriterionRow> load_criterion_rows(const std::filesystem::path& path);

// Premeasure CSV: scale_floor,d,intervals,sum.
void save_premeasure_csv(const std::vector<PremeasureRow>& rows, const std::filesystem::path& path);
std::vector<PremeasureRow> load_premeasure_csv(const std::filesystem::path& path);

// Shell-inequality CSV: t,q,s,lhs_diff,lhs_visc,rhs_low,rhs_high,i1,i2,i3
// (i-columns are nan on records where the paraproduct terms were not
// evaluated).
void save_shell_inequality_csv(const ShellInequalityReport& report, const std::filesystem::path& path);

}  // namespace nslab
