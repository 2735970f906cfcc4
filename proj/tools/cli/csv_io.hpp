#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

#include "triadic/family.hpp"
#include "triadic/models.hpp"

namespace triadic::cli {

/// Parsed `index,p_h[,p_k]` input. Extra columns are ignored, so csv output re-ingests.
struct PValueTable {
    std::vector<std::size_t> labels;     ///< the index column, as written (1-based)
    std::vector<std::size_t> line_numbers;
    std::vector<PValuePair> pairs;
    bool has_p_k = false;
};

PValueTable read_pvalue_csv(std::istream& in);

struct DataTable {
    std::vector<std::string> names;
    DataMatrix data;
};

/// Header row of variable names, then one numeric row per observation.
DataTable read_data_csv(std::istream& in);

/// 17 significant digits, enough to round-trip any double.
std::string format_double(double x);

} // namespace triadic::cli
