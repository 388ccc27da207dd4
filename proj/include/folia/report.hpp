#pragma once

#include <string>
#include <vector>

#include "folia/linalg.hpp"
#include "json.hpp"

namespace folia {

using Json = nlohmann::json;

/// Serializes with object keys in sorted order (nlohmann::json already
/// stores them sorted) and every floating-point number printed with 17
/// significant digits, so reports are byte-stable across runs.
std::string dump_stable(const Json& j, int indent = 2);

struct CsvRow {
    Vec4d p{};
    std::string check;
    double residual = 0.0;
};

/// CSV of per-point residuals; header `point_x1,...,check_id,residual`.
std::string csv_samples(const std::vector<CsvRow>& rows);

/// One line per check with its anchor, residual max and verdict.
std::string summary_text(const Json& report);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace folia
