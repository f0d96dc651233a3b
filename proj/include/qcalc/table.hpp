#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace qcalc::table {

using Cell = std::variant<double, std::int64_t, bool, std::string>;

/// Header row plus value rows, rendered either as CSV (comma separated,
/// LF line endings) or as rows of a JSON document.
struct Table {
    std::vector<std::string> headers;
    std::vector<std::vector<Cell>> rows;

    template <typename... Cells>
    void push_row(Cells&&... cells) {
        rows.push_back({Cell(std::forward<Cells>(cells))...});
    }
};

/// Shortest decimal form that parses back to the identical binary64 value,
/// never fewer than 15 significant digits of precision.
std::string format_double(double v);

std::string cell_to_string(const Cell& c);

void write_csv(std::ostream& os, const Table& t);

/// {"params": ..., "rows": [...], "flags": [...]} with rows keyed by header.
nlohmann::json to_json(const Table& t, const nlohmann::json& params,
                       const std::vector<std::string>& flags);

}  // namespace qcalc::table
