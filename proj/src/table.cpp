#include "qcalc/table.hpp"

#include <cstdio>
#include <cstdlib>

namespace qcalc::table {

std::string format_double(double v) {
    char buf[40];
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    return buf;  // 17 digits always round-trips binary64
}

std::string cell_to_string(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) return format_double(v);
            if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(v);
            if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
            if constexpr (std::is_same_v<T, std::string>) return v;
        },
        c);
}

void write_csv(std::ostream& os, const Table& t) {
    for (std::size_t i = 0; i < t.headers.size(); ++i) {
        if (i) os << ',';
        os << t.headers[i];
    }
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << cell_to_string(row[i]);
        }
        os << '\n';
    }
}

nlohmann::json to_json(const Table& t, const nlohmann::json& params,
                       const std::vector<std::string>& flags) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : t.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t i = 0; i < row.size() && i < t.headers.size(); ++i) {
            std::visit([&](const auto& v) { obj[t.headers[i]] = v; }, row[i]);
        }
        rows.push_back(std::move(obj));
    }
    return nlohmann::json{{"params", params}, {"rows", std::move(rows)}, {"flags", flags}};
}

}  // namespace qcalc::table
