#include "table.hpp"

#include <fmt/format.h>

#include <cmath>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace shearscan {

std::string render(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return fmt::format("{:.15e}", v);
}

void Table::add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw std::logic_error("table row width mismatch");
    rows.push_back(std::move(row));
}

namespace {
std::string csv_cell(const Cell& c) {
    if (const auto* s = std::get_if<std::string>(&c)) {
        if (s->find_first_of(",\"\n") == std::string::npos) return *s;
        std::string q = "\"";
        for (char ch : *s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        return q + "\"";
    }
    if (const auto* d = std::get_if<double>(&c)) return render(*d);
    return std::to_string(std::get<std::int64_t>(c));
}
}  // namespace

void Table::write_csv(std::ostream& os) const {
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << '\n';
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
        os << '\n';
    }
}

void Table::write_json(std::ostream& os) const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (const auto* s = std::get_if<std::string>(&r[i])) obj[columns[i]] = *s;
            else if (const auto* d = std::get_if<double>(&r[i])) obj[columns[i]] = std::isfinite(*d) ? nlohmann::ordered_json(*d) : nlohmann::ordered_json(nullptr);
            else obj[columns[i]] = std::get<std::int64_t>(r[i]);
        }
        arr.push_back(std::move(obj));
    }
    os << arr.dump(2) << '\n';
}

void Table::write(std::ostream& os, const std::string& format) const {
    if (format == "json") write_json(os);
    else write_csv(os);
}

}  // namespace shearscan
