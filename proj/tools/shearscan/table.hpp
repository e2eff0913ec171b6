#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace shearscan {

using Cell = std::variant<std::string, double, std::int64_t>;

// Rectangular result table rendered as CSV or as a JSON array of row objects.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
    void write_csv(std::ostream& os) const;
    void write_json(std::ostream& os) const;
    void write(std::ostream& os, const std::string& format) const;
};

std::string render(double v);

}  // namespace shearscan
