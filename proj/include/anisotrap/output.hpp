// output.hpp — deterministic table serialization. Floats are always
// rendered as %.16e (17 significant digits, scientific, '.' separator),
// lines end in LF, and the JSON form mirrors the exact same rendered
// values; byte-identical output for identical configs is a contract.

#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace anisotrap {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;  // pre-rendered cells
};

std::string format_sci(double v);

using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

// CSV: '# key = value' echo lines, header, data rows.
void write_csv(std::ostream& out, const Table& table, const ConfigEcho& echo);

// JSON object {"config": {...}, "columns": [...], "rows": [[...]]};
// numeric-looking cells are emitted as bare JSON numbers.
void write_json(std::ostream& out, const Table& table, const ConfigEcho& echo);

void write_table(std::ostream& out, const Table& table, const ConfigEcho& echo,
                 const std::string& format);

}  // namespace anisotrap
