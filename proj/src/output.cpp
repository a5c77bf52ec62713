#include "anisotrap/output.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>

namespace anisotrap {

namespace {

bool numeric_literal(const std::string& s)
{
    if (s.empty())
        return false;
    char* end = nullptr;
    std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

void json_string(std::ostream& out, const std::string& s)
{
    out << '"';
    for (char c : s) {
        if (c == '"' || c == '\\')
            out << '\\';
        out << c;
    }
    out << '"';
}

void json_cell(std::ostream& out, const std::string& s)
{
    if (numeric_literal(s))
        out << s;
    else
        json_string(out, s);
}

}  // namespace

std::string format_sci(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

void write_csv(std::ostream& out, const Table& table, const ConfigEcho& echo)
{
    for (const auto& [key, value] : echo)
        out << "# " << key << " = " << value << "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        out << (c ? "," : "") << table.columns[c];
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            out << (c ? "," : "") << row[c];
        out << "\n";
    }
}

void write_json(std::ostream& out, const Table& table, const ConfigEcho& echo)
{
    out << "{\n  \"config\": {";
    for (std::size_t i = 0; i < echo.size(); ++i) {
        out << (i ? ", " : "");
        json_string(out, echo[i].first);
        out << ": ";
        json_string(out, echo[i].second);
    }
    out << "},\n  \"columns\": [";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out << (c ? ", " : "");
        json_string(out, table.columns[c]);
    }
    out << "],\n  \"rows\": [";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        out << (r ? ",\n    " : "\n    ") << "[";
        for (std::size_t c = 0; c < table.rows[r].size(); ++c) {
            out << (c ? ", " : "");
            json_cell(out, table.rows[r][c]);
        }
        out << "]";
    }
    out << (table.rows.empty() ? "]" : "\n  ]") << "\n}\n";
}

void write_table(std::ostream& out, const Table& table, const ConfigEcho& echo,
                 const std::string& format)
{
    if (format == "json")
        write_json(out, table, echo);
    else
        write_csv(out, table, echo);
}

}  // namespace anisotrap
