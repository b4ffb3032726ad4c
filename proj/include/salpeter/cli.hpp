#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "salpeter/model.hpp"

namespace salpeter::cli {

// Reads {"mass": m, "centers": [...], "bindings": [...]} and validates it.
ModelConfig parse_config(const std::string& path);
ModelConfig parse_config_text(const std::string& text);

struct Grid {
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
};

// "start:stop:count"; count may be 0 (empty grid) or 1 (start only).
Grid parse_grid(const std::string& spec);
std::vector<double> grid_values(const Grid& g, bool logarithmic = false);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string format_number(double v, int precision);

// CSV with LF line endings; an empty table yields just the header.
void write_table(const Table& t, std::ostream& os);
void emit_table(const Table& t, const std::string& path);

// Entry point shared by the executable and the tests. Returns the exit code:
// 0 success, 2 invalid input, 3 numerical failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace salpeter::cli
