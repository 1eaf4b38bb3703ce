#pragma once
// Deterministic CSV serialization.  All numbers are written with 17
// significant digits so doubles round-trip bit-exactly; line endings are \n.

#include <string>
#include <vector>

#include "fblab/geometry.hpp"

namespace fblab {

// Shortest-fixed decimal form with 17 significant digits ("%.17g").
std::string format_g17(double v);

// Field files carry one header line "nx,ny,xmin,xmax,ymin,ymax" (the six
// values in that order) followed by one node value per line, row major, node
// (0,0) at (xmin,ymin).
void write_field_csv(const ScalarField& f, const std::string& path);
ScalarField read_field_csv(const std::string& path);

// Mask files use the same layout with 0/1 values.
void write_mask_csv(const Grid2& grid, const std::vector<uint8_t>& flags, const std::string& path);

// Integer label files in the same layout.
void write_label_csv(const Grid2& grid, const std::vector<int>& labels, const std::string& path);

// Two-column profile "r,value" with a header line naming the columns.
void write_profile_csv(const std::vector<double>& r, const std::vector<double>& value,
                       const std::string& value_name, const std::string& path);

// Generic rectangular table with explicit column names.
void write_table_csv(const std::vector<std::string>& columns,
                     const std::vector<std::vector<double>>& rows, const std::string& path);

}  // namespace fblab
