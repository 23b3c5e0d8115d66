#pragma once

#include "hausflow/metric_field.hpp"

#include <string>

namespace hausflow {

// Matrix CSV: header row/column carry grid coordinates (axis values joined by
// ';'), entries use %.17g so a read-back is bit-exact; +inf prints as "inf".
void write_field_csv(const MetricField& field, const std::string& path);
Eigen::MatrixXd read_field_csv(const std::string& path);

// JSON envelope (grid geometry + provenance) next to the CSV. read_field
// rebuilds the grid from the envelope and checks the matrix shape.
void write_field(const MetricField& field, const std::string& dir, const std::string& basename);
MetricField read_field(const std::string& dir, const std::string& basename);

}  // namespace hausflow
