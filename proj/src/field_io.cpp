#include "hausflow/field_io.hpp"

#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hausflow {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string point_label(const Grid& grid, int flat) {
  GroupElement p = grid.point(flat);
  std::string s;
  for (int ax = 0; ax < p.size(); ++ax) {
    if (ax) s += ';';
    s += fmt17(p[ax]);
  }
  return s;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

}  // namespace

void write_field_csv(const MetricField& field, const std::string& path) {
  const int n = field.grid->total();
  auto out = open_out(path);
  out << "point";
  for (int j = 0; j < n; ++j) out << ',' << point_label(*field.grid, j);
  out << '\n';
  for (int i = 0; i < n; ++i) {
    out << point_label(*field.grid, i);
    for (int j = 0; j < n; ++j) out << ',' << fmt17(field.values(i, j));
    out << '\n';
  }
}

Eigen::MatrixXd read_field_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty csv: " + path);
  int n = -1;  // columns = commas in the header
  for (char c : line)
    if (c == ',') ++n;
  ++n;
  if (n <= 0) throw std::runtime_error("malformed csv header: " + path);
  Eigen::MatrixXd values(n, n);
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw std::runtime_error("truncated csv: " + path);
    std::stringstream ss(line);
    std::string cell;
    std::getline(ss, cell, ',');  // row label
    for (int j = 0; j < n; ++j) {
      if (!std::getline(ss, cell, ',')) throw std::runtime_error("short csv row: " + path);
      values(i, j) = std::strtod(cell.c_str(), nullptr);
    }
  }
  return values;
}

void write_field(const MetricField& field, const std::string& dir, const std::string& basename) {
  std::filesystem::create_directories(dir);
  const Grid& g = *field.grid;
  ordered_json env;
  env["schema_version"] = 1;
  env["provenance"] = field.provenance;
  env["intrinsic"] = field.intrinsic;
  ordered_json jg;
  jg["group"] = {{"kind", group_kind_name(g.group.kind)}, {"dim", g.group.dim}};
  jg["npts"] = std::vector<int>(g.npts.data(), g.npts.data() + g.npts.size());
  jg["origin"] = std::vector<double>(g.origin.data(), g.origin.data() + g.origin.size());
  jg["step"] = std::vector<double>(g.step.data(), g.step.data() + g.step.size());
  jg["pad"] = std::vector<int>(g.pad.data(), g.pad.data() + g.pad.size());
  jg["wrap"] = g.wrap;
  env["grid"] = jg;
  env["matrix_csv"] = basename + ".csv";
  env["rows"] = field.grid->total();

  auto out = open_out(dir + "/" + basename + ".json");
  out << env.dump(2) << '\n';
  write_field_csv(field, dir + "/" + basename + ".csv");
}

MetricField read_field(const std::string& dir, const std::string& basename) {
  std::ifstream in(dir + "/" + basename + ".json");
  if (!in) throw std::runtime_error("cannot read " + dir + "/" + basename + ".json");
  ordered_json env = ordered_json::parse(in);

  const auto& jg = env.at("grid");
  auto grid = std::make_shared<Grid>();
  grid->group = make_group(group_kind_from_name(jg.at("group").at("kind").get<std::string>()),
                           jg.at("group").at("dim").get<int>());
  const int dim = grid->group.dim;
  grid->npts.resize(dim);
  grid->origin.resize(dim);
  grid->step.resize(dim);
  grid->pad.resize(dim);
  grid->wrap.resize(dim);
  for (int ax = 0; ax < dim; ++ax) {
    grid->npts[ax] = jg.at("npts").at(ax).get<int>();
    grid->origin[ax] = jg.at("origin").at(ax).get<double>();
    grid->step[ax] = jg.at("step").at(ax).get<double>();
    grid->pad[ax] = jg.at("pad").at(ax).get<int>();
    grid->wrap[ax] = jg.at("wrap").at(ax).get<bool>();
  }
  std::size_t total = 1;
  for (int ax = 0; ax < dim; ++ax) total *= static_cast<std::size_t>(grid->npts[ax]);
  grid->core.assign(total, 1);
  for (std::size_t f = 0; f < total; ++f) {
    Eigen::VectorXi m = grid->multi(static_cast<int>(f));
    for (int ax = 0; ax < dim; ++ax)
      if (m[ax] < grid->pad[ax] || m[ax] >= grid->npts[ax] - grid->pad[ax]) {
        grid->core[f] = 0;
        break;
      }
  }

  MetricField field;
  field.grid = grid;
  field.provenance = env.at("provenance").get<std::string>();
  field.intrinsic = env.at("intrinsic").get<bool>();
  field.values = read_field_csv(dir + "/" + env.at("matrix_csv").get<std::string>());
  if (field.values.rows() != grid->total())
    throw std::runtime_error("matrix shape does not match the grid envelope");
  return field;
}

}  // namespace hausflow
