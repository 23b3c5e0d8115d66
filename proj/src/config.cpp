#include "hausflow/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

namespace hausflow {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw std::invalid_argument(path + ": " + what);
}

const json& section(const json& doc, const std::string& key, const json& fallback) {
  auto it = doc.find(key);
  if (it == doc.end()) return fallback;
  if (!it->is_object()) fail(key, "expected an object");
  return *it;
}

void reject_unknown(const json& obj, const std::string& path, const std::set<std::string>& known) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!known.count(it.key())) fail(path.empty() ? it.key() : path + "." + it.key(), "unknown field");
}

double get_number(const json& obj, const std::string& path, const std::string& key, double dflt) {
  auto it = obj.find(key);
  if (it == obj.end()) return dflt;
  if (!it->is_number()) fail(path + "." + key, "expected a number");
  return it->get<double>();
}

long long get_integer(const json& obj, const std::string& path, const std::string& key,
                      long long dflt, bool required = false) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) fail(path + "." + key, "required field missing");
    return dflt;
  }
  if (!it->is_number_integer()) fail(path + "." + key, "expected an integer");
  return it->get<long long>();
}

bool get_flag(const json& obj, const std::string& path, const std::string& key, bool dflt) {
  auto it = obj.find(key);
  if (it == obj.end()) return dflt;
  if (!it->is_boolean()) fail(path + "." + key, "expected a boolean");
  return it->get<bool>();
}

std::string get_text(const json& obj, const std::string& path, const std::string& key,
                     const std::string& dflt, bool required = false) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) fail(path + "." + key, "required field missing");
    return dflt;
  }
  if (!it->is_string()) fail(path + "." + key, "expected a string");
  return it->get<std::string>();
}

Eigen::VectorXd get_vector(const json& obj, const std::string& path, const std::string& key,
                           int dim) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "required field missing");
  if (!it->is_array() || static_cast<int>(it->size()) != dim)
    fail(path + "." + key, "expected an array of " + std::to_string(dim) + " numbers");
  Eigen::VectorXd v(dim);
  for (int ax = 0; ax < dim; ++ax) {
    if (!(*it)[ax].is_number()) fail(path + "." + key, "expected numeric entries");
    v[ax] = (*it)[ax].get<double>();
  }
  return v;
}

std::vector<AlgebraVector> get_vector_list(const json& obj, const std::string& path,
                                           const std::string& key, int dim) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "required field missing");
  if (!it->is_array() || it->empty()) fail(path + "." + key, "expected a nonempty array of arrays");
  std::vector<AlgebraVector> out;
  for (const auto& row : *it) {
    json wrap = json::object();
    wrap[key] = row;
    out.push_back(get_vector(wrap, path, key, dim));
  }
  return out;
}

json echo_vector(const Eigen::VectorXd& v) {
  json a = json::array();
  for (int ax = 0; ax < v.size(); ++ax) a.push_back(v[ax]);
  return a;
}

json echo_vector_list(const std::vector<AlgebraVector>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(echo_vector(v));
  return a;
}

GeneratorSet torus_box_complement(const GroupSpec& group, const Eigen::VectorXd& box_lo,
                                  const Eigen::VectorXd& box_hi, int mesh) {
  std::vector<GroupElement> pts;
  Eigen::VectorXi m = Eigen::VectorXi::Zero(group.dim);
  long long total = 1;
  for (int ax = 0; ax < group.dim; ++ax) total *= mesh;
  for (long long k = 0; k < total; ++k) {
    GroupElement p(group.dim);
    bool inside = true;
    for (int ax = 0; ax < group.dim; ++ax) {
      p[ax] = static_cast<double>(m[ax]) / mesh;
      inside = inside && p[ax] > box_lo[ax] && p[ax] < box_hi[ax];
    }
    if (!inside) pts.push_back(std::move(p));
    for (int ax = group.dim - 1; ax >= 0; --ax) {
      if (++m[ax] < mesh) break;
      m[ax] = 0;
    }
  }
  return make_generator_set(group, pts);
}

}  // namespace

ResolvedExperiment resolve_config(const json& doc) {
  if (!doc.is_object()) fail("config", "expected a JSON object");
  reject_unknown(doc, "", {"schema_version", "description", "group", "base_metric", "generators",
                           "window", "adjacency", "flow", "finsler", "semigroup", "verify",
                           "seed"});
  long long ver = get_integer(doc, "config", "schema_version", 0, true);
  if (ver != 1) fail("schema_version", "unsupported version " + std::to_string(ver));

  ResolvedExperiment exp;
  exp.description = get_text(doc, "config", "description", "");

  const json empty = json::object();

  const json& jg = section(doc, "group", empty);
  if (jg.empty()) fail("group", "required section missing");
  reject_unknown(jg, "group", {"kind", "dim"});
  GroupKind gkind = group_kind_from_name(get_text(jg, "group", "kind", "", true));
  int dim = static_cast<int>(get_integer(jg, "group", "dim", 0, true));
  try {
    exp.group = make_group(gkind, dim);
  } catch (const std::exception& e) {
    fail("group", e.what());
  }

  const json& jm = section(doc, "base_metric", empty);
  if (jm.empty()) fail("base_metric", "required section missing");
  reject_unknown(jm, "base_metric", {"kind"});
  MetricKind mkind = metric_kind_from_name(get_text(jm, "base_metric", "kind", "", true));
  if (mkind == MetricKind::UserTable) fail("base_metric.kind", "user_table is not configurable");
  try {
    exp.base = make_base_metric(mkind, exp.group);
  } catch (const std::exception& e) {
    fail("base_metric", e.what());
  }

  const json& jx = section(doc, "generators", empty);
  if (jx.empty()) fail("generators", "required section missing");
  std::string source = get_text(jx, "generators", "source", "", true);
  json gen_echo;
  gen_echo["source"] = source;
  if (source == "explicit") {
    reject_unknown(jx, "generators", {"source", "elements"});
    auto elements = get_vector_list(jx, "generators", "elements", dim);
    exp.generators = make_generator_set(exp.group, elements);
    exp.generators.isotropy_certified = check_isotropy_trivial(exp.generators);
    gen_echo["elements"] = echo_vector_list(elements);
  } else if (source == "from_basis") {
    reject_unknown(jx, "generators", {"source", "basis"});
    auto basis = get_vector_list(jx, "generators", "basis", dim);
    try {
      exp.generators = build_generator_from_basis(exp.group, basis);
    } catch (const std::exception& e) {
      fail("generators.basis", e.what());
    }
    gen_echo["basis"] = echo_vector_list(basis);
  } else if (source == "torus_box_complement") {
    reject_unknown(jx, "generators", {"source", "box_lo", "box_hi", "mesh"});
    if (gkind != GroupKind::Torus) fail("generators.source", "torus_box_complement needs a torus");
    auto box_lo = get_vector(jx, "generators", "box_lo", dim);
    auto box_hi = get_vector(jx, "generators", "box_hi", dim);
    int mesh = static_cast<int>(get_integer(jx, "generators", "mesh", 0, true));
    if (mesh < 2 || mesh > 256) fail("generators.mesh", "expected 2 <= mesh <= 256");
    for (int ax = 0; ax < dim; ++ax)
      if (!(0.0 <= box_lo[ax] && box_lo[ax] < box_hi[ax] && box_hi[ax] <= 1.0))
        fail("generators.box_lo", "expected 0 <= box_lo < box_hi <= 1 per axis");
    exp.generators = torus_box_complement(exp.group, box_lo, box_hi, mesh);
    exp.generators.isotropy_certified = check_isotropy_trivial(exp.generators);
    gen_echo["box_lo"] = echo_vector(box_lo);
    gen_echo["box_hi"] = echo_vector(box_hi);
    gen_echo["mesh"] = mesh;
  } else {
    fail("generators.source", "expected explicit | from_basis | torus_box_complement");
  }
  gen_echo["size"] = exp.generators.size();
  gen_echo["isotropy_certified"] = exp.generators.isotropy_certified;

  const json& jw = section(doc, "window", empty);
  if (jw.empty()) fail("window", "required section missing");
  reject_unknown(jw, "window", {"lo", "hi", "resolution", "padding", "point_cap"});
  if (gkind == GroupKind::Torus && !jw.contains("lo")) {
    exp.window.lo = Eigen::VectorXd::Zero(dim);
    exp.window.hi = Eigen::VectorXd::Ones(dim);
  } else {
    exp.window.lo = get_vector(jw, "window", "lo", dim);
    exp.window.hi = get_vector(jw, "window", "hi", dim);
  }
  {
    auto it = jw.find("resolution");
    if (it == jw.end()) fail("window.resolution", "required field missing");
    if (!it->is_array() || static_cast<int>(it->size()) != dim)
      fail("window.resolution", "expected an array of " + std::to_string(dim) + " integers");
    exp.window.resolution.resize(dim);
    for (int ax = 0; ax < dim; ++ax) {
      if (!(*it)[ax].is_number_integer()) fail("window.resolution", "expected integer entries");
      exp.window.resolution[ax] = (*it)[ax].get<int>();
    }
  }
  {
    auto it = jw.find("padding");
    if (it == jw.end() || (it->is_string() && it->get<std::string>() == "auto")) {
      exp.window.padding_radius = exp.generators.reach_radius();
    } else if (it->is_number()) {
      exp.window.padding_radius = it->get<double>();
      if (exp.window.padding_radius < 0) fail("window.padding", "expected \"auto\" or a number >= 0");
    } else {
      fail("window.padding", "expected \"auto\" or a number >= 0");
    }
  }
  exp.window.point_cap = static_cast<std::size_t>(
      get_integer(jw, "window", "point_cap", static_cast<long long>(exp.window.point_cap)));
  try {
    exp.grid = sample_window(exp.group, exp.window);
  } catch (const std::exception& e) {
    fail("window", e.what());
  }

  const json& ja = section(doc, "adjacency", empty);
  reject_unknown(ja, "adjacency", {"stencil_radius"});
  exp.adjacency.stencil_radius =
      static_cast<int>(get_integer(ja, "adjacency", "stencil_radius", 2));
  if (exp.adjacency.stencil_radius < 1) fail("adjacency.stencil_radius", "expected >= 1");

  const json& jf = section(doc, "flow", empty);
  reject_unknown(jf, "flow", {"tol", "max_iter", "divergence_factor", "retain_iterates",
                              "monotone_slack"});
  exp.flow.tol = get_number(jf, "flow", "tol", exp.flow.tol);
  exp.flow.max_iter = static_cast<int>(get_integer(jf, "flow", "max_iter", exp.flow.max_iter));
  exp.flow.divergence_factor =
      get_number(jf, "flow", "divergence_factor", exp.flow.divergence_factor);
  exp.flow.retain_iterates = get_flag(jf, "flow", "retain_iterates", exp.flow.retain_iterates);
  exp.flow.monotone_slack = get_number(jf, "flow", "monotone_slack", exp.flow.monotone_slack);
  if (!(exp.flow.tol > 0)) fail("flow.tol", "expected > 0");
  if (exp.flow.max_iter < 1) fail("flow.max_iter", "expected >= 1");
  if (!(exp.flow.divergence_factor > 1)) fail("flow.divergence_factor", "expected > 1");
  if (exp.flow.monotone_slack < 0) fail("flow.monotone_slack", "expected >= 0");

  const json& jn = section(doc, "finsler", empty);
  reject_unknown(jn, "finsler", {"t_levels", "both_signs", "directions", "word_maxlen"});
  exp.finsler.t_levels =
      static_cast<int>(get_integer(jn, "finsler", "t_levels", exp.finsler.t_levels));
  exp.finsler.both_signs = get_flag(jn, "finsler", "both_signs", exp.finsler.both_signs);
  exp.finsler.word_maxlen =
      static_cast<int>(get_integer(jn, "finsler", "word_maxlen", exp.finsler.word_maxlen));
  if (exp.finsler.t_levels < 4) fail("finsler.t_levels", "expected >= 4");
  if (exp.finsler.word_maxlen < 1) fail("finsler.word_maxlen", "expected >= 1");
  if (jn.contains("directions")) {
    exp.finsler.directions = get_vector_list(jn, "finsler", "directions", dim);
  } else {
    for (int ax = 0; ax < dim; ++ax) {
      AlgebraVector v = AlgebraVector::Zero(dim);
      v[ax] = 1.0;
      exp.finsler.directions.push_back(v);
    }
  }

  const json& js = section(doc, "semigroup", empty);
  reject_unknown(js, "semigroup", {"maxlens", "probe_factor", "cloud_cap"});
  if (js.contains("maxlens")) {
    const auto& arr = js.at("maxlens");
    if (!arr.is_array() || arr.empty()) fail("semigroup.maxlens", "expected a nonempty array");
    exp.semigroup.maxlens.clear();
    for (const auto& v : arr) {
      if (!v.is_number_integer() || v.get<int>() < 1)
        fail("semigroup.maxlens", "expected integers >= 1");
      exp.semigroup.maxlens.push_back(v.get<int>());
    }
  }
  exp.semigroup.probe_factor =
      static_cast<int>(get_integer(js, "semigroup", "probe_factor", exp.semigroup.probe_factor));
  if (exp.semigroup.probe_factor < 1) fail("semigroup.probe_factor", "expected >= 1");
  exp.semigroup.cloud_cap = static_cast<std::size_t>(get_integer(
      js, "semigroup", "cloud_cap", static_cast<long long>(exp.semigroup.cloud_cap)));

  const json& jv = section(doc, "verify", empty);
  reject_unknown(jv, "verify", {"pairs", "epsilon_factor"});
  exp.verify.pairs = static_cast<int>(get_integer(jv, "verify", "pairs", exp.verify.pairs));
  exp.verify.epsilon_factor = get_number(jv, "verify", "epsilon_factor", exp.verify.epsilon_factor);
  if (exp.verify.pairs < 1) fail("verify.pairs", "expected >= 1");
  if (!(exp.verify.epsilon_factor > 0)) fail("verify.epsilon_factor", "expected > 0");

  {
    auto it = doc.find("seed");
    if (it != doc.end()) {
      if (!it->is_number_unsigned() && !it->is_number_integer())
        fail("seed", "expected a nonnegative integer");
      long long s = it->get<long long>();
      if (s < 0) fail("seed", "expected a nonnegative integer");
      exp.seed = static_cast<std::uint64_t>(s);
    }
  }

  json e;
  e["schema_version"] = 1;
  e["description"] = exp.description;
  e["group"] = {{"kind", group_kind_name(gkind)}, {"dim", dim}};
  e["base_metric"] = {{"kind", metric_kind_name(mkind)}};
  e["generators"] = gen_echo;
  e["window"] = {{"lo", echo_vector(exp.window.lo)},
                 {"hi", echo_vector(exp.window.hi)},
                 {"resolution", json::array()},
                 {"padding", exp.window.padding_radius},
                 {"point_cap", exp.window.point_cap}};
  for (int ax = 0; ax < dim; ++ax) e["window"]["resolution"].push_back(exp.window.resolution[ax]);
  e["adjacency"] = {{"stencil_radius", exp.adjacency.stencil_radius}};
  e["flow"] = {{"tol", exp.flow.tol},
               {"max_iter", exp.flow.max_iter},
               {"divergence_factor", exp.flow.divergence_factor},
               {"retain_iterates", exp.flow.retain_iterates},
               {"monotone_slack", exp.flow.monotone_slack}};
  e["finsler"] = {{"t_levels", exp.finsler.t_levels},
                  {"both_signs", exp.finsler.both_signs},
                  {"directions", echo_vector_list(exp.finsler.directions)},
                  {"word_maxlen", exp.finsler.word_maxlen}};
  e["semigroup"] = {{"maxlens", exp.semigroup.maxlens},
                    {"probe_factor", exp.semigroup.probe_factor},
                    {"cloud_cap", exp.semigroup.cloud_cap}};
  e["verify"] = {{"pairs", exp.verify.pairs}, {"epsilon_factor", exp.verify.epsilon_factor}};
  e["seed"] = exp.seed;
  exp.effective = std::move(e);
  return exp;
}

ResolvedExperiment load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config " + path + ": " + e.what());
  }
  return resolve_config(doc);
}

}  // namespace hausflow
