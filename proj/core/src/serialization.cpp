#include "pmst/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace pmst {

using nlohmann::json;

namespace {

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InvalidInput(where + ": complex values are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

json ket_to_json(const PureState& s) {
  json out = json::array();
  for (int i = 0; i < s.dim(); ++i) out.push_back(complex_to_json(s.amplitudes()[i]));
  return out;
}

PureState ket_from_json(const json& j, int dim, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw InvalidInput(where + ": ket must have " + std::to_string(dim) +
                       " amplitudes");
  Vector v(dim);
  for (int i = 0; i < dim; ++i)
    v[i] = complex_from_json(j[i], where + "[" + std::to_string(i) + "]");
  try {
    return PureState(std::move(v));
  } catch (const InvalidInput& e) {
    throw InvalidInput(where + ": " + e.what());
  }
}

json matrix_to_json(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Matrix matrix_from_json(const json& j, int dim, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw InvalidInput(where + ": matrix must have " + std::to_string(dim) + " rows");
  Matrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      throw InvalidInput(where + ": row " + std::to_string(r) + " must have " +
                         std::to_string(dim) + " entries");
    for (int c = 0; c < dim; ++c)
      m(r, c) = complex_from_json(row[c], where + "[" + std::to_string(r) + "][" +
                                              std::to_string(c) + "]");
  }
  return m;
}

// +-infinity serializes as null (chain values at infeasible noise)
json finite_to_json(double x) {
  if (std::isfinite(x)) return json(x);
  return json(nullptr);
}

double finite_from_json(const json& j, const std::string& where) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  if (!j.is_number()) throw InvalidInput(where + ": expected a number or null");
  return j.get<double>();
}

const json& field(const json& j, const char* name, const std::string& where) {
  const auto it = j.find(name);
  if (it == j.end())
    throw InvalidInput(where + ": missing field '" + name + "'");
  return *it;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::vector<PureState> ScenarioPayload::require_kets() const {
  std::vector<PureState> out;
  out.reserve(kets.size());
  for (std::size_t i = 0; i < kets.size(); ++i) {
    if (!kets[i])
      throw InvalidInput("states[" + std::to_string(i) +
                         "]: a ket is required here, not a density matrix");
    out.push_back(*kets[i]);
  }
  return out;
}

WeightedEnsemble ScenarioPayload::as_ensemble(bool completed,
                                              const Tolerances& tol) const {
  if (weights.empty())
    throw InvalidInput("weights: required to form a weighted ensemble");
  return WeightedEnsemble(require_kets(), weights, completed, tol);
}

ScenarioPayload ScenarioPayload::from_ensemble(const WeightedEnsemble& e) {
  ScenarioPayload out;
  out.dimension = e.dim;
  for (const auto& s : e.states) {
    out.kets.emplace_back(s);
    out.states.emplace_back(s);
  }
  out.weights = e.weights;
  return out;
}

std::string scenario_to_json(const ScenarioPayload& s) {
  json j;
  j["dimension"] = s.dimension;
  json states = json::array();
  for (std::size_t i = 0; i < s.states.size(); ++i) {
    json entry;
    if (i < s.kets.size() && s.kets[i])
      entry["ket"] = ket_to_json(*s.kets[i]);
    else
      entry["rho"] = matrix_to_json(s.states[i].matrix());
    states.push_back(std::move(entry));
  }
  j["states"] = std::move(states);
  if (!s.weights.empty()) j["weights"] = s.weights;
  if (!s.povms.empty()) {
    json povms = json::array();
    for (const auto& p : s.povms) {
      json elems = json::array();
      for (const auto& e : p.elements()) elems.push_back(matrix_to_json(e.matrix()));
      povms.push_back(std::move(elems));
    }
    j["povms"] = std::move(povms);
  }
  if (s.seed) j["metadata"]["seed"] = *s.seed;
  return j.dump(2) + "\n";
}

ScenarioPayload scenario_from_json(const std::string& text) {
  const json j = parse(text);
  ScenarioPayload out;
  const json& jd = field(j, "dimension", "scenario");
  if (!jd.is_number_integer() || jd.get<int>() < 2)
    throw InvalidInput("dimension: must be an integer >= 2");
  out.dimension = jd.get<int>();

  const json& js = field(j, "states", "scenario");
  if (!js.is_array()) throw InvalidInput("states: must be an array");
  for (std::size_t i = 0; i < js.size(); ++i) {
    const std::string where = "states[" + std::to_string(i) + "]";
    const json& entry = js[i];
    if (entry.contains("ket")) {
      PureState ket = ket_from_json(entry["ket"], out.dimension, where + ".ket");
      out.states.emplace_back(ket);
      out.kets.emplace_back(std::move(ket));
    } else if (entry.contains("rho")) {
      Matrix m = matrix_from_json(entry["rho"], out.dimension, where + ".rho");
      try {
        out.states.emplace_back(HermitianOperator(std::move(m)));
      } catch (const InvalidInput& e) {
        throw InvalidInput(where + ".rho: " + e.what());
      }
      out.kets.emplace_back(std::nullopt);
    } else {
      throw InvalidInput(where + ": needs either 'ket' or 'rho'");
    }
  }

  if (j.contains("weights")) {
    const json& jw = j["weights"];
    if (!jw.is_array() || jw.size() != out.states.size())
      throw InvalidInput("weights: must list one weight per state");
    for (std::size_t i = 0; i < jw.size(); ++i) {
      if (!jw[i].is_number())
        throw InvalidInput("weights[" + std::to_string(i) + "]: not a number");
      out.weights.push_back(jw[i].get<double>());
    }
  }

  if (j.contains("povms")) {
    const json& jp = j["povms"];
    if (!jp.is_array()) throw InvalidInput("povms: must be an array");
    for (std::size_t p = 0; p < jp.size(); ++p) {
      const std::string where = "povms[" + std::to_string(p) + "]";
      if (!jp[p].is_array()) throw InvalidInput(where + ": must list elements");
      std::vector<HermitianOperator> elems;
      for (std::size_t b = 0; b < jp[p].size(); ++b) {
        try {
          elems.emplace_back(matrix_from_json(
              jp[p][b], out.dimension, where + "[" + std::to_string(b) + "]"));
        } catch (const InvalidInput& e) {
          throw InvalidInput(std::string(e.what()));
        }
      }
      try {
        out.povms.emplace_back(std::move(elems));
      } catch (const InvalidInput& e) {
        throw InvalidInput(where + ": " + e.what());
      }
    }
  }

  if (j.contains("metadata") && j["metadata"].contains("seed")) {
    const json& seed = j["metadata"]["seed"];
    if (!seed.is_number_unsigned())
      throw InvalidInput("metadata.seed: must be a nonnegative integer");
    out.seed = seed.get<std::uint64_t>();
  }
  return out;
}

std::string behavior_to_json(const Behavior& b) {
  json j;
  j["X"] = b.X();
  j["Y"] = b.Y();
  j["B"] = b.B();
  json table = json::array();
  for (int x = 0; x < b.X(); ++x) {
    json per_y = json::array();
    for (int y = 0; y < b.Y(); ++y) {
      json cell = json::array();
      for (int bb = 0; bb < b.B(); ++bb) cell.push_back(b.p(x, y, bb));
      per_y.push_back(std::move(cell));
    }
    table.push_back(std::move(per_y));
  }
  j["table"] = std::move(table);
  return j.dump(2) + "\n";
}

Behavior behavior_from_json(const std::string& text) {
  const json j = parse(text);
  const int x = field(j, "X", "behavior").get<int>();
  const int y = field(j, "Y", "behavior").get<int>();
  const int b = field(j, "B", "behavior").get<int>();
  const json& table = field(j, "table", "behavior");
  if (!table.is_array() || static_cast<int>(table.size()) != x)
    throw InvalidInput("table: must have X rows");
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(x) * y * b);
  for (int xx = 0; xx < x; ++xx) {
    const json& per_y = table[xx];
    if (!per_y.is_array() || static_cast<int>(per_y.size()) != y)
      throw InvalidInput("table[" + std::to_string(xx) + "]: must have Y cells");
    for (int yy = 0; yy < y; ++yy) {
      const json& cell = per_y[yy];
      if (!cell.is_array() || static_cast<int>(cell.size()) != b)
        throw InvalidInput("table[" + std::to_string(xx) + "][" +
                           std::to_string(yy) + "]: must have B entries");
      for (int bb = 0; bb < b; ++bb) {
        if (!cell[bb].is_number())
          throw InvalidInput("table[" + std::to_string(xx) + "][" +
                             std::to_string(yy) + "][" + std::to_string(bb) +
                             "]: not a number");
        flat.push_back(cell[bb].get<double>());
      }
    }
  }
  try {
    return Behavior(x, y, b, std::move(flat));
  } catch (const InvalidInput& e) {
    throw InvalidInput(std::string("behavior: ") + e.what());
  }
}

namespace {

json chain_to_json_obj(const DeltaChain& c) {
  json j;
  j["delta_o"] = c.delta_o;
  j["delta_p"] = c.delta_p;
  j["dim"] = c.dim;
  j["f"] = c.f;
  j["dz_prime"] = finite_to_json(c.dz_prime);
  j["dz"] = finite_to_json(c.dz);
  j["dx_prime"] = finite_to_json(c.dx_prime);
  j["dx"] = finite_to_json(c.dx);
  j["dy"] = finite_to_json(c.dy);
  j["dxx"] = finite_to_json(c.dxx);
  j["dyy"] = finite_to_json(c.dyy);
  json dpsi = json::array();
  for (double v : c.dpsi) dpsi.push_back(finite_to_json(v));
  j["dpsi"] = std::move(dpsi);
  j["cond1"] = c.cond1;
  j["cond3"] = c.cond3;
  j["cond5"] = c.cond5;
  j["cond5_lhs"] = finite_to_json(c.cond5_lhs);
  return j;
}

DeltaChain chain_from_json_obj(const json& j) {
  DeltaChain c;
  c.delta_o = field(j, "delta_o", "chain").get<double>();
  c.delta_p = field(j, "delta_p", "chain").get<double>();
  c.dim = field(j, "dim", "chain").get<int>();
  for (const auto& v : field(j, "f", "chain")) c.f.push_back(v.get<double>());
  c.dz_prime = finite_from_json(field(j, "dz_prime", "chain"), "dz_prime");
  c.dz = finite_from_json(field(j, "dz", "chain"), "dz");
  c.dx_prime = finite_from_json(field(j, "dx_prime", "chain"), "dx_prime");
  c.dx = finite_from_json(field(j, "dx", "chain"), "dx");
  c.dy = finite_from_json(field(j, "dy", "chain"), "dy");
  c.dxx = finite_from_json(field(j, "dxx", "chain"), "dxx");
  c.dyy = finite_from_json(field(j, "dyy", "chain"), "dyy");
  for (const auto& v : field(j, "dpsi", "chain"))
    c.dpsi.push_back(finite_from_json(v, "dpsi"));
  c.cond1 = field(j, "cond1", "chain").get<bool>();
  c.cond3 = field(j, "cond3", "chain").get<bool>();
  c.cond5 = field(j, "cond5", "chain").get<bool>();
  c.cond5_lhs = finite_from_json(field(j, "cond5_lhs", "chain"), "cond5_lhs");
  return c;
}

}  // namespace

std::string delta_chain_to_json(const DeltaChain& c) {
  return chain_to_json_obj(c).dump(2) + "\n";
}

DeltaChain delta_chain_from_json(const std::string& text) {
  return chain_from_json_obj(parse(text));
}

std::string report_to_json(const ReconstructionReport& r) {
  json j;
  j["symmetry"]["unitary"] = matrix_to_json(r.symmetry.unitary);
  j["symmetry"]["conjugate"] = r.symmetry.conjugate;
  j["chain"] = chain_to_json_obj(r.chain);
  json checks = json::array();
  for (const auto& c : r.checks) {
    json entry;
    entry["label"] = c.label;
    entry["distance"] = c.distance;
    entry["bound"] = finite_to_json(c.bound);
    entry["pass"] = c.pass;
    checks.push_back(std::move(entry));
  }
  j["checks"] = std::move(checks);
  j["all_feasible"] = r.all_feasible;
  j["all_within_bounds"] = r.all_within_bounds;
  j["max_distance"] = r.max_distance;
  return j.dump(2) + "\n";
}

ReconstructionReport report_from_json(const std::string& text) {
  const json j = parse(text);
  ReconstructionReport r;
  const json& sym = field(j, "symmetry", "report");
  const json& u = field(sym, "unitary", "symmetry");
  const int d = static_cast<int>(u.size());
  r.symmetry.unitary = matrix_from_json(u, d, "symmetry.unitary");
  r.symmetry.conjugate = field(sym, "conjugate", "symmetry").get<bool>();
  r.chain = chain_from_json_obj(field(j, "chain", "report"));
  for (const auto& c : field(j, "checks", "report")) {
    StateCheck sc;
    sc.label = field(c, "label", "check").get<std::string>();
    sc.distance = field(c, "distance", "check").get<double>();
    sc.bound = finite_from_json(field(c, "bound", "check"), "bound");
    sc.pass = field(c, "pass", "check").get<bool>();
    r.checks.push_back(std::move(sc));
  }
  r.all_feasible = field(j, "all_feasible", "report").get<bool>();
  r.all_within_bounds = field(j, "all_within_bounds", "report").get<bool>();
  r.max_distance = field(j, "max_distance", "report").get<double>();
  return r;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write file: " + path);
  out << content;
}

std::string content_digest(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace pmst
