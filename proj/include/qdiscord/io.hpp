#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "qdiscord/bloch.hpp"
#include "qdiscord/run.hpp"
#include "qdiscord/states.hpp"

namespace qdiscord::io {

using json = nlohmann::json;

class format_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// State files: {"dim": 9, "matrix": [[[re, im], ... 9], ... 9]}, row-major.

inline Matrix9c matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("matrix"))
    throw format_error("state file: expected an object with 'dim' and 'matrix'");
  if (j.at("dim") != kPairDim)
    throw format_error("state file: 'dim' must be 9, got " + j.at("dim").dump());
  const json& rows = j.at("matrix");
  if (!rows.is_array() || rows.size() != kPairDim)
    throw format_error("state file: 'matrix' must have 9 rows");
  Matrix9c m;
  for (int r = 0; r < kPairDim; ++r) {
    const json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != kPairDim)
      throw format_error("state file: row " + std::to_string(r) + " must have 9 entries");
    for (int c = 0; c < kPairDim; ++c) {
      const json& e = row[static_cast<std::size_t>(c)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw format_error("state file: entry (" + std::to_string(r) + ", " + std::to_string(c) +
                           ") must be a [re, im] pair");
      m(r, c) = complex_t{e[0].get<double>(), e[1].get<double>()};
    }
  }
  return m;
}

inline json matrix_to_json(const Matrix9c& m) {
  json rows = json::array();
  for (int r = 0; r < kPairDim; ++r) {
    json row = json::array();
    for (int c = 0; c < kPairDim; ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return json{{"dim", kPairDim}, {"matrix", rows}};
}

/// Parses a state file. Throws format_error for malformed JSON or shapes and
/// invalid_state (with diagnostics) when the matrix is not a density matrix.
inline DensityMatrix load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw format_error("cannot open state file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw format_error("state file '" + path + "': " + e.what());
  }
  return DensityMatrix::from_matrix(matrix_from_json(j));
}

inline void save_state(const std::string& path, const DensityMatrix& rho) {
  std::ofstream out(path);
  if (!out) throw format_error("cannot write state file '" + path + "'");
  out << matrix_to_json(rho.matrix()).dump(2) << '\n';
}

// Run records.

inline json to_json(const RunRecord& r) {
  json params = json::object();
  for (const auto& [k, v] : r.spec.params) params[k] = v;
  return json{{"family", std::string(family_name(r.spec.family))},
              {"params", params},
              {"param_name", r.param_name},
              {"param_value", r.param_value},
              {"d1", r.d1},
              {"d2", r.d2},
              {"negativity", r.negativity},
              {"argmin_params", {r.argmin.theta, r.argmin.phi, r.argmin.chi, r.argmin.psi}},
              {"oracle_residual", r.oracle_residual},
              {"converged", r.converged},
              {"wall_time", r.wall_time}};
}

inline RunRecord record_from_json(const json& j) {
  RunRecord r;
  r.spec.family = parse_family(j.at("family").get<std::string>());
  for (const auto& [k, v] : j.at("params").items()) r.spec.params[k] = v.get<double>();
  r.param_name = j.at("param_name").get<std::string>();
  r.param_value = j.at("param_value").get<double>();
  r.d1 = j.at("d1").get<double>();
  r.d2 = j.at("d2").get<double>();
  r.negativity = j.at("negativity").get<double>();
  const json& a = j.at("argmin_params");
  r.argmin = {a.at(0).get<double>(), a.at(1).get<double>(), a.at(2).get<double>(), a.at(3).get<double>()};
  r.oracle_residual = j.at("oracle_residual").get<double>();
  r.converged = j.at("converged").get<bool>();
  r.wall_time = j.at("wall_time").get<double>();
  return r;
}

inline constexpr const char* kCsvHeader =
    "family,param_name,param_value,d1,d2,negativity,theta,phi,chi,psi,oracle_residual,converged";

/// Shortest round-trip decimal for a double.
inline std::string format_double(double v) {
  char buf[32];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

inline std::string csv_row(const RunRecord& r) {
  std::ostringstream os;
  os << family_name(r.spec.family) << ',' << r.param_name << ',' << format_double(r.param_value) << ','
     << format_double(r.d1) << ',' << format_double(r.d2) << ',' << format_double(r.negativity) << ','
     << format_double(r.argmin.theta) << ',' << format_double(r.argmin.phi) << ','
     << format_double(r.argmin.chi) << ',' << format_double(r.argmin.psi) << ','
     << format_double(r.oracle_residual) << ',' << (r.converged ? "true" : "false");
  return os.str();
}

inline void write_csv(std::ostream& os, const std::vector<RunRecord>& records) {
  os << kCsvHeader << '\n';
  for (const RunRecord& r : records) os << csv_row(r) << '\n';
}

inline void write_table(std::ostream& os, const std::vector<RunRecord>& records) {
  os << std::left << std::setw(10) << "family" << std::setw(8) << "param" << std::right
     << std::setw(12) << "value" << std::setw(14) << "d1" << std::setw(14) << "d2" << std::setw(14)
     << "negativity" << std::setw(12) << "residual" << std::setw(11) << "converged" << '\n';
  for (const RunRecord& r : records) {
    os << std::left << std::setw(10) << family_name(r.spec.family) << std::setw(8) << r.param_name
       << std::right << std::fixed << std::setprecision(6) << std::setw(12) << r.param_value
       << std::setprecision(10) << std::setw(14) << r.d1 << std::setw(14) << r.d2 << std::setw(14)
       << r.negativity << std::scientific << std::setprecision(2) << std::setw(12)
       << r.oracle_residual << std::setw(11) << (r.converged ? "yes" : "no") << '\n';
    os.unsetf(std::ios::floatfield);
  }
}

}  // namespace qdiscord::io
