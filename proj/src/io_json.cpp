#include "qbat/io_json.hpp"

#include <cmath>
#include <fstream>

#include "qbat/errors.hpp"

namespace qbat {

using nlohmann::json;

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty())
    throw InputError(where + ": expected a non-empty array of rows");
  const size_t nrows = j.size();
  size_t ncols = 0;
  Mat m;
  for (size_t i = 0; i < nrows; ++i) {
    const json& row = j[i];
    if (!row.is_array())
      throw InputError(where + ": row " + std::to_string(i) +
                       " is not an array");
    if (i == 0) {
      ncols = row.size();
      if (ncols == 0)
        throw InputError(where + ": row 0 is empty");
      m = Mat::Zero(static_cast<Eigen::Index>(nrows),
                    static_cast<Eigen::Index>(ncols));
    } else if (row.size() != ncols) {
      throw InputError(where + ": row " + std::to_string(i) + " has " +
                       std::to_string(row.size()) + " entries, expected " +
                       std::to_string(ncols));
    }
    for (size_t k = 0; k < ncols; ++k) {
      const json& e = row[k];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
          !e[1].is_number())
        throw InputError(where + ": entry (" + std::to_string(i) + "," +
                         std::to_string(k) + ") is not an [re, im] pair");
      const double re = e[0].get<double>();
      const double im = e[1].get<double>();
      if (!std::isfinite(re) || !std::isfinite(im))
        throw InputError(where + ": entry (" + std::to_string(i) + "," +
                         std::to_string(k) + ") is not finite");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          Complex(re, im);
    }
  }
  return m;
}

namespace {

std::pair<int, int> dims_from_json(const json& j) {
  if (!j.contains("dims") || !j["dims"].is_object() ||
      !j["dims"].contains("d_a") || !j["dims"].contains("d_b"))
    throw InputError("dims: expected an object with d_a and d_b");
  const json& d = j["dims"];
  if (!d["d_a"].is_number_integer() || !d["d_b"].is_number_integer())
    throw InputError("dims: d_a and d_b must be integers");
  int da = d["d_a"].get<int>();
  int db = d["d_b"].get<int>();
  if (da < 2 || db < 2)
    throw InputError("dims: local dimensions must be at least 2");
  return {da, db};
}

void require_square(const Mat& m, int n, const std::string& where) {
  if (m.rows() != n || m.cols() != n)
    throw InputError(where + ": expected a " + std::to_string(n) + "x" +
                     std::to_string(n) + " matrix, got " +
                     std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  return j;
}

}  // namespace

json state_to_json(const QuantumState& state) {
  return json{{"dims", {{"d_a", state.d_a}, {"d_b", state.d_b}}},
              {"rho", matrix_to_json(state.rho)}};
}

QuantumState state_from_json(const json& j) {
  auto [da, db] = dims_from_json(j);
  if (!j.contains("rho")) throw InputError("state: missing field rho");
  QuantumState st;
  st.d_a = da;
  st.d_b = db;
  st.rho = matrix_from_json(j["rho"], "rho");
  require_square(st.rho, da * db, "rho");
  st.validate();
  return st;
}

json hamiltonian_to_json(const BipartiteHamiltonian& ham) {
  return json{{"dims", {{"d_a", ham.d_a}, {"d_b", ham.d_b}}},
              {"h_local_a", matrix_to_json(ham.h_local_a)},
              {"h_local_b", matrix_to_json(ham.h_local_b)},
              {"v_int", matrix_to_json(ham.v_int)}};
}

BipartiteHamiltonian hamiltonian_from_json(const json& j) {
  auto [da, db] = dims_from_json(j);
  for (const char* field : {"h_local_a", "h_local_b", "v_int"})
    if (!j.contains(field))
      throw InputError(std::string("hamiltonian: missing field ") + field);
  BipartiteHamiltonian ham;
  ham.d_a = da;
  ham.d_b = db;
  ham.h_local_a = matrix_from_json(j["h_local_a"], "h_local_a");
  ham.h_local_b = matrix_from_json(j["h_local_b"], "h_local_b");
  ham.v_int = matrix_from_json(j["v_int"], "v_int");
  require_square(ham.h_local_a, da, "h_local_a");
  require_square(ham.h_local_b, db, "h_local_b");
  require_square(ham.v_int, da * db, "v_int");
  ham.validate();
  return ham;
}

QuantumState load_state(const std::string& path) {
  try {
    return state_from_json(load_json_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

BipartiteHamiltonian load_hamiltonian(const std::string& path) {
  try {
    return hamiltonian_from_json(load_json_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

json pe_sdp_report_to_json(const PeSdpReport& report) {
  return json{{"upper_bound", report.upper_bound},
              {"global_bound", report.global_bound},
              {"usable_bound", report.usable_bound},
              {"sdp_branch", report.sdp_branch},
              {"purity", report.purity},
              {"objective_value", report.objective_value},
              {"ppt_shortcut", report.ppt_shortcut},
              {"solver",
               {{"iterations", report.diagnostics.iterations},
                {"gap", report.diagnostics.gap},
                {"primal_residual", report.diagnostics.primal_residual},
                {"dual_residual", report.diagnostics.dual_residual},
                {"primal_objective", report.diagnostics.primal_objective},
                {"dual_objective", report.diagnostics.dual_objective}}}};
}

json witness_report_to_json(const WitnessReport& report) {
  return json{{"parallel_capacity", report.parallel_capacity},
              {"ceiling_c1", report.ceiling_c1},
              {"h_norm_inf", report.h_norm_inf},
              {"gap_plus", report.gap_plus},
              {"gap_minus", report.gap_minus},
              {"capacity_detects", report.capacity_detects},
              {"fluctuation_detects", report.fluctuation_detects},
              {"hamiltonian_discriminates", report.hamiltonian_discriminates}};
}

}  // namespace qbat
