#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "qbat/errors.hpp"
#include "qbat/io_json.hpp"
#include "qbat/rng.hpp"
#include "qbat/sampling.hpp"

using namespace qbat;
using nlohmann::json;

namespace {

std::string write_temp(const std::string& name, const json& j) {
  std::string path = "/tmp/qbat_io_" + name + ".json";
  std::ofstream out(path);
  out << j.dump(2);
  return path;
}

}  // namespace

TEST_CASE("matrix round trip preserves every entry") {
  Rng rng(3, "iomat");
  Mat m(3, 4);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = Complex(rng.gaussian(), rng.gaussian());
  Mat back = matrix_from_json(matrix_to_json(m), "m");
  CHECK((back - m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("malformed matrices produce located diagnostics") {
  CHECK_THROWS_WITH_AS(matrix_from_json(json::array(), "m"),
                       doctest::Contains("m:"), InputError);
  json ragged = json::parse("[[[1,0],[2,0]],[[3,0]]]");
  CHECK_THROWS_WITH_AS(matrix_from_json(ragged, "m"),
                       doctest::Contains("row 1"), InputError);
  json scalar_entry = json::parse("[[1.0]]");
  CHECK_THROWS_WITH_AS(matrix_from_json(scalar_entry, "m"),
                       doctest::Contains("(0,0)"), InputError);
  json nan_entry = json::parse("[[[1,0]]]");
  nan_entry[0][0][0] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_WITH_AS(matrix_from_json(nan_entry, "m"),
                       doctest::Contains("finite"), InputError);
}

TEST_CASE("state file round trip and validation") {
  Rng rng(5, "iostate");
  QuantumState st = ginibre_state(2, 3, rng);
  std::string path = write_temp("state", state_to_json(st));
  QuantumState back = load_state(path);
  CHECK(back.d_a == 2);
  CHECK(back.d_b == 3);
  CHECK((back.rho - st.rho).cwiseAbs().maxCoeff() < 1e-15);

  json bad = state_to_json(st);
  bad["rho"][0][0] = {0.9, 0.0};  // trace off by 0.1
  CHECK_THROWS_AS(state_from_json(bad), InputError);

  json wrong_size = state_to_json(st);
  wrong_size["dims"]["d_b"] = 2;
  CHECK_THROWS_WITH_AS(state_from_json(wrong_size),
                       doctest::Contains("expected a 4x4"), InputError);

  CHECK_THROWS_WITH_AS(load_state("/tmp/qbat_io_missing.json"),
                       doctest::Contains("cannot open"), InputError);
}

TEST_CASE("hamiltonian file round trip and validation") {
  Rng rng(7, "ioham");
  BipartiteHamiltonian ham = random_hamiltonian(3, 2, true, rng);
  std::string path = write_temp("ham", hamiltonian_to_json(ham));
  BipartiteHamiltonian back = load_hamiltonian(path);
  CHECK(back.d_a == 3);
  CHECK(back.d_b == 2);
  CHECK((back.total() - ham.total()).cwiseAbs().maxCoeff() < 1e-15);

  json bad = hamiltonian_to_json(ham);
  bad.erase("v_int");
  CHECK_THROWS_WITH_AS(hamiltonian_from_json(bad),
                       doctest::Contains("v_int"), InputError);

  // an interaction with a non-vanishing partial trace is rejected
  json dirty = hamiltonian_to_json(ham);
  dirty["v_int"][0][0] = {1.0, 0.0};
  CHECK_THROWS_AS(hamiltonian_from_json(dirty), InputError);
}

TEST_CASE("parse errors carry the file path") {
  std::string path = "/tmp/qbat_io_garbage.json";
  std::ofstream(path) << "{ not json";
  CHECK_THROWS_WITH_AS(load_state(path), doctest::Contains(path.c_str()),
                       InputError);
}

TEST_CASE("report serialization exposes every field") {
  PeSdpReport rep;
  rep.upper_bound = 1.5;
  rep.global_bound = 2.0;
  rep.usable_bound = 1.5;
  rep.sdp_branch = true;
  rep.purity = 0.25;
  rep.ppt_shortcut = true;
  rep.diagnostics.iterations = 9;
  json j = pe_sdp_report_to_json(rep);
  CHECK(j["upper_bound"] == 1.5);
  CHECK(j["usable_bound"] == 1.5);
  CHECK(j["sdp_branch"] == true);
  CHECK(j["ppt_shortcut"] == true);
  CHECK(j["solver"]["iterations"] == 9);

  WitnessReport w;
  w.parallel_capacity = 2.2;
  w.ceiling_c1 = 2.0;
  w.capacity_detects = true;
  json wj = witness_report_to_json(w);
  CHECK(wj["parallel_capacity"] == 2.2);
  CHECK(wj["capacity_detects"] == true);
  CHECK(wj["fluctuation_detects"] == false);
  CHECK(wj.contains("hamiltonian_discriminates"));
}
