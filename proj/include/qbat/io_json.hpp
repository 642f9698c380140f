#pragma once

#include <string>

#include <json.hpp>

#include "qbat/choi.hpp"
#include "qbat/state.hpp"
#include "qbat/witness.hpp"

namespace qbat {

// Complex matrices travel as row-major nested arrays of [re, im] pairs.
nlohmann::json matrix_to_json(const Mat& m);
// `where` names the field in error diagnostics.
Mat matrix_from_json(const nlohmann::json& j, const std::string& where);

// {"dims": {"d_a": .., "d_b": ..}, "rho": <matrix>}; validated on load.
nlohmann::json state_to_json(const QuantumState& state);
QuantumState state_from_json(const nlohmann::json& j);

// {"dims": .., "h_local_a": .., "h_local_b": .., "v_int": ..}; validated.
nlohmann::json hamiltonian_to_json(const BipartiteHamiltonian& ham);
BipartiteHamiltonian hamiltonian_from_json(const nlohmann::json& j);

// File loaders; parse errors and validation failures raise InputError with
// the file path in the message.
QuantumState load_state(const std::string& path);
BipartiteHamiltonian load_hamiltonian(const std::string& path);

// Report serialization for the CLI and external consumers.
nlohmann::json pe_sdp_report_to_json(const PeSdpReport& report);
nlohmann::json witness_report_to_json(const WitnessReport& report);

}  // namespace qbat
