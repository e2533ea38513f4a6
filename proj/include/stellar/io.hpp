#pragma once

// File formats and machine-readable reports.
//
// State file        {"schema":1, "twice_s":n, "amplitudes":[[re,im],...]}
// Constellation     {"schema":1, "twice_s":n,
//                    "points":[{"alpha":a,"beta":b},...]}
//
// Amplitudes are listed ascending in the magnetic quantum number.  States
// are rays: amplitudes are normalized on read, so any nonzero scale of the
// same vector names the same state.

#include <cstdint>
#include <string>
#include <vector>

#include "stellar/majorana.hpp"
#include "stellar/spin.hpp"
#include "stellar/symmetric.hpp"
#include "stellar/types.hpp"

namespace stellar::io {

inline constexpr int kSchemaVersion = 1;

SpinState parse_state(const std::string& text);
Constellation parse_constellation(const std::string& text);
SpinState read_state(const std::string& path);
Constellation read_constellation(const std::string& path);

/// `self_check` >= 0 adds a "round_trip_overlap" field.
std::string state_text(const SpinState& s, Real self_check = -1);
std::string constellation_text(const Constellation& c, Real self_check = -1);

/// Whole-file write; the content is assembled first so no partial file is
/// left behind on earlier failures.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

std::string equivalence_json(const std::vector<EquivalenceReport>& records);
std::string equivalence_csv(const std::vector<EquivalenceReport>& records);

struct SimulationReport {
  std::string mode;  // "quantum" or "classical"
  int twice_s = 0;
  bool coherent_input = true;
  int twice_m = 0;        // coherent input
  VectorC amplitudes;     // general input
  Real alpha = 0;
  Real beta = 0;
  long trials = 0;
  std::uint64_t seed = 0;
  std::vector<long> histogram;  // counts, ascending M'
  std::vector<Real> exact;      // probabilities, ascending M'
  Real max_abs_deviation = 0;   // max |count/trials - exact|
  long lambda_draws = 0;        // classical mode only
};

std::string simulation_json(const SimulationReport& r);
std::string simulation_csv(const SimulationReport& r);

}  // namespace stellar::io
