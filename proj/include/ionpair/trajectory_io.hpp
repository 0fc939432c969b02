#pragma once

#include <iosfwd>
#include <string>

#include "ionpair/engine.hpp"

namespace ionpair {

inline constexpr const char* kToolVersion = "ionpair 0.1.0";

/// CSV with a #-prefixed header block, rows (iteration, basis, bitstring,
/// probability) sorted by (iteration, basis). Probabilities are printed with
/// 17 significant digits, so identical runs produce identical bytes.
/// Throws if any per-iteration distribution is off unit sum by more than 1e-9.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const std::string& scheme);

/// Structured mirror of the same records.
void write_trajectory_json(std::ostream& out, const Trajectory& traj, const std::string& scheme);

}  // namespace ionpair
