#include "ionpair/trajectory_io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace ionpair {

namespace {

std::string format_probability(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", p);
    return buf;
}

void check_row_sums(const Trajectory& traj) {
    for (std::size_t n = 0; n < traj.records.size(); ++n) {
        double sum = 0.0;
        for (double p : traj.records[n]) sum += p;
        if (std::abs(sum - 1.0) > 1e-9)
            throw std::runtime_error("trajectory record " + std::to_string(n) +
                                     " does not sum to 1");
    }
}

std::string bitstring_of(int qubits, std::uint64_t basis) {
    std::string s(static_cast<std::size_t>(qubits), '0');
    for (int b = 0; b < qubits; ++b)
        if (basis >> (qubits - 1 - b) & 1) s[static_cast<std::size_t>(b)] = '1';
    return s;
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const std::string& scheme) {
    check_row_sums(traj);
    out << "# q: " << traj.qubits << '\n';
    out << "# marked: " << traj.marked.bitstring() << '\n';
    out << "# scheme: " << scheme << '\n';
    out << "# tool: " << kToolVersion << '\n';
    out << "iteration,basis,bitstring,probability\n";
    for (std::size_t n = 0; n < traj.records.size(); ++n)
        for (std::size_t i = 0; i < traj.records[n].size(); ++i)
            out << n << ',' << i << ',' << bitstring_of(traj.qubits, i) << ','
                << format_probability(traj.records[n][i]) << '\n';
}

void write_trajectory_json(std::ostream& out, const Trajectory& traj, const std::string& scheme) {
    check_row_sums(traj);
    nlohmann::ordered_json doc;
    doc["q"] = traj.qubits;
    doc["marked"] = traj.marked.bitstring();
    doc["scheme"] = scheme;
    doc["tool"] = kToolVersion;
    auto& records = doc["records"] = nlohmann::ordered_json::array();
    for (std::size_t n = 0; n < traj.records.size(); ++n) {
        nlohmann::ordered_json rec;
        rec["iteration"] = n;
        rec["probabilities"] = traj.records[n];
        records.push_back(std::move(rec));
    }
    out << doc.dump(2) << '\n';
}

}  // namespace ionpair
