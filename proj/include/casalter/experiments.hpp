#pragma once

#include <string>
#include <vector>

#include "casalter/config.hpp"

namespace casalter::cli {

struct ResultRecord {
    std::vector<std::string> header;  // "key = value" provenance lines
    std::vector<std::string> notes;   // extra '#' summary lines (fits, scales)
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::string summary;  // one stdout line
};

// Runs the configured experiment and assembles the record (no I/O).
ResultRecord run_experiment(const RunConfig& cfg);

// Atomic write (temp file + rename) in the configured format. Throws
// std::ios_base::failure / std::filesystem errors on I/O problems.
void write_record(const ResultRecord& rec, const RunConfig& cfg);

// Serialized data rows only (no '#' lines); what the determinism contract
// compares.
std::string csv_rows(const ResultRecord& rec);

}  // namespace casalter::cli
