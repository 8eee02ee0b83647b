#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ratlink/lift.hpp"

namespace ratlink {

// One row of the sweep table.  Jones and determinant columns are filled only
// up to the requested ceiling; notes record anything out of the ordinary
// (projection perturbations, the p=2q pair beating the generic count).
struct VerificationRow {
    long long p = 0, q = 0;
    int components = 0;
    long long baseline_total = 0;
    long long final_total = 0;
    long long z_count = 0;
    bool regular_circuit = false;
    bool embedding_valid = false;
    bool jones_checked = false;
    bool jones_match = false;
    std::optional<long long> det;
    bool det_match = false;
    bool beats_general_bound = false;  // 2p+6 < 3p+2
    bool ok = false;
    std::string notes;
};

struct VerifyOptions {
    long long max_p = 10;
    long long jones_max_p = 0;  // 0: skip topological columns
    int threads = 0;            // 0: hardware default
};

struct VerifyResult {
    std::vector<VerificationRow> rows;
    bool all_ok = true;
};

VerifyResult run_verify(const VerifyOptions& opts);

std::string format_table(const VerifyResult& r);

}  // namespace ratlink
