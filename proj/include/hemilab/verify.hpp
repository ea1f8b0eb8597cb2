#pragma once

#include <string>
#include <vector>

#include "hemilab/filtration.hpp"
#include "hemilab/json_io.hpp"

namespace hemilab {

extern const char* const kSchemaTag;  // "hemilab/v1"

/// A verification job: a building, a pole family, a set of checks, a seed,
/// and bounds. Deterministic given (spec, seed).
struct VerificationJob {
    Json building_spec;
    std::string poles = "all";  // "all" | "representative" | "explicit"
    std::vector<Json> pole_specs;
    std::vector<std::string> checks = {"theorem-a", "theorem-b", "lemmas-metric",
                                       "lemmas-filtration", "lemmas-cones", "solomon-tits"};
    std::uint64_t seed = 1;
    std::size_t max_cells = 200000;
    std::size_t samples = 10000;
    int jobs = 0;  // 0 = available parallelism

    static VerificationJob from_json(const Json& j);
    Json to_json() const;
};

struct CheckEntry {
    std::string name;
    std::string status;  // pass | fail | advisory | skipped
    long long instances = 0;
    OrderedJson evidence = OrderedJson::object();
};

struct VerdictReport {
    Json job_echo;
    std::vector<CheckEntry> entries;

    bool all_ok() const;  // no entry failed
    OrderedJson to_json() const;
    std::string to_string() const;
};

VerdictReport run_verification(const VerificationJob& job);

/// The pole family of a job over a building: all vertices and all edge
/// barycenters, one representative per vertex type plus one extreme-type
/// edge, or the explicit list. Names are stable identifiers.
std::vector<std::pair<std::string, Pole>> poles_for_job(const VerificationJob& job,
                                                        const Building& b);

}  // namespace hemilab
