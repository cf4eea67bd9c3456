#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "altsieve/repdata.hpp"
#include "altsieve/sieve.hpp"
#include "altsieve/util.hpp"

namespace altsieve::screener {

enum class ModuleKind { VMin, LG, Both };

std::string kind_name(ModuleKind k);

struct CaseConfig {
    int group_n = 0;
    std::string cover = "none";  // none | double | triple
    std::string target;          // F4, E6, E7, E8
    int prime = 0;
    ModuleKind kind = ModuleKind::LG;
    std::string trace_file;  // optional extended trace constraints
    bool strict_parity = false;
    bool collapse_out_orbits = false;
    uint64_t seed = 1;
};

struct Verdict {
    enum Type { FixesLine, EliminatedByJordan, Survives } type = Survives;
    std::string rule;
    std::string detail;
    std::vector<std::string> caveats;
};

struct Candidate {
    FactorMultiset factors;
    Verdict verdict;
    std::vector<std::string> structures;  // surviving realizations (direct sums of shapes)
    std::vector<std::string> jordan_types;
};

struct PairCandidate {
    FactorMultiset vmin, lg;
    Verdict verdict;
    std::vector<std::string> vmin_structures, lg_structures;
    std::vector<std::string> classes;  // unipotent classes consistent with both sides
};

struct CaseReport {
    CaseConfig config;
    bool ran = false;
    std::string skip_reason;  // set when the configuration is not catalogued
    std::vector<std::string> provenance;
    std::vector<Candidate> vmin_candidates, lg_candidates;
    std::vector<PairCandidate> pairs;  // kind == Both

    std::vector<const PairCandidate*> survivors() const;
};

CaseReport run_case(const CaseConfig& cfg);

std::string render_text(const CaseReport& r);
std::string render_json(const CaseReport& r);

}  // namespace altsieve::screener
