#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace altsieve {

// Error taxonomy. Every throwing precondition in the library uses one of
// these so callers (and the CLI) can report configuration problems without
// pattern-matching message strings.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedField : Error { using Error::Error; };
struct UnsupportedDegree : Error { using Error::Error; };
struct IncompatibleModules : Error { using Error::Error; };
struct PreconditionViolated : Error { using Error::Error; };
struct NotCatalogued : Error { using Error::Error; };
struct UnknownSimple : Error { using Error::Error; };
struct AmbiguousLabel : Error { using Error::Error; };
struct UnknownEdge : Error { using Error::Error; };
struct Unsupported : Error { using Error::Error; };
struct MissingTypeData : Error { using Error::Error; };
struct NotPRestricted : Error { using Error::Error; };
struct ParseError : Error {
    int line = 0;
    ParseError(const std::string& msg, int ln) : Error(msg + " (line " + std::to_string(ln) + ")"), line(ln) {}
};

namespace util {

// Split a CSV line on commas; no quoting (the data files never need it).
std::vector<std::string> split(const std::string& s, char sep);
std::string strip(const std::string& s);

// Read a CSV data file: '#' comments and blank lines skipped.
// Returns rows of fields together with their 1-based line numbers.
std::vector<std::pair<int, std::vector<std::string>>> read_csv(const std::string& path, char sep = ',');

bool file_exists(const std::string& path);
std::string read_file(const std::string& path);

// SHA-256 of a byte string, lowercase hex. Used for the data manifest.
std::string sha256_hex(const std::string& bytes);

long long parse_int(const std::string& s, int line_for_error = 0);

}  // namespace util

// Multiset of composition-factor labels. Canonically ordered by label so
// that two equal multisets render identically.
using FactorMultiset = std::map<std::string, int>;

std::string multiset_to_string(const FactorMultiset& m);
int multiset_total(const FactorMultiset& m);

}  // namespace altsieve
