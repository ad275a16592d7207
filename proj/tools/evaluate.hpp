#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cgp/errors.hpp"
#include "cgp/json_io.hpp"

namespace cgp::cli {

/// Settings shared by every subcommand (flags, with CGP_* environment fallbacks).
struct Settings {
    std::optional<int> level;
    std::optional<unsigned> precision;
    double tol = 1e-9;
    bool auto_stabilize = false;
    int jobs = 1;
    std::string cache_dir;
};

/// "re" or "re,im".  Throws ParseError.
Scalar parse_complex(const std::string& s);

/// Result of one input: either an output document or an error.
struct Outcome {
    std::string input;
    std::optional<Json> output;
    ErrorKind error_kind = ErrorKind::ParseError;
    std::string error_message;
    bool ok() const { return output.has_value(); }
    int exit_code() const;
};

/// Evaluate an already parsed input file; throws cgp::Error.
Json evaluate_input(const InputFile& in, const Settings& s, int jobs);

/// Read, parse and evaluate one file, going through the cache when enabled.
Outcome evaluate_file(const std::string& path, const Settings& s, int jobs);

/// Evaluate files on a worker pool; results are returned in input order.
std::vector<Outcome> evaluate_batch(const std::vector<std::string>& paths, const Settings& s);

/// Hex SHA-256 of the canonical input together with every flag that affects the output.
std::string cache_key(const InputFile& in, const Settings& s);

Json error_json(const Outcome& o);

}  // namespace cgp::cli
