#pragma once

#include <iosfwd>

#include "ffell/census.hpp"

namespace ffell {

// Parse/semantic error in a curve file, with 1-based position info.
struct CurveFileError : std::runtime_error {
    int line = 0, col = 0;
    CurveFileError(std::string msg, int line_, int col_)
        : std::runtime_error(std::move(msg) + " (line " + std::to_string(line_) + ", col " +
                             std::to_string(col_) + ")"),
          line(line_),
          col(col_) {}
};

// Curve file format: UTF-8, one key=value per line, '#' comments.
// Keys: p, m (default 1), model (hyperelliptic|plane, default hyperelliptic),
// h, f (hyperelliptic), c (plane: one coefficient list per power of y),
// genus, infinity (only "default"). Coefficient lists are constant-first;
// each field element is an integer < p, or a base-p digit list when m > 1
// (e.g. f=[[1,0],[0,1]] over F_4).
CurveSpec parse_curve_file(const std::string& text);
// Canonical serialization; parse_curve_file(write_curve_file(s)) == s.
std::string write_curve_file(const CurveSpec& spec);

// FNV-1a hash over every semantic field of the spec, as fixed-width hex.
std::string curve_hash(const CurveSpec& spec);

// Entry point used by the ffell binary. Returns the process exit status:
// 0 success, 1 error or invariant violation, 2 delta-parity precondition.
int cli_main(int argc, char** argv);
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ffell
