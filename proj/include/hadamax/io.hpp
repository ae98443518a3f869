#pragma once

// Text and JSON forms shared by the command-line tool and the tests.
//
// Matrix text: first line "n", then n lines of n characters from {+,-}.
// Partition text: first line "q m e", then four lines of residues for H_1..H_4.

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

#include "hadamax/association_schemes.hpp"
#include "hadamax/hadamard.hpp"
#include "hadamax/intersection_sets.hpp"

namespace hadamax {

std::string format_matrix(const SignMatrix& h);
/// Throws ParseError with the offending line number.
SignMatrix parse_matrix(std::string_view text);

/// Throws ParseError.
SchemePartition parse_partition(std::string_view text);

nlohmann::json to_json(const ExcessReport& r);
nlohmann::json to_json(const SchemeReport& r);
nlohmann::json to_json(const ParamChoice& c);
nlohmann::json to_json(const SchemePartition& p);
nlohmann::json complex_json(Complex z);

/// Throws ParseError when the file cannot be read.
std::string read_file(const std::filesystem::path& path);
/// Write to a sibling temporary file, then rename over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace hadamax
