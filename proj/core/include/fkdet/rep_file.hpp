#pragma once

#include <filesystem>
#include <string>

#include "fkdet/group.hpp"

namespace fkdet {

/// Contents of a matrix representation file.
///
/// The file is a JSON object:
///
///     {
///       "name": "fig8_wirtinger",
///       "rank": 2,
///       "projective": true,
///       "epsilon_id": 1e-8,
///       "generators": [ [[[1,0],[1,0]], [[0,0],[1,0]]], ... ],
///       "relators": [[1,2,-1,2,1,-2,-1,2,-1,-2]]
///     }
///
/// Each generator is a 2x2 matrix given row by row, each entry a [re, im]
/// pair. Relators are words as signed generator indices. `projective` and
/// `epsilon_id` are optional (defaults true and 1e-8).
struct RepFile {
  std::string name;
  MatrixRepData data;
};

/// Parses a representation document. Throws ValidationError on malformed
/// input; relators are not checked here.
RepFile parse_rep(const std::string& text);

/// Reads and parses a file. Throws ValidationError (also for I/O failure).
RepFile read_rep_file(const std::filesystem::path& path);

/// Reads a file and builds the validated group; relators failing the
/// identity gate raise ValidationError.
GroupSpec load_rep_group(const std::filesystem::path& path);

std::string dump_rep(const RepFile& rep);

}  // namespace fkdet
