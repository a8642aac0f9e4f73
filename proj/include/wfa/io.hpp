#pragma once

#include <string>

namespace wfa::io {

// Writes `content` to `path` via a temporary file in the same directory and
// an atomic rename, so readers never observe a partial file.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

}  // namespace wfa::io
