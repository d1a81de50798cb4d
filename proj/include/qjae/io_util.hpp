#pragma once

#include <string>

namespace qjae {

// Shortest decimal form with 17 significant digits ("%.17g"); parses back
// to the identical double.
std::string to_g17(double x);

// Writes content to a temporary file next to path, then renames it into
// place, so readers never observe a partially written file.
void atomic_write_file(const std::string& path, const std::string& content);

}  // namespace qjae
