#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include "chsh/scan.hpp"

namespace chsh {

/// `# chsh-coherent v<version> family=.. setup=.. phi=.. angles=.. cutoff=..`
std::string csv_header(const ScanMetadata& meta);

/// Header, column line, then one line per row with 12 significant digits.
/// Skipped rows read `alpha,beta,,,skipped`.  No wall-clock data is written.
void write_csv(std::ostream& os, const ScanResult& result);
std::string to_csv(const ScanResult& result);

/// Writes to a sibling temporary file and renames it over `path`.
/// Throws IoError.
void write_csv_file(const std::filesystem::path& path, const ScanResult& result);

/// printf-style %.12g.
std::string format_number(double x);

}  // namespace chsh
