#pragma once

#include <string>
#include <vector>

namespace intfield {

/// Writes `content` to a temporary sibling and renames it over `path`, so readers
/// never see a partially written file.
void write_atomic(const std::string& path, const std::string& content);

/// CSV text with a header row; every value printed with 17 significant digits.
std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

}  // namespace intfield
