#pragma once

// Bundled example diagrams. The directory defaults to the one shipped with
// the sources and can be overridden with TRISECT_CORPUS_DIR.

#include <filesystem>
#include <string>
#include <vector>

namespace trisect {

std::filesystem::path corpus_dir();

// Stems of the *.tri files, sorted.
std::vector<std::string> corpus_names();

// Throws Error for an unknown name.
std::filesystem::path corpus_file(const std::string& name);

// "corpus:<name>" names a corpus diagram; anything else is a path.
std::filesystem::path resolve_input(const std::string& arg);

// Throws Error when the file cannot be read.
std::string read_text(const std::filesystem::path& p);

}  // namespace trisect
