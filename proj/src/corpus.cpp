#include "trisect/corpus.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "trisect/error.hpp"

namespace trisect {

std::filesystem::path corpus_dir() {
  if (const char* env = std::getenv("TRISECT_CORPUS_DIR"); env != nullptr && *env != '\0') return env;
  return TRISECT_DEFAULT_CORPUS_DIR;
}

std::vector<std::string> corpus_names() {
  std::vector<std::string> out;
  std::error_code ec;
  for (const auto& e : std::filesystem::directory_iterator(corpus_dir(), ec)) {
    if (e.is_regular_file() && e.path().extension() == ".tri") out.push_back(e.path().stem().string());
  }
  if (ec) throw Error("cannot list corpus directory " + corpus_dir().string() + ": " + ec.message());
  std::sort(out.begin(), out.end());
  return out;
}

std::filesystem::path corpus_file(const std::string& name) {
  const auto p = corpus_dir() / (name + ".tri");
  if (!std::filesystem::is_regular_file(p)) throw Error("no corpus diagram named '" + name + "'");
  return p;
}

std::filesystem::path resolve_input(const std::string& arg) {
  constexpr std::string_view prefix = "corpus:";
  if (arg.starts_with(prefix)) return corpus_file(arg.substr(prefix.size()));
  return arg;
}

std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace trisect
