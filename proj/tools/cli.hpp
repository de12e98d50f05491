#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ranklab::cli {

// Runs one rank-lab invocation; args excludes the program name. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct FixtureEntry {
  std::string name;  // path relative to the corpus root, without extension
  std::string kind;  // subspace | rankcode | hamming
  nlohmann::json value;
};

constexpr const char* kCorpusVersion = "v1";

std::vector<FixtureEntry> build_corpus();
// Writes root/<version>/<name>.json plus manifest.json; returns the version directory.
std::filesystem::path write_corpus(const std::filesystem::path& root);
// Re-reads every manifest entry and compares it structurally with a fresh build.
bool verify_corpus(const std::filesystem::path& versionDir, std::vector<std::string>* failures = nullptr);

}  // namespace ranklab::cli
